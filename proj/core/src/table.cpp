#include "posetrss/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace posetrss {
namespace {

std::string format_fixed2(double value)
{
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", value);
    return buf.data();
}

std::string cell_label(GridCell const& c)
{
    return "m=" + std::to_string(c.m) + " K=" + std::to_string(c.K)
           + " n=" + std::to_string(c.n);
}

std::string emit_csv(EfficiencyTable const& table)
{
    std::ostringstream os;
    os << "scenario,m,K,n,design,variable,efficiency,mc_mean,mc_mse,mc_variance,"
          "bias,true_mean,mc_se_mean,srs_variance,mean_var_hat,flag\n";
    for (auto const& r : table.rows)
    {
        os << r.scenario << ',' << r.m << ',' << r.K << ',' << r.n << ','
           << to_string(r.design) << ',' << r.variable << ','
           << (r.efficiency ? format_shortest(*r.efficiency) : "NA") << ','
           << format_shortest(r.mc_mean) << ',' << format_shortest(r.mc_mse) << ','
           << format_shortest(r.mc_variance) << ',' << format_shortest(r.bias) << ','
           << format_shortest(r.true_mean) << ',' << format_shortest(r.mc_se_mean)
           << ',' << format_shortest(r.srs_variance) << ','
           << format_shortest(r.mean_var_hat) << ',' << r.flag << '\n';
    }
    for (auto const& s : table.skipped)
        os << "# skipped " << s.scenario << ' ' << cell_label(s.cell) << ": " << s.reason
           << '\n';
    return os.str();
}

std::string emit_markdown(EfficiencyTable const& table)
{
    std::ostringstream os;
    os << "| scenario | m | K | n | variable |";
    for (auto d : table.designs)
        os << ' ' << to_string(d) << " |";
    os << "\n|---|---|---|---|---|";
    for (std::size_t i = 0; i < table.designs.size(); ++i)
        os << "---|";
    os << '\n';

    // Rows come out of run_plan grouped by (cell, scenario, design, variable);
    // pivot designs into columns while keeping first-seen order.
    using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::string>;
    std::vector<Key> order;
    std::map<Key, std::map<DesignKind, std::string>> cells;
    for (auto const& r : table.rows)
    {
        Key key{r.scenario, r.m, r.K, r.n, r.variable};
        auto [it, inserted] = cells.try_emplace(key);
        if (inserted)
            order.push_back(key);
        it->second[r.design] = r.efficiency ? format_fixed2(*r.efficiency) : "NA";
    }
    for (auto const& key : order)
    {
        auto const& [scenario, m, K, n, variable] = key;
        os << "| " << scenario << " | " << m << " | " << K << " | " << n << " | "
           << variable << " |";
        auto const& by_design = cells.at(key);
        for (auto d : table.designs)
        {
            auto it = by_design.find(d);
            os << ' ' << (it == by_design.end() ? "" : it->second) << " |";
        }
        os << '\n';
    }
    if (!table.skipped.empty())
    {
        os << "\nSkipped cells:\n\n";
        for (auto const& s : table.skipped)
            os << "- " << s.scenario << ' ' << cell_label(s.cell) << ": " << s.reason << '\n';
    }
    if (!table.notes.empty())
    {
        os << "\nNotes:\n\n";
        for (auto const& n : table.notes)
            os << "- " << n << '\n';
    }
    return os.str();
}

}  // namespace

std::optional<TableFormat> parse_table_format(std::string_view text)
{
    if (text == "csv")
        return TableFormat::Csv;
    if (text == "md" || text == "markdown")
        return TableFormat::Markdown;
    return std::nullopt;
}

std::string format_shortest(double value)
{
    if (std::isnan(value))
        return "NA";
    std::array<char, 64> buf{};
    auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string emit_table(EfficiencyTable const& table, TableFormat format)
{
    return format == TableFormat::Csv ? emit_csv(table) : emit_markdown(table);
}

}  // namespace posetrss
