#include "posetrss/artifact.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "posetrss/table.hpp"
#include "posetrss/version.hpp"

namespace posetrss {
namespace {

using nlohmann::json;

void write_file(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

json optional_number(std::optional<double> v)
{
    return v ? json(*v) : json(nullptr);
}

std::string join(std::vector<std::string> const& items)
{
    std::string out;
    for (auto const& s : items)
        out += (out.empty() ? "" : ",") + s;
    return out;
}

}  // namespace

json table_to_json(EfficiencyTable const& table)
{
    json rows = json::array();
    for (auto const& r : table.rows)
    {
        rows.push_back({{"scenario", r.scenario},
                        {"m", r.m},
                        {"K", r.K},
                        {"n", r.n},
                        {"design", std::string(to_string(r.design))},
                        {"variable", r.variable},
                        {"efficiency", optional_number(r.efficiency)},
                        {"mc_mean", r.mc_mean},
                        {"mc_mse", r.mc_mse},
                        {"mc_variance", r.mc_variance},
                        {"bias", r.bias},
                        {"true_mean", r.true_mean},
                        {"mc_se_mean", r.mc_se_mean},
                        {"srs_variance", r.srs_variance},
                        {"mean_var_hat", std::isnan(r.mean_var_hat) ? json(nullptr)
                                                                    : json(r.mean_var_hat)},
                        {"flag", r.flag}});
    }
    json skipped = json::array();
    for (auto const& s : table.skipped)
    {
        skipped.push_back({{"scenario", s.scenario},
                           {"m", s.cell.m},
                           {"K", s.cell.K},
                           {"n", s.cell.n},
                           {"reason", s.reason}});
    }
    return {{"iterations", table.iterations},
            {"rows", rows},
            {"skipped", skipped},
            {"notes", table.notes}};
}

RunArtifact make_artifact(SimulationPlan const& plan, EfficiencyTable const& table)
{
    return {plan_to_json(plan), plan.seed, kVersion, table_to_json(table)};
}

json to_json(RunArtifact const& a)
{
    return {{"software", "posetrss"},
            {"version", a.version},
            {"seed", a.seed},
            {"plan", a.plan},
            {"table", a.table}};
}

ParsedPlan plan_from_artifact(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), "cannot open artifact");
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("plan"))
        throw ConfigError("$.plan", "artifact has no plan");
    auto parsed = parse_plan(doc["plan"], std::filesystem::absolute(path).parent_path());
    if (!parsed.seed_given)
        throw ConfigError("$.plan.seed", "artifact plan has no seed");
    return parsed;
}

std::vector<std::filesystem::path> write_run_outputs(std::filesystem::path const& dir,
                                                     SimulationPlan const& plan,
                                                     EfficiencyTable const& table,
                                                     RunTiming const& timing)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out{dir / kCsvFile, dir / kMarkdownFile,
                                           dir / kArtifactFile, dir / kTimingFile};
    write_file(out[0], emit_table(table, TableFormat::Csv));
    write_file(out[1], emit_table(table, TableFormat::Markdown));
    write_file(out[2], to_json(make_artifact(plan, table)).dump(2) + "\n");
    json t{{"wall_seconds", timing.wall_seconds}, {"threads", timing.threads}};
    write_file(out[3], t.dump(2) + "\n");
    return out;
}

json report_to_json(EstimateReport const& report, EstimateContext const& c)
{
    json out{{"design", std::string(to_string(report.design))},
             {"m", c.m},
             {"K", c.K},
             {"n", c.n},
             {"seed", c.seed},
             {"source", c.source},
             {"rows_available", c.rows_available},
             {"rows_used", c.m * c.K},
             {"ranking", join(c.ranking)},
             {"flipped", join(c.flipped)},
             {"conservative_variance", report.conservative_variance},
             {"warnings", join(report.warnings)},
             {"version", kVersion}};
    std::vector<std::string> sizes;
    for (auto s : report.sample_sizes)
        sizes.push_back(std::to_string(s));
    out["sample_sizes"] = join(sizes);
    for (std::size_t v = 0; v < report.variables.size(); ++v)
    {
        std::string const name = v < c.targets.size() ? c.targets[v] : "v" + std::to_string(v);
        out[name + ".mu_hat"] = report.variables[v].mu_hat;
        out[name + ".var_hat"] = optional_number(report.variables[v].var_hat);
    }
    return out;
}

}  // namespace posetrss
