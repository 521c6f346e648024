// posetrss command-line front end.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "posetrss/artifact.hpp"
#include "posetrss/csv.hpp"
#include "posetrss/designs.hpp"
#include "posetrss/estimators.hpp"
#include "posetrss/linext.hpp"
#include "posetrss/plan_io.hpp"
#include "posetrss/poset.hpp"
#include "posetrss/simharness.hpp"
#include "posetrss/table.hpp"
#include "posetrss/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace posetrss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

//! Bad input data (as opposed to bad options).
struct DataError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//! Bad option values detected after parsing.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::string join(std::vector<std::string> const& items, char const* sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? sep : "") + items[i];
    return out;
}

//---------------------------------------------------------------------------//
// Poset input
//---------------------------------------------------------------------------//

struct PosetInput
{
    std::vector<std::string> labels;
    Poset poset = Poset::antichain(0);
};

struct PosetInputOptions
{
    std::string label_column;  // empty: use a column named "label" if present
    std::string flip;          // comma-separated column names
    bool auto_flip = false;
};

PosetInput poset_from_vectors(std::vector<ElementVector> rows, std::vector<std::string> labels,
                              std::vector<std::string> const& names,
                              PosetInputOptions const& opt)
{
    if (rows.size() < 2)
        throw DataError("need at least 2 elements, found " + std::to_string(rows.size()));
    ElementSet set(std::move(rows), std::move(labels));
    SignFlipMask mask(set.dimension());
    if (opt.auto_flip)
    {
        if (!opt.flip.empty())
            throw UsageError("--flip and --auto-flip are mutually exclusive");
        mask = suggest_sign_flips(pairwise_correlations(set.elements(), names));
    }
    for (auto const& name : split_list(opt.flip))
    {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw UsageError("--flip: unknown column '" + name + "'");
        mask.set(static_cast<std::size_t>(it - names.begin()), true);
    }
    return {set.labels(), build_poset(set, mask)};
}

PosetInput load_poset_json(fs::path const& path, PosetInputOptions const& opt)
{
    std::ifstream in(path);
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (json::parse_error const& e)
    {
        throw DataError(path.string() + ": " + e.what());
    }
    auto bad = [&](std::string const& what) {
        return DataError(path.string() + ": " + what);
    };
    if (!doc.is_object())
        throw bad("expected an object with \"vectors\" or \"edges\"");
    std::vector<std::string> labels;
    if (doc.contains("labels"))
    {
        if (!doc["labels"].is_array())
            throw bad("$.labels: expected an array of strings");
        for (auto const& l : doc["labels"])
        {
            if (!l.is_string())
                throw bad("$.labels: expected an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }
    if (doc.contains("vectors"))
    {
        std::vector<ElementVector> rows;
        auto const& v = doc["vectors"];
        if (!v.is_array())
            throw bad("$.vectors: expected an array of arrays");
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (!v[i].is_array())
                throw bad("$.vectors[" + std::to_string(i) + "]: expected an array");
            ElementVector row;
            for (auto const& x : v[i])
            {
                if (!x.is_number())
                    throw bad("$.vectors[" + std::to_string(i) + "]: expected numbers");
                row.push_back(x.get<double>());
            }
            rows.push_back(std::move(row));
        }
        std::vector<std::string> names;
        if (doc.contains("columns"))
        {
            for (auto const& c : doc["columns"])
                names.push_back(c.get<std::string>());
        }
        else if (!rows.empty())
        {
            for (std::size_t j = 0; j < rows.front().size(); ++j)
                names.push_back("X" + std::to_string(j + 1));
        }
        try
        {
            return poset_from_vectors(std::move(rows), std::move(labels), names, opt);
        }
        catch (std::invalid_argument const& e)
        {
            throw bad(e.what());
        }
    }
    if (doc.contains("edges"))
    {
        if (labels.empty())
            throw bad("$.labels: required with \"edges\"");
        if (!opt.flip.empty() || opt.auto_flip)
            throw UsageError("sign flips need element vectors, not edges");
        std::vector<Poset::Edge> edges;
        auto index = [&](json const& l, std::string const& where) {
            auto it = std::find(labels.begin(), labels.end(), l.get<std::string>());
            if (it == labels.end())
                throw bad(where + ": unknown label '" + l.get<std::string>() + "'");
            return static_cast<std::size_t>(it - labels.begin());
        };
        auto const& e = doc["edges"];
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            std::string const where = "$.edges[" + std::to_string(i) + "]";
            if (!e[i].is_array() || e[i].size() != 2 || !e[i][0].is_string()
                || !e[i][1].is_string())
                throw bad(where + ": expected [lower, upper]");
            edges.emplace_back(index(e[i][0], where), index(e[i][1], where));
        }
        try
        {
            return {labels, Poset::from_edges(labels.size(), edges)};
        }
        catch (std::invalid_argument const& ex)
        {
            throw bad(ex.what());
        }
    }
    throw bad("expected \"vectors\" or \"edges\"");
}

// An explicit --label wins; otherwise a column literally named "label".
std::optional<std::string> label_column_for(fs::path const& path, std::string const& given)
{
    if (!given.empty())
        return given;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    for (auto const& name : split_list(header))
    {
        std::string trimmed = name;
        trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(),
                                     [](unsigned char c) { return std::isspace(c); }),
                      trimmed.end());
        if (trimmed == "label")
            return trimmed;
    }
    return std::nullopt;
}

PosetInput load_poset_input(fs::path const& path, PosetInputOptions const& opt)
{
    if (path.extension() == ".json")
        return load_poset_json(path, opt);

    SchemaDeclaration decl;
    decl.label_column = label_column_for(path, opt.label_column);
    Dataset ds = load_dataset(path, decl);
    try
    {
        return poset_from_vectors(std::move(ds.rows), std::move(ds.labels), ds.numeric_names,
                                  opt);
    }
    catch (std::invalid_argument const& e)
    {
        throw DataError(path.string() + ": " + e.what());
    }
}

// Labels from top to bottom.
std::vector<std::string> describe(LinearExtension const& le, std::vector<std::string> const& labels)
{
    std::vector<std::string> out;
    for (auto it = le.order.rbegin(); it != le.order.rend(); ++it)
        out.push_back(labels[*it]);
    return out;
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

struct LinextArgs
{
    std::string input;
    PosetInputOptions poset;
    bool as_json = false;
    std::uint64_t cap = 100000;
    std::uint64_t mc_draws = 0;
    bool exact = false;
    std::uint64_t draws = 1;
    std::optional<std::uint64_t> seed;
    bool force_mcmc = false;
};

int run_linext(std::string const& action, LinextArgs const& a)
{
    auto const in = load_poset_input(a.input, a.poset);
    auto const& labels = in.labels;

    if (action == "count")
    {
        auto const n = count_extensions(in.poset);
        if (a.as_json)
            std::cout << json{{"count", n}}.dump() << '\n';
        else
            std::cout << n << '\n';
        return kExitOk;
    }
    if (action == "enum")
    {
        auto result = enumerate_extensions(in.poset, a.cap);
        if (auto const* over = std::get_if<CapExceeded>(&result))
        {
            std::cerr << "error: more than " << over->cap
                      << " linear extensions; raise --cap or use count\n";
            return kExitData;
        }
        auto const& les = std::get<std::vector<LinearExtension>>(result);
        if (a.as_json)
        {
            json list = json::array();
            for (auto const& le : les)
                list.push_back(describe(le, labels));
            std::cout << json{{"count", les.size()}, {"extensions_top_to_bottom", list}}.dump()
                      << '\n';
        }
        else
        {
            for (auto const& le : les)
                std::cout << join(describe(le, labels), " ") << '\n';
        }
        return kExitOk;
    }
    if (action == "heights")
    {
        SamplerOptions opts;
        opts.force_mcmc = a.force_mcmc;
        HeightSummary hs;
        if (a.mc_draws > 0)
        {
            if (a.exact)
                throw UsageError("--exact and --mc are mutually exclusive");
            if (!a.seed)
                throw UsageError("--mc needs --seed");
            hs = mean_heights(in.poset, MonteCarloHeights{a.mc_draws, *a.seed}, opts);
        }
        else
        {
            hs = mean_heights(in.poset, ExactHeights{}, opts);
        }
        if (a.as_json)
        {
            json rows = json::array();
            for (std::size_t i = 0; i < labels.size(); ++i)
            {
                rows.push_back({{"label", labels[i]},
                                {"mean_height", hs.mean_height[i]},
                                {"rounded_height", hs.rounded_height[i]}});
            }
            std::cout << json{{"exact", hs.exact},
                              {hs.exact ? "extensions" : "draws", hs.n_extensions_or_draws},
                              {"heights", rows}}
                             .dump()
                      << '\n';
        }
        else
        {
            std::cout << "# " << (hs.exact ? "exact over " : "Monte Carlo over ")
                      << hs.n_extensions_or_draws << (hs.exact ? " extensions" : " draws")
                      << "\nlabel,mean_height,rounded_height\n";
            for (std::size_t i = 0; i < labels.size(); ++i)
            {
                std::cout << labels[i] << ',' << format_shortest(hs.mean_height[i]) << ','
                          << hs.rounded_height[i] << '\n';
            }
        }
        return kExitOk;
    }
    if (action == "sample")
    {
        if (!a.seed)
            throw UsageError("sample needs --seed");
        SamplerOptions opts;
        opts.force_mcmc = a.force_mcmc;
        ExtensionSampler sampler(in.poset, opts);
        CounterRng rng(*a.seed);
        json list = json::array();
        for (std::uint64_t d = 0; d < a.draws; ++d)
        {
            auto const le = sampler.draw(rng);
            if (a.as_json)
                list.push_back(describe(le, labels));
            else
                std::cout << join(describe(le, labels), " ") << '\n';
        }
        if (a.as_json)
        {
            std::cout << json{{"exact", sampler.exact()},
                              {"seed", *a.seed},
                              {"extensions_top_to_bottom", list}}
                             .dump()
                      << '\n';
        }
        return kExitOk;
    }
    throw UsageError("unknown linext action '" + action + "'");
}

struct SimulateArgs
{
    std::string config;
    std::string replay;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> iterations;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out;
};

int run_simulate(SimulateArgs const& a)
{
    if (a.config.empty() == a.replay.empty())
        throw UsageError("give exactly one of CONFIG or --replay ARTIFACT");
    auto const format = parse_table_format(a.format);
    if (!format)
        throw UsageError("--format must be csv or md");
    if (a.threads < 1)
        throw UsageError("--threads must be >= 1");

    ParsedPlan parsed = a.replay.empty() ? load_plan(a.config) : plan_from_artifact(a.replay);
    if (a.seed)
    {
        parsed.plan.seed = *a.seed;
        parsed.seed_given = true;
    }
    if (!parsed.seed_given)
        throw UsageError("a seed is required: set \"seed\" in the config or pass --seed");
    if (a.iterations)
    {
        if (*a.iterations < 1)
            throw UsageError("--iterations must be >= 1");
        parsed.plan.iterations = *a.iterations;
    }

    try
    {
        parsed.plan.validate();
    }
    catch (std::invalid_argument const& e)
    {
        throw UsageError(e.what());
    }

    auto const start = std::chrono::steady_clock::now();
    auto const table = run_plan(parsed.plan, RunOptions{a.threads});
    std::chrono::duration<double> const elapsed = std::chrono::steady_clock::now() - start;

    if (a.out.empty())
    {
        std::cout << emit_table(table, *format);
    }
    else
    {
        auto const files = write_run_outputs(a.out, parsed.plan, table,
                                             RunTiming{elapsed.count(), a.threads});
        for (auto const& f : files)
            std::cerr << "wrote " << f.string() << '\n';
    }
    return kExitOk;
}

struct EstimateArgs
{
    std::string data;
    std::string design = "RPOR";
    std::size_t m = 0;
    std::size_t K = 0;
    std::size_t n = 0;
    std::string ranking;
    std::string target;
    std::string flips = "none";
    std::string mvsr_column;
    std::string label_column;
    std::optional<std::uint64_t> seed;
};

int run_estimate(EstimateArgs const& a)
{
    if (!a.seed)
        throw UsageError("--seed is required");
    auto const kind = parse_design_kind(a.design);
    if (!kind || *kind == DesignKind::Srs)
        throw UsageError("--design must be MVSR, CPOR or RPOR");

    SchemaDeclaration decl;
    decl.ranking = split_list(a.ranking);
    decl.target = split_list(a.target);
    decl.label_column = label_column_for(a.data, a.label_column);
    Dataset ds = load_dataset(a.data, decl);

    DesignConfig cfg;
    cfg.m = a.m;
    cfg.K = a.K;
    cfg.n = a.n;
    cfg.kind = *kind;
    cfg.seed = *a.seed;
    cfg.target_columns = ds.target;
    std::vector<std::string> ranking_names;
    std::vector<std::string> flipped;
    if (*kind == DesignKind::Mvsr)
    {
        std::size_t col = ds.ranking.front();
        if (!a.mvsr_column.empty())
        {
            auto it = std::find(ds.numeric_names.begin(), ds.numeric_names.end(), a.mvsr_column);
            if (it == ds.numeric_names.end())
                throw DataError("--mvsr-column: column '" + a.mvsr_column + "' not loaded");
            col = static_cast<std::size_t>(it - ds.numeric_names.begin());
        }
        cfg.ranking_columns = {col};
        ranking_names.push_back(ds.numeric_names[col]);
    }
    else
    {
        cfg.ranking_columns = ds.ranking;
        for (auto c : ds.ranking)
            ranking_names.push_back(ds.numeric_names[c]);
        SignFlipMask mask(ds.ranking.size());
        if (a.flips == "auto")
        {
            std::vector<ElementVector> cols;
            for (auto const& row : ds.rows)
            {
                ElementVector r;
                for (auto c : ds.ranking)
                    r.push_back(row[c]);
                cols.push_back(std::move(r));
            }
            try
            {
                mask = suggest_sign_flips(pairwise_correlations(cols, ranking_names));
            }
            catch (std::invalid_argument const& e)
            {
                throw DataError(std::string("--flips auto: ") + e.what());
            }
        }
        else if (a.flips != "none")
        {
            for (auto const& name : split_list(a.flips))
            {
                auto it = std::find(ranking_names.begin(), ranking_names.end(), name);
                if (it == ranking_names.end())
                    throw UsageError("--flips: '" + name + "' is not a ranking column");
                mask.set(static_cast<std::size_t>(it - ranking_names.begin()), true);
            }
        }
        for (std::size_t k = 0; k < mask.size(); ++k)
            if (mask.flipped(k))
                flipped.push_back(ranking_names[k]);
        cfg.sign_flips = mask;
    }
    try
    {
        cfg.validate();
    }
    catch (std::invalid_argument const& e)
    {
        throw UsageError(e.what());
    }

    std::size_t const needed = cfg.m * cfg.K;
    if (ds.rows.size() < needed)
    {
        throw DataError("need at least m*K = " + std::to_string(needed) + " rows, found "
                        + std::to_string(ds.rows.size()));
    }

    CounterRng const root(*a.seed);
    CounterRng shuffle = root.split(1);
    std::vector<std::size_t> idx(ds.rows.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < needed; ++i)
        std::swap(idx[i], idx[i + shuffle.below(idx.size() - i)]);

    std::vector<ElementSet> sets;
    for (std::size_t s = 0; s < cfg.K; ++s)
    {
        std::vector<ElementVector> rows;
        for (std::size_t e = 0; e < cfg.m; ++e)
            rows.push_back(ds.rows[idx[s * cfg.m + e]]);
        sets.emplace_back(std::move(rows));
    }

    auto const pop = build_population(sets, cfg, root.split(2));
    auto const alloc = allocate(pop, cfg.n);
    auto const sample = draw_stratified_sample(pop, alloc, root.split(3));
    auto const report = estimate(pop, sample, alloc);

    EstimateContext ctx;
    ctx.m = cfg.m;
    ctx.K = cfg.K;
    ctx.n = cfg.n;
    ctx.seed = *a.seed;
    ctx.source = fs::path(a.data).filename().string();
    ctx.rows_available = ds.rows.size();
    ctx.ranking = ranking_names;
    ctx.flipped = flipped;
    for (auto c : ds.target)
        ctx.targets.push_back(ds.numeric_names[c]);
    std::cout << report_to_json(report, ctx).dump(2) << '\n';
    return kExitOk;
}

struct ValidateArgs
{
    std::string data;
    std::string ranking;
    std::string target;
    std::string label_column;
    bool as_json = false;
};

int run_validate(ValidateArgs const& a)
{
    SchemaDeclaration decl;
    decl.ranking = split_list(a.ranking);
    decl.target = split_list(a.target);
    decl.label_column = label_column_for(a.data, a.label_column);
    auto result = validate_csv(a.data, decl);
    if (auto const* issues = std::get_if<std::vector<CsvIssue>>(&result))
    {
        for (auto const& i : *issues)
            std::cerr << a.data << ": " << to_string(i) << '\n';
        std::cerr << issues->size() << " error(s)\n";
        return kExitData;
    }
    auto const& ds = std::get<Dataset>(result);
    if (a.as_json)
    {
        json cols = json::array();
        for (std::size_t c = 0; c < ds.schema.columns.size(); ++c)
            cols.push_back({{"name", ds.schema.columns[c]},
                            {"role", std::string(to_string(ds.schema.roles[c]))}});
        std::cout << json{{"rows", ds.schema.row_count}, {"columns", cols}}.dump(2) << '\n';
    }
    else
    {
        std::cout << "rows: " << ds.schema.row_count << '\n';
        for (std::size_t c = 0; c < ds.schema.columns.size(); ++c)
            std::cout << ds.schema.columns[c] << ": " << to_string(ds.schema.roles[c]) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Poset-based ranked set sampling: linear extensions, designs and "
                 "Monte Carlo efficiency studies"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // linext
    LinextArgs la;
    std::string linext_action;
    auto* linext = app.add_subcommand("linext", "Linear extensions of a dominance poset");
    linext->require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", la.input,
                        "CSV of element vectors (optional 'label' column) or JSON "
                        "{labels, vectors|edges}")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--label", la.poset.label_column, "Label column of a CSV input");
        sub->add_option("--flip", la.poset.flip, "Comma-separated columns to negate");
        sub->add_flag("--auto-flip", la.poset.auto_flip,
                      "Negate columns to make pairwise correlations non-negative");
        sub->add_flag("--json", la.as_json, "JSON output");
        sub->callback([&, sub] { linext_action = sub->get_name(); });
    };
    auto* count = linext->add_subcommand("count", "Number of linear extensions");
    add_common(count);
    auto* enumerate = linext->add_subcommand("enum", "List extensions, one per line, top to bottom");
    add_common(enumerate);
    enumerate->add_option("--cap", la.cap, "Refuse to list more than this many")
        ->capture_default_str();
    auto* heights = linext->add_subcommand("heights", "Mean heights over all extensions");
    add_common(heights);
    heights->add_flag("--exact", la.exact, "Exact heights (default)");
    heights->add_option("--mc", la.mc_draws, "Monte Carlo estimate from N uniform draws");
    heights->add_option("--seed", la.seed, "Seed for --mc");
    heights->add_flag("--force-mcmc", la.force_mcmc, "Draw with the Markov chain sampler");
    auto* sample = linext->add_subcommand("sample", "Uniformly random extensions");
    add_common(sample);
    sample->add_option("--draws", la.draws, "Number of draws")->capture_default_str();
    sample->add_option("--seed", la.seed, "Seed (required)");
    sample->add_flag("--force-mcmc", la.force_mcmc, "Draw with the Markov chain sampler");

    // simulate
    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo efficiency study");
    simulate->add_option("config", sa.config, "JSON simulation plan")->check(CLI::ExistingFile);
    simulate->add_option("--replay", sa.replay, "Rerun the plan stored in a run artifact")
        ->check(CLI::ExistingFile);
    simulate->add_option("--seed", sa.seed, "Seed (overrides the config)");
    simulate->add_option("--iterations", sa.iterations, "Replications per cell (overrides the config)");
    simulate->add_option("--threads", sa.threads, "Worker threads; output does not depend on it")
        ->capture_default_str();
    simulate->add_option("--format", sa.format, "Table format for standard output: csv or md")
        ->capture_default_str();
    simulate->add_option("--out", sa.out,
                         "Directory for efficiency.csv, efficiency.md, run_artifact.json and run_timing.json");

    // estimate
    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "One design pass over a data CSV");
    est->add_option("data", ea.data, "Data CSV")->required()->check(CLI::ExistingFile);
    est->add_option("--design", ea.design, "MVSR, CPOR or RPOR")->capture_default_str();
    est->add_option("--m", ea.m, "Set size")->required();
    est->add_option("--K", ea.K, "Number of sets")->required();
    est->add_option("--n", ea.n, "Sample size per stratum")->required();
    est->add_option("--ranking", ea.ranking, "Comma-separated ranking columns (default: all)");
    est->add_option("--target", ea.target, "Comma-separated target columns (default: all)");
    est->add_option("--flips", ea.flips, "none, auto or comma-separated ranking columns")
        ->capture_default_str();
    est->add_option("--mvsr-column", ea.mvsr_column, "MVSR ranking column (default: first ranking)");
    est->add_option("--label", ea.label_column, "Non-numeric label column to ignore");
    est->add_option("--seed", ea.seed, "Seed (required)");

    // validate
    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Check a data CSV and print its schema");
    validate->add_option("data", va.data, "Data CSV")->required()->check(CLI::ExistingFile);
    validate->add_option("--ranking", va.ranking, "Comma-separated ranking columns");
    validate->add_option("--target", va.target, "Comma-separated target columns");
    validate->add_option("--label", va.label_column, "Label column");
    validate->add_flag("--json", va.as_json, "JSON output");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (linext->parsed())
            return run_linext(linext_action, la);
        if (simulate->parsed())
            return run_simulate(sa);
        if (est->parsed())
            return run_estimate(ea);
        if (validate->parsed())
            return run_validate(va);
    }
    catch (UsageError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (CsvError const& e)
    {
        std::cerr << "data error:\n" << e.what() << '\n';
        return kExitData;
    }
    catch (DataError const& e)
    {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
