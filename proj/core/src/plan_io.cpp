#include "posetrss/plan_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "posetrss/csv.hpp"

namespace posetrss {
namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string const& path, std::string const& message)
{
    throw ConfigError(path, message);
}

json const& require(json const& obj, std::string const& key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path + "." + key, "missing required field");
    return *it;
}

void check_keys(json const& obj, std::string const& path, std::set<std::string> const& allowed)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(path + "." + it.key(), "unknown field");
}

std::uint64_t get_uint(json const& v, std::string const& path)
{
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

double get_number(json const& v, std::string const& path)
{
    if (!v.is_number())
        fail(path, "expected a number");
    return v.get<double>();
}

std::string get_string(json const& v, std::string const& path)
{
    if (!v.is_string())
        fail(path, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_numbers(json const& v, std::string const& path)
{
    if (!v.is_array())
        fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::string> get_strings(json const& v, std::string const& path)
{
    if (!v.is_array())
        fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(get_string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

PopulationModel parse_model(json const& v, std::string const& path,
                            std::filesystem::path const& base_dir)
{
    if (!v.is_object())
        fail(path, "expected an object");
    std::string const kind = get_string(require(v, "kind", path), path + ".kind");
    try
    {
        if (kind == "bivariate_normal")
        {
            check_keys(v, path, {"kind", "mu", "sigma", "rho"});
            BivariateNormal bn;
            if (v.contains("mu"))
            {
                auto mu = get_numbers(v["mu"], path + ".mu");
                if (mu.size() != 2)
                    fail(path + ".mu", "expected 2 entries");
                bn.mu1 = mu[0];
                bn.mu2 = mu[1];
            }
            if (v.contains("sigma"))
            {
                auto s = get_numbers(v["sigma"], path + ".sigma");
                if (s.size() != 2)
                    fail(path + ".sigma", "expected 2 entries");
                bn.sigma1 = s[0];
                bn.sigma2 = s[1];
            }
            bn.rho = get_number(require(v, "rho", path), path + ".rho");
            return PopulationModel(bn);
        }
        if (kind == "regression_linked")
        {
            check_keys(v, path, {"kind", "mu", "sigma", "rho_with_first"});
            RegressionLinked rl;
            rl.mu = get_numbers(require(v, "mu", path), path + ".mu");
            rl.sigma = get_numbers(require(v, "sigma", path), path + ".sigma");
            rl.rho_with_first = get_numbers(require(v, "rho_with_first", path),
                                            path + ".rho_with_first");
            return PopulationModel(rl);
        }
        if (kind == "csv")
        {
            check_keys(v, path, {"kind", "path", "columns"});
            std::filesystem::path file = get_string(require(v, "path", path), path + ".path");
            if (file.is_relative())
                file = base_dir / file;
            file = std::filesystem::weakly_canonical(file);
            SchemaDeclaration decl;
            if (v.contains("columns"))
            {
                decl.ranking = get_strings(v["columns"], path + ".columns");
                decl.target = decl.ranking;
            }
            Dataset ds = load_dataset(file, decl);
            EmpiricalRows er;
            er.source = file.string();
            er.names = ds.numeric_names;
            er.rows = std::move(ds.rows);
            return PopulationModel(std::move(er));
        }
    }
    catch (std::invalid_argument const& e)
    {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown model kind '" + kind
                             + "' (expected bivariate_normal, regression_linked or csv)");
}

std::vector<std::size_t> column_indices(json const& v, std::string const& path,
                                        std::vector<std::string> const& names)
{
    std::vector<std::size_t> out;
    auto const list = get_strings(v, path);
    for (std::size_t i = 0; i < list.size(); ++i)
    {
        auto it = std::find(names.begin(), names.end(), list[i]);
        if (it == names.end())
            fail(path + "[" + std::to_string(i) + "]", "unknown variable '" + list[i] + "'");
        out.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    if (out.empty())
        fail(path, "must not be empty");
    return out;
}

Scenario parse_scenario(json const& v, std::string const& path,
                        std::filesystem::path const& base_dir)
{
    check_keys(v, path, {"label", "model", "ranking", "target", "mvsr_column", "flips"});
    Scenario s{.label = get_string(require(v, "label", path), path + ".label"),
               .model = parse_model(require(v, "model", path), path + ".model", base_dir),
               .ranking_columns = {},
               .target_columns = {},
               .mvsr_column = std::nullopt,
               .flips = {}};
    auto const& names = s.model.variable_names();
    if (v.contains("ranking"))
        s.ranking_columns = column_indices(v["ranking"], path + ".ranking", names);
    if (v.contains("target"))
        s.target_columns = column_indices(v["target"], path + ".target", names);
    if (v.contains("mvsr_column"))
    {
        auto const name = get_string(v["mvsr_column"], path + ".mvsr_column");
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            fail(path + ".mvsr_column", "unknown variable '" + name + "'");
        s.mvsr_column = static_cast<std::size_t>(it - names.begin());
    }
    if (v.contains("flips"))
    {
        auto const& f = v["flips"];
        if (f.is_string())
        {
            auto const mode = f.get<std::string>();
            if (mode == "none")
                s.flips.kind = FlipPolicy::None;
            else if (mode == "auto")
                s.flips.kind = FlipPolicy::Auto;
            else
                fail(path + ".flips", "expected \"none\", \"auto\" or a list of variables");
        }
        else if (f.is_array() && f.empty())
        {
            s.flips.kind = FlipPolicy::None;
        }
        else
        {
            auto const ranking = s.ranking();
            auto const flipped = column_indices(f, path + ".flips", names);
            s.flips.kind = FlipPolicy::Manual;
            s.flips.mask = SignFlipMask(ranking.size());
            for (auto c : flipped)
            {
                auto it = std::find(ranking.begin(), ranking.end(), c);
                if (it == ranking.end())
                    fail(path + ".flips", "'" + names[c] + "' is not a ranking variable");
                s.flips.mask.set(static_cast<std::size_t>(it - ranking.begin()), true);
            }
        }
    }
    try
    {
        (void)s.resolve_flips();
    }
    catch (std::invalid_argument const& e)
    {
        fail(path + ".flips", e.what());
    }
    return s;
}

json model_to_json(PopulationModel const& model)
{
    return std::visit(
        [](auto const& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, BivariateNormal>)
            {
                return {{"kind", "bivariate_normal"},
                        {"mu", {k.mu1, k.mu2}},
                        {"sigma", {k.sigma1, k.sigma2}},
                        {"rho", k.rho}};
            }
            else if constexpr (std::is_same_v<T, RegressionLinked>)
            {
                return {{"kind", "regression_linked"},
                        {"mu", k.mu},
                        {"sigma", k.sigma},
                        {"rho_with_first", k.rho_with_first}};
            }
            else
            {
                return {{"kind", "csv"}, {"path", k.source}, {"columns", k.names}};
            }
        },
        model.kind());
}

json names_of(std::vector<std::size_t> const& cols, std::vector<std::string> const& names)
{
    json out = json::array();
    for (auto c : cols)
        out.push_back(names[c]);
    return out;
}

}  // namespace

ConfigError::ConfigError(std::string path, std::string const& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path))
{
}

ParsedPlan parse_plan(json const& doc, std::filesystem::path const& base_dir)
{
    std::string const root = "$";
    check_keys(doc, root,
               {"$schema", "description", "seed", "iterations", "designs", "grid",
                "scenarios", "sampler"});
    ParsedPlan out;
    auto& plan = out.plan;

    if (doc.contains("seed") && !doc["seed"].is_null())
    {
        plan.seed = get_uint(doc["seed"], root + ".seed");
        out.seed_given = true;
    }
    if (doc.contains("iterations"))
    {
        plan.iterations = get_uint(doc["iterations"], root + ".iterations");
        if (plan.iterations < 1)
            fail(root + ".iterations", "must be >= 1");
    }
    if (doc.contains("designs"))
    {
        auto const list = get_strings(doc["designs"], root + ".designs");
        plan.designs.clear();
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            auto d = parse_design_kind(list[i]);
            if (!d || *d == DesignKind::Srs)
                fail(root + ".designs[" + std::to_string(i) + "]",
                     "expected MVSR, CPOR or RPOR");
            plan.designs.push_back(*d);
        }
        if (plan.designs.empty())
            fail(root + ".designs", "must not be empty");
    }

    auto const& grid = require(doc, "grid", root);
    if (!grid.is_array() || grid.empty())
        fail(root + ".grid", "expected a non-empty array");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        std::string const p = root + ".grid[" + std::to_string(i) + "]";
        check_keys(grid[i], p, {"m", "K", "n"});
        plan.grid.push_back({get_uint(require(grid[i], "m", p), p + ".m"),
                             get_uint(require(grid[i], "K", p), p + ".K"),
                             get_uint(require(grid[i], "n", p), p + ".n")});
        if (plan.grid.back().m < 2)
            fail(p + ".m", "must be >= 2");
    }

    auto const& scenarios = require(doc, "scenarios", root);
    if (!scenarios.is_array() || scenarios.empty())
        fail(root + ".scenarios", "expected a non-empty array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        std::string const p = root + ".scenarios[" + std::to_string(i) + "]";
        plan.scenarios.push_back(parse_scenario(scenarios[i], p, base_dir));
        if (!labels.insert(plan.scenarios.back().label).second)
            fail(p + ".label", "duplicate scenario label");
    }

    if (doc.contains("sampler"))
    {
        auto const& s = doc["sampler"];
        std::string const p = root + ".sampler";
        check_keys(s, p, {"exact_cutoff", "burn_in", "force_mcmc", "max_ideals", "height_mc_draws"});
        if (s.contains("exact_cutoff"))
            plan.sampler.exact_cutoff = get_uint(s["exact_cutoff"], p + ".exact_cutoff");
        if (s.contains("burn_in") && !s["burn_in"].is_null())
            plan.sampler.burn_in = get_uint(s["burn_in"], p + ".burn_in");
        if (s.contains("force_mcmc"))
        {
            if (!s["force_mcmc"].is_boolean())
                fail(p + ".force_mcmc", "expected a boolean");
            plan.sampler.force_mcmc = s["force_mcmc"].get<bool>();
        }
        if (s.contains("max_ideals"))
            plan.sampler.max_ideals = get_uint(s["max_ideals"], p + ".max_ideals");
        if (s.contains("height_mc_draws"))
        {
            plan.height_mc_draws = get_uint(s["height_mc_draws"], p + ".height_mc_draws");
            if (plan.height_mc_draws < 1)
                fail(p + ".height_mc_draws", "must be >= 1");
        }
    }
    return out;
}

ParsedPlan load_plan(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), "cannot open config file");
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    return parse_plan(doc, std::filesystem::absolute(path).parent_path());
}

json plan_to_json(SimulationPlan const& plan)
{
    json doc;
    doc["seed"] = plan.seed;
    doc["iterations"] = plan.iterations;
    doc["designs"] = json::array();
    for (auto d : plan.designs)
        doc["designs"].push_back(std::string(to_string(d)));
    doc["grid"] = json::array();
    for (auto const& c : plan.grid)
        doc["grid"].push_back({{"m", c.m}, {"K", c.K}, {"n", c.n}});
    doc["scenarios"] = json::array();
    for (auto const& s : plan.scenarios)
    {
        auto const& names = s.model.variable_names();
        json js{{"label", s.label},
                {"model", model_to_json(s.model)},
                {"ranking", names_of(s.ranking(), names)},
                {"target", names_of(s.targets(), names)},
                {"mvsr_column", names[s.mvsr_ranking_column()]}};
        switch (s.flips.kind)
        {
            case FlipPolicy::None: js["flips"] = "none"; break;
            case FlipPolicy::Auto: js["flips"] = "auto"; break;
            case FlipPolicy::Manual:
            {
                json list = json::array();
                auto const ranking = s.ranking();
                for (std::size_t k = 0; k < s.flips.mask.size(); ++k)
                    if (s.flips.mask.flipped(k))
                        list.push_back(names[ranking[k]]);
                js["flips"] = list;
                break;
            }
        }
        doc["scenarios"].push_back(std::move(js));
    }
    json sampler{{"exact_cutoff", plan.sampler.exact_cutoff},
                 {"force_mcmc", plan.sampler.force_mcmc},
                 {"max_ideals", plan.sampler.max_ideals},
                 {"height_mc_draws", plan.height_mc_draws}};
    sampler["burn_in"] = plan.sampler.burn_in ? json(*plan.sampler.burn_in) : json(nullptr);
    doc["sampler"] = sampler;
    return doc;
}

}  // namespace posetrss
