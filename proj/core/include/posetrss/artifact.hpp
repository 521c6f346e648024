#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "posetrss/estimators.hpp"
#include "posetrss/plan_io.hpp"
#include "posetrss/simharness.hpp"

namespace posetrss {

/*!
 * Everything needed to rerun a simulation: the plan echo (which carries the
 * seed), the software version and the resulting table. Wall-clock data is
 * kept out of it so that reruns produce identical bytes.
 */
struct RunArtifact
{
    nlohmann::json plan;
    std::uint64_t seed = 0;
    std::string version;
    nlohmann::json table;
};

struct RunTiming
{
    double wall_seconds = 0.0;
    unsigned threads = 1;
};

nlohmann::json table_to_json(EfficiencyTable const& table);
RunArtifact make_artifact(SimulationPlan const& plan, EfficiencyTable const& table);
nlohmann::json to_json(RunArtifact const& artifact);

//! Plan stored in an artifact file, ready to run again.
ParsedPlan plan_from_artifact(std::filesystem::path const& path);

inline constexpr char const* kCsvFile = "efficiency.csv";
inline constexpr char const* kMarkdownFile = "efficiency.md";
inline constexpr char const* kArtifactFile = "run_artifact.json";
inline constexpr char const* kTimingFile = "run_timing.json";

//! Writes the four files above into dir (created if needed); returns their paths.
std::vector<std::filesystem::path> write_run_outputs(std::filesystem::path const& dir,
                                                     SimulationPlan const& plan,
                                                     EfficiencyTable const& table,
                                                     RunTiming const& timing);

struct EstimateContext
{
    std::size_t m = 0;
    std::size_t K = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string source;
    std::size_t rows_available = 0;
    std::vector<std::string> ranking;
    std::vector<std::string> flipped;
    std::vector<std::string> targets;
};

//! Flat record: scalars only, per-variable keys "<name>.mu_hat" / "<name>.var_hat".
nlohmann::json report_to_json(EstimateReport const& report, EstimateContext const& context);

}  // namespace posetrss
