#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "posetrss/simharness.hpp"

namespace posetrss {

//! Invalid configuration; what() starts with the offending field path.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string path, std::string const& message);
    std::string const& path() const { return path_; }

  private:
    std::string path_;
};

struct ParsedPlan
{
    SimulationPlan plan;
    bool seed_given = false;
};

/*!
 * Build a plan from its JSON form. Relative CSV paths resolve against
 * base_dir. Data files that fail validation raise CsvError.
 */
ParsedPlan parse_plan(nlohmann::json const& doc, std::filesystem::path const& base_dir);
ParsedPlan load_plan(std::filesystem::path const& path);

//! Canonical JSON echo of a plan; parse_plan(plan_to_json(p)) reproduces p.
nlohmann::json plan_to_json(SimulationPlan const& plan);

}  // namespace posetrss
