#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "posetrss/simharness.hpp"

namespace posetrss {

enum class TableFormat
{
    Csv,
    Markdown
};

std::optional<TableFormat> parse_table_format(std::string_view text);

//! Shortest decimal that parses back to the same double; "NA" for NaN.
std::string format_shortest(double value);

/*!
 * CSV: one row per (scenario, cell, design, variable) with the columns
 *   scenario,m,K,n,design,variable,efficiency,mc_mean,mc_mse,mc_variance,
 *   bias,true_mean,mc_se_mean,srs_variance,mean_var_hat,flag
 * followed by "# skipped ..." comment lines.
 *
 * Markdown: one row per (scenario, cell, variable), one efficiency column per
 * design, two decimals; skipped cells and notes are listed underneath.
 */
std::string emit_table(EfficiencyTable const& table, TableFormat format);

}  // namespace posetrss
