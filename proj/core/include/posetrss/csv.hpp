#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posetrss/poset.hpp"

namespace posetrss {

struct CsvIssue
{
    std::size_t line = 0;  //!< 1-based line in the file; 0 = whole file
    std::string column;    //!< empty when not tied to a column
    std::string message;
};

std::string to_string(CsvIssue const& issue);

class CsvError : public std::runtime_error
{
  public:
    explicit CsvError(std::vector<CsvIssue> issues);
    std::vector<CsvIssue> const& issues() const { return issues_; }

  private:
    std::vector<CsvIssue> issues_;
};

enum class ColumnRole
{
    Ranking,
    Target,
    Both,
    Ignored,
    Label
};

std::string_view to_string(ColumnRole role);

//! Which columns to use. Empty ranking/target lists mean "every column
//! except the label column".
struct SchemaDeclaration
{
    std::vector<std::string> ranking;
    std::vector<std::string> target;
    std::optional<std::string> label_column;
};

struct DatasetSchema
{
    std::vector<std::string> columns;
    std::vector<ColumnRole> roles;
    std::size_t row_count = 0;
};

struct Dataset
{
    DatasetSchema schema;
    std::vector<std::string> numeric_names;  //!< typed columns, file order
    std::vector<ElementVector> rows;         //!< values of the typed columns
    std::vector<std::string> labels;         //!< empty without a label column
    std::vector<std::size_t> ranking;        //!< indices into numeric_names
    std::vector<std::size_t> target;         //!< indices into numeric_names
};

using CsvResult = std::variant<Dataset, std::vector<CsvIssue>>;

//! Parse and check every row; all problems are collected, not just the first.
CsvResult parse_csv(std::string_view text, SchemaDeclaration const& decl);
CsvResult validate_csv(std::filesystem::path const& path, SchemaDeclaration const& decl);

//! Like validate_csv but throws CsvError on any issue.
Dataset load_dataset(std::filesystem::path const& path, SchemaDeclaration const& decl);

}  // namespace posetrss
