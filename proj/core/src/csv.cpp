#include "posetrss/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace posetrss {
namespace {

std::string_view trim(std::string_view s)
{
    auto const ws = " \t\r";
    auto const b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto const e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Split one line on commas; double-quoted fields may contain commas and "".
std::optional<std::vector<std::string>> split_fields(std::string_view line)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char const c = line[i];
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < line.size() && line[i + 1] == '"')
                {
                    field += '"';
                    ++i;
                }
                else
                {
                    quoted = false;
                }
            }
            else
            {
                field += c;
            }
        }
        else if (c == '"' && trim(field).empty())
        {
            field.clear();
            quoted = true;
            was_quoted = true;
        }
        else if (c == ',')
        {
            out.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        }
        else
        {
            field += c;
        }
    }
    if (quoted)
        return std::nullopt;
    out.push_back(was_quoted ? field : std::string(trim(field)));
    return out;
}

std::optional<double> parse_finite(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

}  // namespace

std::string to_string(CsvIssue const& issue)
{
    std::string out;
    if (issue.line > 0)
        out += "line " + std::to_string(issue.line);
    if (!issue.column.empty())
        out += (out.empty() ? "" : ", ") + std::string("column '") + issue.column + "'";
    if (!out.empty())
        out += ": ";
    return out + issue.message;
}

namespace {
std::string join_issues(std::vector<CsvIssue> const& issues)
{
    std::string out;
    for (auto const& i : issues)
    {
        if (!out.empty())
            out += '\n';
        out += to_string(i);
    }
    return out;
}
}  // namespace

CsvError::CsvError(std::vector<CsvIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues))
{
}

std::string_view to_string(ColumnRole role)
{
    switch (role)
    {
        case ColumnRole::Ranking: return "ranking";
        case ColumnRole::Target: return "target";
        case ColumnRole::Both: return "both";
        case ColumnRole::Ignored: return "ignored";
        case ColumnRole::Label: return "label";
    }
    return "?";
}

CsvResult parse_csv(std::string_view text, SchemaDeclaration const& decl)
{
    std::vector<CsvIssue> issues;
    std::vector<std::string_view> lines;
    {
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            auto const nl = text.find('\n', pos);
            auto const end = nl == std::string_view::npos ? text.size() : nl;
            lines.push_back(text.substr(pos, end - pos));
            if (nl == std::string_view::npos)
                break;
            pos = nl + 1;
        }
    }
    // Strip a UTF-8 byte order mark.
    if (!lines.empty() && lines[0].substr(0, 3) == "\xEF\xBB\xBF")
        lines[0].remove_prefix(3);

    std::size_t header_line = 0;
    while (header_line < lines.size() && trim(lines[header_line]).empty())
        ++header_line;
    if (header_line == lines.size())
        return std::vector<CsvIssue>{{0, {}, "empty file: no header row"}};

    auto header = split_fields(lines[header_line]);
    if (!header)
        return std::vector<CsvIssue>{{header_line + 1, {}, "unterminated quote in header"}};

    Dataset ds;
    ds.schema.columns = *header;
    std::size_t const ncol = header->size();
    for (std::size_t c = 0; c < ncol; ++c)
    {
        if ((*header)[c].empty())
            issues.push_back({header_line + 1, {}, "empty column name at position "
                                                       + std::to_string(c + 1)});
        for (std::size_t d = 0; d < c; ++d)
            if ((*header)[d] == (*header)[c] && !(*header)[c].empty())
                issues.push_back({header_line + 1, (*header)[c], "duplicate column name"});
    }

    auto find_column = [&](std::string const& name) -> std::optional<std::size_t> {
        auto it = std::find(header->begin(), header->end(), name);
        if (it == header->end())
        {
            issues.push_back({0, name, "column not found in header"});
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - header->begin());
    };

    std::optional<std::size_t> label_col;
    if (decl.label_column)
        label_col = find_column(*decl.label_column);

    std::vector<bool> is_rank(ncol, false), is_target(ncol, false);
    auto mark = [&](std::vector<std::string> const& names, std::vector<bool>& flags) {
        if (names.empty())
        {
            for (std::size_t c = 0; c < ncol; ++c)
                flags[c] = !(label_col && *label_col == c);
            return;
        }
        for (auto const& n : names)
        {
            if (auto c = find_column(n))
            {
                if (label_col && *label_col == *c)
                    issues.push_back({0, n, "label column cannot also be numeric"});
                else
                    flags[*c] = true;
            }
        }
    };
    mark(decl.ranking, is_rank);
    mark(decl.target, is_target);

    std::vector<std::size_t> typed;
    ds.schema.roles.resize(ncol, ColumnRole::Ignored);
    for (std::size_t c = 0; c < ncol; ++c)
    {
        if (label_col && *label_col == c)
            ds.schema.roles[c] = ColumnRole::Label;
        else if (is_rank[c] && is_target[c])
            ds.schema.roles[c] = ColumnRole::Both;
        else if (is_rank[c])
            ds.schema.roles[c] = ColumnRole::Ranking;
        else if (is_target[c])
            ds.schema.roles[c] = ColumnRole::Target;
        if (is_rank[c] || is_target[c])
        {
            std::size_t const k = typed.size();
            typed.push_back(c);
            ds.numeric_names.push_back((*header)[c]);
            if (is_rank[c])
                ds.ranking.push_back(k);
            if (is_target[c])
                ds.target.push_back(k);
        }
    }
    if (ds.ranking.empty())
        issues.push_back({0, {}, "no ranking column"});
    if (ds.target.empty())
        issues.push_back({0, {}, "no target column"});
    if (!issues.empty())
        return issues;

    for (std::size_t li = header_line + 1; li < lines.size(); ++li)
    {
        if (trim(lines[li]).empty())
            continue;
        std::size_t const line_no = li + 1;
        auto fields = split_fields(lines[li]);
        if (!fields)
        {
            issues.push_back({line_no, {}, "unterminated quote"});
            continue;
        }
        if (fields->size() != ncol)
        {
            issues.push_back({line_no, {}, "expected " + std::to_string(ncol)
                                               + " fields, found "
                                               + std::to_string(fields->size())});
            continue;
        }
        ElementVector row;
        row.reserve(typed.size());
        bool ok = true;
        for (auto c : typed)
        {
            auto const& cell = (*fields)[c];
            if (cell.empty())
            {
                issues.push_back({line_no, (*header)[c], "empty cell"});
                ok = false;
                continue;
            }
            auto v = parse_finite(cell);
            if (!v)
            {
                issues.push_back({line_no, (*header)[c], "not a finite number: '" + cell + "'"});
                ok = false;
                continue;
            }
            row.push_back(*v);
        }
        if (label_col && (*fields)[*label_col].empty())
        {
            issues.push_back({line_no, (*header)[*label_col], "empty label"});
            ok = false;
        }
        if (ok)
        {
            ds.rows.push_back(std::move(row));
            if (label_col)
                ds.labels.push_back((*fields)[*label_col]);
        }
    }
    if (ds.rows.empty() && issues.empty())
        issues.push_back({0, {}, "no data rows"});
    if (!issues.empty())
        return issues;
    ds.schema.row_count = ds.rows.size();
    return ds;
}

CsvResult validate_csv(std::filesystem::path const& path, SchemaDeclaration const& decl)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::vector<CsvIssue>{{0, {}, "cannot open '" + path.string() + "'"}};
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), decl);
}

Dataset load_dataset(std::filesystem::path const& path, SchemaDeclaration const& decl)
{
    auto result = validate_csv(path, decl);
    if (auto* issues = std::get_if<std::vector<CsvIssue>>(&result))
        throw CsvError(std::move(*issues));
    return std::get<Dataset>(std::move(result));
}

}  // namespace posetrss
