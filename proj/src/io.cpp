#include "fairaudit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace fairaudit {

namespace {

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

// One CSV record; handles quoted fields and embedded "" escapes.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { field += '"'; ++i; }
                else quoted = false;
            } else field += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else field += c;
    }
    if (quoted)
        throw AuditError(ErrorCode::MalformedInput,
                         "unterminated quote on line " + std::to_string(line_no));
    fields.push_back(field);
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

struct RawColumns {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> cells;  // cells[col][row]
};

RawColumns read_csv(std::istream& in) {
    RawColumns raw;
    std::string line;
    if (!std::getline(in, line))
        throw AuditError(ErrorCode::EmptyInput, "input has no header row");
    for (auto& name : split_csv_line(strip_cr(line), 1))
        raw.names.push_back(name);
    raw.cells.resize(raw.names.size());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != raw.names.size())
            throw AuditError(ErrorCode::MalformedInput,
                             "line " + std::to_string(line_no) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(raw.names.size()));
        for (std::size_t c = 0; c < fields.size(); ++c)
            raw.cells[c].push_back(std::move(fields[c]));
    }
    return raw;
}

RawColumns read_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw AuditError(ErrorCode::MalformedInput, e.what());
    }
    if (!doc.is_array())
        throw AuditError(ErrorCode::MalformedInput, "expected a JSON array of objects");

    RawColumns raw;
    std::map<std::string, std::size_t> index;
    std::size_t row = 0;
    for (const auto& rec : doc) {
        if (!rec.is_object())
            throw AuditError(ErrorCode::MalformedInput,
                             "array element " + std::to_string(row) + " is not an object");
        for (const auto& [key, value] : rec.items()) {
            auto [it, inserted] = index.emplace(key, raw.names.size());
            if (inserted) {
                raw.names.push_back(key);
                raw.cells.emplace_back(row, std::string{});  // backfill as missing
            }
            std::string text;
            if (value.is_string()) text = value.get<std::string>();
            else if (value.is_boolean()) text = value.get<bool>() ? "1" : "0";
            else if (value.is_number() || value.is_null()) text = value.is_null() ? "" : value.dump();
            else
                throw AuditError(ErrorCode::MalformedInput,
                                 "field \"" + key + "\" is not a scalar");
            raw.cells[it->second].push_back(std::move(text));
        }
        ++row;
        for (auto& col : raw.cells)
            if (col.size() < row) col.push_back("");  // key absent in this record
    }
    return raw;
}

std::size_t find_column(const RawColumns& raw, const std::string& name) {
    auto it = std::find(raw.names.begin(), raw.names.end(), name);
    if (it == raw.names.end())
        throw AuditError(ErrorCode::MissingColumn, "no column named \"" + name + "\"");
    return static_cast<std::size_t>(it - raw.names.begin());
}

void require_present(const std::vector<std::string>& col, const std::string& name) {
    for (std::size_t i = 0; i < col.size(); ++i)
        if (col[i].empty())
            throw AuditError(ErrorCode::MissingValue,
                             "column \"" + name + "\" is missing a value at row " +
                                 std::to_string(i + 1));
}

ExtraColumn build_extra(const std::vector<std::string>& cells) {
    ExtraColumn col;
    col.numeric = !cells.empty();
    std::vector<double> nums(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!parse_number(cells[i], nums[i])) { col.numeric = false; break; }
    if (col.numeric) col.nums = std::move(nums);
    else col.strs = cells;
    return col;
}

std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

AuditTable load_table(std::istream& source, InputFormat format, const ColumnMap& columns,
                      const std::optional<std::string>& reference_group) {
    RawColumns raw = format == InputFormat::Csv ? read_csv(source) : read_json(source);
    if (raw.cells.empty() || raw.cells[0].empty())
        throw AuditError(ErrorCode::EmptyInput, "input has no data rows");

    const auto& outcome_cells = raw.cells[find_column(raw, columns.outcome)];
    const auto& group_cells = raw.cells[find_column(raw, columns.group)];
    const auto& prob_cells = raw.cells[find_column(raw, columns.prob)];
    require_present(outcome_cells, columns.outcome);
    require_present(group_cells, columns.group);
    require_present(prob_cells, columns.prob);

    const std::size_t n = prob_cells.size();
    std::vector<double> outcome(n), prob(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!parse_number(outcome_cells[i], outcome[i]))
            throw AuditError(ErrorCode::NonBinaryOutcome,
                             "outcome \"" + outcome_cells[i] + "\" at row " +
                                 std::to_string(i + 1) + " is not 0 or 1");
        if (!parse_number(prob_cells[i], prob[i]))
            throw AuditError(ErrorCode::ProbOutOfRange,
                             "probability \"" + prob_cells[i] + "\" at row " +
                                 std::to_string(i + 1) + " is not a number");
    }

    std::vector<std::string> wanted = columns.extras;
    if (wanted.empty())
        for (const auto& name : raw.names)
            if (name != columns.outcome && name != columns.group && name != columns.prob)
                wanted.push_back(name);

    std::map<std::string, ExtraColumn> extras;
    for (const auto& name : wanted)
        extras.emplace(name, build_extra(raw.cells[find_column(raw, name)]));

    return AuditTable(std::move(outcome), group_cells, std::move(prob), std::move(extras),
                      {columns.outcome, columns.group, columns.prob}, reference_group);
}

AuditTable load_table_file(const std::string& path, InputFormat format, const ColumnMap& columns,
                           const std::optional<std::string>& reference_group) {
    std::ifstream in(path);
    if (!in)
        throw AuditError(ErrorCode::MalformedInput, "cannot open \"" + path + "\"");
    return load_table(in, format, columns, reference_group);
}

std::string to_csv(const AuditTable& t) {
    std::ostringstream out;
    const auto& names = t.column_names();
    out << csv_escape(names[0]) << ',' << csv_escape(names[1]) << ',' << csv_escape(names[2]);
    for (const auto& [name, col] : t.extras()) out << ',' << csv_escape(name);
    out << '\n';
    for (std::size_t i = 0; i < t.n(); ++i) {
        out << t.outcome(i) << ',' << csv_escape(t.group_label(t.group_index(i))) << ','
            << format_prob(t.prob(i));
        for (const auto& [name, col] : t.extras()) {
            out << ',';
            if (col.numeric) out << format_prob(col.nums[i]);
            else out << csv_escape(col.strs[i]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace fairaudit
