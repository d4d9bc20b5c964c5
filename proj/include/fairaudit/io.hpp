#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/table.hpp"

namespace fairaudit {

enum class InputFormat { Csv, Json };

struct ColumnMap {
    std::string outcome;
    std::string group;
    std::string prob;
    // Columns to keep for conditioning. Empty means: keep every other column.
    std::vector<std::string> extras;
};

// Parses and validates a prediction table. CSV dialect: header row required,
// comma delimiter, '.' decimal point, double quotes for fields containing
// commas. JSON input is an array of flat objects.
AuditTable load_table(std::istream& source, InputFormat format, const ColumnMap& columns,
                      const std::optional<std::string>& reference_group = std::nullopt);

AuditTable load_table_file(const std::string& path, InputFormat format, const ColumnMap& columns,
                           const std::optional<std::string>& reference_group = std::nullopt);

// CSV with the table's mapped columns first, then extras; probabilities are
// written with round-trip precision.
std::string to_csv(const AuditTable& t);

}  // namespace fairaudit
