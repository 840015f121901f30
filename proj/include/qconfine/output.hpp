#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qconfine {

enum class OutputFormat { Csv, Json };

/// Tabular result with a metadata header. Cells are numbers or empty.
struct OutputDocument {
    std::vector<std::pair<std::string, nlohmann::ordered_json>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double v);

/*!
 * CSV: "# key: value" metadata lines, a header row, then data rows; LF line
 * endings, empty cells for absent values.
 * JSON: {"meta": {...}, "rows": [{column: value|null, ...}, ...]}.
 * Throws SinkWriteFailure if the stream goes bad.
 */
void emit(const OutputDocument& doc, OutputFormat format, std::ostream& sink);

}  // namespace qconfine
