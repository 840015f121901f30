#include "qconfine/output.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "qconfine/error.hpp"

namespace qconfine {

namespace {

void write_json(const nlohmann::ordered_json& v, std::string& out)
{
    switch (v.type()) {
    case nlohmann::json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first) out += ',';
            first = false;
            out += nlohmann::json(key).dump();
            out += ':';
            write_json(item, out);
        }
        out += '}';
        break;
    }
    case nlohmann::json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            write_json(v[i], out);
        }
        out += ']';
        break;
    }
    case nlohmann::json::value_t::number_float: out += format_number(v.get<double>()); break;
    default: out += v.dump(); break;
    }
}

std::string cell_json(const std::optional<double>& c)
{
    return c && std::isfinite(*c) ? format_number(*c) : "null";
}

}  // namespace

std::string format_number(double v)
{
    std::array<char, 40> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

void emit(const OutputDocument& doc, OutputFormat format, std::ostream& sink)
{
    std::string out;
    if (format == OutputFormat::Csv) {
        for (const auto& [key, value] : doc.meta) {
            out += "# " + key + ": ";
            if (value.is_string()) {
                out += value.get<std::string>();
            } else {
                write_json(value, out);
            }
            out += '\n';
        }
        for (std::size_t i = 0; i < doc.columns.size(); ++i) {
            if (i) out += ',';
            out += doc.columns[i];
        }
        out += '\n';
        for (const auto& row : doc.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                if (row[i]) out += format_number(*row[i]);
            }
            out += '\n';
        }
    } else {
        out += "{\"meta\":{";
        for (std::size_t i = 0; i < doc.meta.size(); ++i) {
            if (i) out += ',';
            out += nlohmann::json(doc.meta[i].first).dump();
            out += ':';
            write_json(doc.meta[i].second, out);
        }
        out += "},\n\"rows\":[";
        for (std::size_t r = 0; r < doc.rows.size(); ++r) {
            out += r ? ",\n{" : "\n{";
            for (std::size_t i = 0; i < doc.columns.size(); ++i) {
                if (i) out += ',';
                out += nlohmann::json(doc.columns[i]).dump();
                out += ':';
                out += cell_json(i < doc.rows[r].size() ? doc.rows[r][i] : std::nullopt);
            }
            out += '}';
        }
        out += "\n]}\n";
    }
    sink << out;
    sink.flush();
    if (!sink) throw Error(ErrorCode::SinkWriteFailure, "failed to write output");
}

}  // namespace qconfine
