#include "drshift/report_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace drshift {

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_table(std::ostream& out, const ReportTable& t) {
    if (!t.name.empty()) out << "# " << t.name << "\n";
    std::vector<std::size_t> widths(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) widths[c] = t.columns[c].size();
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(widths[c])) << cells[c];
        out << "\n";
    };
    line(t.columns);
    for (const auto& row : t.rows) line(row);
    for (const auto& [k, v] : t.summary) out << k << ": " << v << "\n";
}

void write_csv(std::ostream& out, const ReportTable& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
        out << "\n";
    };
    line(t.columns);
    for (const auto& row : t.rows) line(row);
    for (const auto& [k, v] : t.summary) out << "# " << k << "," << v << "\n";
}

void write_json(std::ostream& out, const ReportTable& t) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["name"] = t.name;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.summary) summary[k] = v;
    j["summary"] = summary;
    out << j.dump(2) << "\n";
}

void write_report(std::ostream& out, const ReportTable& t, OutputFormat format) {
    switch (format) {
        case OutputFormat::Table: write_table(out, t); break;
        case OutputFormat::Csv: write_csv(out, t); break;
        case OutputFormat::Json: write_json(out, t); break;
    }
}

} // namespace drshift
