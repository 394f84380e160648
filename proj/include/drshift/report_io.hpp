#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace drshift {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_format(const std::string& name); // throws std::invalid_argument

// 12 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> summary; // key/value lines

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_table(std::ostream& out, const ReportTable& t);
void write_csv(std::ostream& out, const ReportTable& t);
void write_json(std::ostream& out, const ReportTable& t); // schema: 1
void write_report(std::ostream& out, const ReportTable& t, OutputFormat format);

} // namespace drshift
