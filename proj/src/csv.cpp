#include "ringstar/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ringstar {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

void write_line(std::ofstream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

} // namespace

void write_csv_rows(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = open_out(path);
    if (!header.empty()) write_line(out, header);
    for (const auto& row : rows) write_line(out, row);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<std::string>> text;
    text.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (double v : row) line.push_back(format_double(v));
        text.push_back(std::move(line));
    }
    write_csv_rows(path, header, text);
}

void write_csv_grid(const std::string& path, const std::string& corner,
                    const std::vector<double>& col_values,
                    const std::vector<double>& row_values,
                    const std::vector<double>& cells) {
    const std::size_t nc = col_values.size();
    const std::size_t nr = row_values.size();
    if (cells.size() != nc * nr)
        throw std::runtime_error("grid size mismatch for '" + path + "'");
    std::ofstream out = open_out(path);
    out << corner;
    for (double v : col_values) out << ',' << format_double(v);
    out << '\n';
    for (std::size_t r = 0; r < nr; ++r) {
        out << format_double(row_values[r]);
        for (std::size_t c = 0; c < nc; ++c) out << ',' << format_double(cells[r * nc + c]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace ringstar
