#pragma once

// CSV emission. Numbers are printed with %.17g so every IEEE binary64 value
// round-trips exactly; non-finite values print as nan/inf/-inf. Fields here
// are numbers or bare words, so no quoting/escaping is performed.

#include <string>
#include <vector>

namespace ringstar {

std::string format_double(double v);

// Generic table of preformatted fields.
void write_csv_rows(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

// Numeric table under a header line.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// 2-D grid: first row carries `corner` then the column axis values, each
// following row starts with its row axis value. cells is row-major,
// cells[row * col_values.size() + col].
void write_csv_grid(const std::string& path, const std::string& corner,
                    const std::vector<double>& col_values,
                    const std::vector<double>& row_values,
                    const std::vector<double>& cells);

} // namespace ringstar
