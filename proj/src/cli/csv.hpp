#ifndef ECHOMEM_CLI_CSV_HPP
#define ECHOMEM_CLI_CSV_HPP

#include <string>
#include <vector>

namespace echomem::cli {

// All CSV output: UTF-8, '.' decimal, scientific with 17 significant digits,
// '#'-prefixed comment lines carrying the config hash and the config itself
// so every file is reproducible standalone.
std::string format_sci(double v);

struct CsvComments {
    std::string config_hash;
    std::string config_dump;
};

// Long-format curve file: one header row, then one row per grid point.
std::string curve_csv(const CsvComments& c,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

// Matrix file, deterministic row-major: header "rowaxis\\colaxis,c1,..."; each
// row starts with its axis value.
std::string matrix_csv(const CsvComments& c, const std::string& row_axis,
                       const std::string& col_axis,
                       const std::vector<double>& row_values,
                       const std::vector<double>& col_values,
                       const std::vector<std::vector<double>>& cells);

void write_file(const std::string& path, const std::string& content);

} // namespace echomem::cli

#endif
