#include "cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace echomem::cli {

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {
std::string header_block(const CsvComments& c) {
    // no timestamps anywhere: identical config must give identical bytes
    std::string s;
    s += "# echomem_csv_version=1\n";
    s += "# config_hash=" + c.config_hash + "\n";
    s += "# config=" + c.config_dump + "\n";
    return s;
}
} // namespace

std::string curve_csv(const CsvComments& c,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::string out = header_block(c);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& r : rows) {
        if (r.size() != columns.size())
            throw std::logic_error("curve_csv: row width mismatch");
        for (std::size_t i = 0; i < r.size(); ++i)
            out += (i ? "," : "") + format_sci(r[i]);
        out += "\n";
    }
    return out;
}

std::string matrix_csv(const CsvComments& c, const std::string& row_axis,
                       const std::string& col_axis,
                       const std::vector<double>& row_values,
                       const std::vector<double>& col_values,
                       const std::vector<std::vector<double>>& cells) {
    if (cells.size() != row_values.size())
        throw std::logic_error("matrix_csv: row count mismatch");
    std::string out = header_block(c);
    out += row_axis + "\\" + col_axis;
    for (double cv : col_values) out += "," + format_sci(cv);
    out += "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].size() != col_values.size())
            throw std::logic_error("matrix_csv: column count mismatch");
        out += format_sci(row_values[i]);
        for (double v : cells[i]) out += "," + format_sci(v);
        out += "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace echomem::cli
