#ifndef ECHOMEM_CLI_SVG_HPP
#define ECHOMEM_CLI_SVG_HPP

#include <string>
#include <vector>

namespace echomem::cli {

// Convenience plots only; nothing downstream depends on pixels.
std::string svg_line_plot(const std::string& title,
                          const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels);

std::string svg_heatmap(const std::string& title,
                        const std::vector<double>& rows,
                        const std::vector<double>& cols,
                        const std::vector<std::vector<double>>& cells);

} // namespace echomem::cli

#endif
