#pragma once

#include <string>
#include <vector>

#include "phfem/linalg.hpp"

namespace phfem {

/// CSV with one comment line carrying the config hash, a header row, and
/// %.17g numbers with LF line endings (byte-identical across reruns).
void write_csv(const std::string& path, const std::string& config_hash,
               const std::vector<std::string>& header, const std::vector<Vec>& rows);

struct PlotSeries {
    Vec x;
    Vec y;
    std::string label;
};

struct PlotOptions {
    bool logx = false;
    bool logy = false;
    std::string title, xlabel, ylabel;
    double slope_triangle = 0.0; // draw a reference-slope triangle when nonzero
};

/// Static SVG line plot written directly, no plotting framework.
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt);

} // namespace phfem
