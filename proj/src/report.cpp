#include "phfem/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "phfem/errors.hpp"

namespace phfem {

void write_csv(const std::string& path, const std::string& config_hash,
               const std::vector<std::string>& header, const std::vector<Vec>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    f << "# config " << config_hash << "\n";
    for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << "\n";
    char buf[40];
    for (const Vec& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            f << (i ? "," : "") << buf;
        }
        f << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

namespace {

constexpr int kW = 640, kH = 480, kMl = 70, kMr = 20, kMt = 40, kMb = 50;
const char* kColors[] = {"#1f6fb4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;
    double map(double v, double a, double b) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                             : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& opt) {
    if (series.empty()) throw std::invalid_argument("write_svg_plot: no series");
    for (const auto& s : series)
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("write_svg_plot: empty or mismatched series");

    Axis ax, ay;
    ax.log = opt.logx;
    ay.log = opt.logy;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (opt.logx && !(s.x[i] > 0)) throw std::invalid_argument("write_svg_plot: log axis needs positive data");
            if (opt.logy && !(s.y[i] > 0)) continue; // drop nonpositive points on log plots
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (!(xhi >= xlo) || !(yhi >= ylo)) throw std::invalid_argument("write_svg_plot: no drawable points");
    if (xhi == xlo) {
        xlo -= 0.5;
        xhi += 0.5;
    }
    if (yhi == ylo) {
        ylo = opt.logy ? ylo * 0.5 : ylo - 0.5;
        yhi = opt.logy ? yhi * 2.0 : yhi + 0.5;
    }
    if (!opt.logx) {
        const double pad = 0.03 * (xhi - xlo);
        xlo -= pad;
        xhi += pad;
    }
    if (!opt.logy) {
        const double pad = 0.05 * (yhi - ylo);
        ylo -= pad;
        yhi += pad;
    } else {
        ylo /= 1.5;
        yhi *= 1.5;
    }
    ax.lo = xlo;
    ax.hi = xhi;
    ay.lo = ylo;
    ay.hi = yhi;

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    f << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    f << "<rect x=\"" << kMl << "\" y=\"" << kMt << "\" width=\"" << kW - kMl - kMr << "\" height=\""
      << kH - kMt - kMb << "\" fill=\"none\" stroke=\"#333\"/>\n";
    f << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << opt.title
      << "</text>\n";
    f << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << opt.xlabel << "</text>\n";
    f << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << opt.ylabel << "</text>\n";

    // ticks: 5 per axis, uniform in the (possibly log) axis coordinate
    for (int i = 0; i <= 4; ++i) {
        const double tx = opt.logx ? std::pow(10.0, std::log10(ax.lo) + i * (std::log10(ax.hi) - std::log10(ax.lo)) / 4)
                                   : ax.lo + i * (ax.hi - ax.lo) / 4;
        const double px = ax.map(tx, kMl, kW - kMr);
        f << "<line x1=\"" << px << "\" y1=\"" << kH - kMb << "\" x2=\"" << px << "\" y2=\"" << kH - kMb + 5
          << "\" stroke=\"#333\"/>\n";
        f << "<text x=\"" << px << "\" y=\"" << kH - kMb + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << fmt(tx) << "</text>\n";
        const double ty = opt.logy ? std::pow(10.0, std::log10(ay.lo) + i * (std::log10(ay.hi) - std::log10(ay.lo)) / 4)
                                   : ay.lo + i * (ay.hi - ay.lo) / 4;
        const double py = ay.map(ty, kH - kMb, kMt);
        f << "<line x1=\"" << kMl - 5 << "\" y1=\"" << py << "\" x2=\"" << kMl << "\" y2=\"" << py
          << "\" stroke=\"#333\"/>\n";
        f << "<text x=\"" << kMl - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
          << fmt(ty) << "</text>\n";
    }

    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % 6];
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (opt.logy && !(s.y[i] > 0)) continue;
            f << ax.map(s.x[i], kMl, kW - kMr) << "," << ay.map(s.y[i], kH - kMb, kMt) << " ";
        }
        f << "\"/>\n";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (opt.logy && !(s.y[i] > 0)) continue;
            f << "<circle cx=\"" << ax.map(s.x[i], kMl, kW - kMr) << "\" cy=\""
              << ay.map(s.y[i], kH - kMb, kMt) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        if (!s.label.empty())
            f << "<text x=\"" << kW - kMr - 6 << "\" y=\"" << kMt + 16 + 15 * si
              << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.label
              << "</text>\n";
    }

    if (opt.slope_triangle != 0.0 && opt.logx && opt.logy) {
        // right triangle under the first series spanning its last two abscissae
        const auto& s = series[0];
        if (s.x.size() >= 2) {
            const double x1 = s.x[s.x.size() - 2], x2 = s.x.back();
            const double ybase = std::min(s.y[s.y.size() - 2], s.y.back()) * 0.5;
            const double y2 = ybase * std::pow(x2 / x1, opt.slope_triangle);
            const double px1 = ax.map(x1, kMl, kW - kMr), px2 = ax.map(x2, kMl, kW - kMr);
            const double py1 = ay.map(ybase, kH - kMb, kMt), py2 = ay.map(y2, kH - kMb, kMt);
            f << "<polyline fill=\"none\" stroke=\"#555\" points=\"" << px1 << "," << py1 << " " << px2
              << "," << py1 << " " << px2 << "," << py2 << " " << px1 << "," << py1 << "\"/>\n";
            f << "<text x=\"" << (px1 + px2) / 2 << "\" y=\"" << py1 + 14
              << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#555\">slope " << fmt(opt.slope_triangle)
              << "</text>\n";
        }
    }
    f << "</svg>\n";
    if (!f) throw IoError("write failed: " + path);
}

} // namespace phfem
