#include "otoc/svg.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace otoc::svg {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Round ticks at ~5 even divisions of the data range.
std::vector<double> linear_ticks(double lo, double hi) {
    double span = hi - lo;
    if (span <= 0) span = 1.0;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step)
        ticks.push_back(t);
    return ticks;
}

}  // namespace

void emit(const Figure& figure, const std::filesystem::path& path) {
    if (figure.series.empty()) throw std::invalid_argument("svg::emit: no series");

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : figure.series)
        for (const auto& [x, y] : s.points) {
            if (figure.log_y && !(y > 0)) continue;
            double yy = figure.log_y ? std::log10(y) : y;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, yy);
            y_hi = std::max(y_hi, yy);
        }
    if (!(x_lo <= x_hi) || !(y_lo <= y_hi))
        throw std::invalid_argument("svg::emit: no plottable points");
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;

    const double plot_w = figure.width - kMarginLeft - kMarginRight;
    const double plot_h = figure.height - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double y) {
        double yy = figure.log_y ? std::log10(y) : y;
        return kMarginTop + (y_hi - yy) / (y_hi - y_lo) * plot_h;
    };

    std::ostringstream body;
    body.precision(6);
    body << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << figure.width
         << "\" height=\"" << figure.height << "\">\n";
    body << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    body << "<text x=\"" << figure.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            "font-size=\"16\">" << figure.title << "</text>\n";

    // Axes
    body << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
         << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : linear_ticks(x_lo, x_hi)) {
        double px = sx(t);
        body << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
             << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        body << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
             << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(t) << "</text>\n";
    }
    for (double t : linear_ticks(y_lo, y_hi)) {
        double py = kMarginTop + (y_hi - t) / (y_hi - y_lo) * plot_h;
        body << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
             << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        std::string label = figure.log_y ? ("1e" + fmt(t)) : fmt(t);
        body << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
             << "\" text-anchor=\"end\" font-size=\"11\">" << label << "</text>\n";
    }
    body << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << figure.height - 10
         << "\" text-anchor=\"middle\" font-size=\"13\">" << figure.x_label << "</text>\n";
    body << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
         << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
         << kMarginTop + plot_h / 2 << ")\">" << figure.y_label << "</text>\n";

    int legend_row = 0;
    for (const auto& s : figure.series) {
        if (s.line && s.points.size() > 1) {
            body << "<polyline fill=\"none\" stroke=\"" << s.color << "\"";
            if (s.dashed) body << " stroke-dasharray=\"6,4\"";
            body << " points=\"";
            for (const auto& [x, y] : s.points) {
                if (figure.log_y && !(y > 0)) continue;
                body << sx(x) << ',' << sy(y) << ' ';
            }
            body << "\"/>\n";
        }
        if (s.markers || !s.line) {
            for (const auto& [x, y] : s.points) {
                if (figure.log_y && !(y > 0)) continue;
                body << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
                     << "\" r=\"2.2\" fill=\"" << s.color << "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            double ly = kMarginTop + 16 + 16 * legend_row++;
            body << "<line x1=\"" << kMarginLeft + plot_w - 120 << "\" y1=\"" << ly
                 << "\" x2=\"" << kMarginLeft + plot_w - 95 << "\" y2=\"" << ly
                 << "\" stroke=\"" << s.color << "\"";
            if (s.dashed) body << " stroke-dasharray=\"6,4\"";
            body << "/>\n";
            body << "<text x=\"" << kMarginLeft + plot_w - 90 << "\" y=\"" << ly + 4
                 << "\" font-size=\"11\">" << s.label << "</text>\n";
        }
    }
    body << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg::emit: cannot write " + path.string());
    out << body.str();
}

}  // namespace otoc::svg
