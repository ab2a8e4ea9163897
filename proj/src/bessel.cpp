#include "otoc/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace otoc::bessel {

namespace {

// Leading power-series terms; enough for |x| < 1e-3 at 1e-14 accuracy.
std::vector<double> series_small(int n_max, double x) {
    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    const double h = 0.5 * x;
    const double h2 = h * h;
    double prefactor = 1.0;  // (x/2)^n / n!
    for (int n = 0; n <= n_max; ++n) {
        values[static_cast<std::size_t>(n)] =
            prefactor * (1.0 - h2 / (n + 1) * (1.0 - h2 / (2 * (n + 2))));
        prefactor *= h / (n + 1);
    }
    return values;
}

}  // namespace

std::vector<double> cyl_j_array(int n_max, double x) {
    if (n_max < 0) throw std::invalid_argument("cyl_j_array: order must be >= 0");
    if (x < 0) throw std::invalid_argument("cyl_j_array: use cyl_j for negative arguments");
    if (x < 1e-3) return series_small(n_max, x);

    // Start the downward recurrence far enough above both the wanted order
    // and the turning point n ~ x that the minimal solution dominates.
    int start = std::max(n_max, static_cast<int>(std::ceil(x)));
    start += 20 + static_cast<int>(3.0 * std::sqrt(static_cast<double>(start)));
    if (start % 2 != 0) ++start;

    std::vector<double> values(static_cast<std::size_t>(n_max) + 1, 0.0);
    double above = 0.0;
    double current = 1e-300;
    double norm = 0.0;
    for (int n = start; n >= 1; --n) {
        double below = (2.0 * n / x) * current - above;
        above = current;
        current = below;
        if (n - 1 <= n_max) values[static_cast<std::size_t>(n - 1)] = current;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? current : 2.0 * current;
        if (std::abs(current) > 1e250) {
            const double scale = 1e-250;
            current *= scale;
            above *= scale;
            norm *= scale;
            for (auto& v : values) v *= scale;
        }
    }
    for (auto& v : values) v /= norm;
    return values;
}

double cyl_j(int order, double x) {
    double sign = 1.0;
    if (x < 0) {
        x = -x;
        if (order % 2 != 0) sign = -sign;
    }
    if (order < 0) {
        order = -order;
        if (order % 2 != 0) sign = -sign;
    }
    return sign * cyl_j_array(order, x)[static_cast<std::size_t>(order)];
}

}  // namespace otoc::bessel
