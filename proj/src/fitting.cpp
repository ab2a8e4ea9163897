#include "otoc/fitting.hpp"

#include <cmath>

namespace otoc::fitting {

namespace {

struct OlsLine {
    double slope = 0.0;
    double r_squared = 1.0;
    double stderr_slope = 0.0;
};

OlsLine ols(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    OlsLine line;
    line.slope = sxy / sxx;
    double ssr = syy - line.slope * sxy;  // residual sum of squares
    if (ssr < 0) ssr = 0;
    line.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    if (x.size() > 2) line.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
    return line;
}

std::size_t index_of_time(const CorrelatorSeries& series, int t, const char* what) {
    for (std::size_t i = 0; i < series.times.size(); ++i)
        if (series.times[i] == t) return i;
    throw std::invalid_argument(std::string(what) + ": window outside series range");
}

}  // namespace

WindowPolicy WindowPolicy::for_dimension(int dim, double lyapunov_scale) {
    WindowPolicy policy;
    double scale = std::max(lyapunov_scale, 1.0);
    // Floor rather than ceil: the guard only needs to clear the pre-Ehrenfest
    // plateau, and rounding up can cut into the first decaying point.
    policy.t_min_hint = std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(dim)) / scale)));
    return policy;
}

FitResult fit_exponential(const CorrelatorSeries& series, int t_start, int t_end) {
    if (t_end - t_start + 1 < 4)
        throw std::invalid_argument("fit_exponential: window must span >= 4 points");
    std::size_t a = index_of_time(series, t_start, "fit_exponential");
    std::size_t b = index_of_time(series, t_end, "fit_exponential");
    std::vector<double> x, y;
    for (std::size_t i = a; i <= b; ++i) {
        double v = std::abs(series.o1[i]);
        if (!(v > 0)) throw std::invalid_argument("fit_exponential: nonpositive |O1| in window");
        x.push_back(static_cast<double>(series.times[i]));
        y.push_back(std::log(v));
    }
    OlsLine line = ols(x, y);
    return {FitKind::Exponential, -line.slope, t_start, t_end, line.r_squared,
            line.stderr_slope};
}

FitResult fit_power_law(const CorrelatorSeries& series, int t_start, int t_end) {
    if (t_start < 1) throw std::invalid_argument("fit_power_law: t_start must be >= 1");
    if (t_end - t_start + 1 < 4)
        throw std::invalid_argument("fit_power_law: window must span >= 4 points");
    std::size_t a = index_of_time(series, t_start, "fit_power_law");
    std::size_t b = index_of_time(series, t_end, "fit_power_law");
    std::vector<double> x, y;
    for (std::size_t i = a; i <= b; ++i) {
        double v = std::abs(series.o1[i]);
        if (!(v > 0)) throw std::invalid_argument("fit_power_law: nonpositive |O1| in window");
        x.push_back(std::log(static_cast<double>(series.times[i])));
        y.push_back(std::log(v));
    }
    OlsLine line = ols(x, y);
    return {FitKind::PowerLaw, line.slope, t_start, t_end, line.r_squared, line.stderr_slope};
}

double saturation_value(const CorrelatorSeries& series, double tail_fraction) {
    if (tail_fraction <= 0 || tail_fraction > 0.5)
        throw std::invalid_argument("saturation_value: tail_fraction in (0, 0.5]");
    const std::size_t n = series.size();
    std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(tail_fraction * n));
    double total = 0.0;
    for (std::size_t i = n - count; i < n; ++i) total += std::abs(series.o1[i]);
    return total / static_cast<double>(count);
}

std::pair<int, int> detect_exponential_window(const CorrelatorSeries& series,
                                              const WindowPolicy& policy) {
    if (series.size() < static_cast<std::size_t>(policy.min_length) + 2)
        throw std::invalid_argument("detect_exponential_window: series too short");

    const double band = saturation_value(series, policy.tail_fraction) *
                        (1.0 + policy.saturation_margin);

    // Last usable index: the point before |O1| first enters the saturation
    // band (searching past the guard so an early plateau does not stop us).
    std::size_t guard = 0;
    while (guard < series.size() && series.times[guard] < policy.t_min_hint) ++guard;
    std::size_t limit = series.size();
    for (std::size_t i = guard; i < series.size(); ++i) {
        if (std::abs(series.o1[i]) <= band) {
            limit = i;
            break;
        }
    }

    bool found = false;
    int best_start = 0, best_end = 0, best_len = 0;
    double best_r2 = -1.0;
    const std::size_t min_len = static_cast<std::size_t>(std::max(policy.min_length, 4));
    for (std::size_t a = guard; a + min_len <= limit; ++a) {
        for (std::size_t b = a + min_len - 1; b < limit; ++b) {
            bool positive = true;
            for (std::size_t i = a; i <= b && positive; ++i)
                positive = std::abs(series.o1[i]) > 0;
            if (!positive) continue;
            FitResult fit = fit_exponential(series, series.times[a], series.times[b]);
            if (fit.r_squared < policy.r2_floor) continue;
            int len = series.times[b] - series.times[a] + 1;
            if (len > best_len || (len == best_len && fit.r_squared > best_r2)) {
                found = true;
                best_len = len;
                best_r2 = fit.r_squared;
                best_start = series.times[a];
                best_end = series.times[b];
            }
        }
    }
    if (!found)
        throw NumericError("detect_exponential_window: no window reaches the r^2 floor");
    return {best_start, best_end};
}

}  // namespace otoc::fitting
