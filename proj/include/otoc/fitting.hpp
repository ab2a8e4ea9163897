#pragma once

#include "otoc/types.hpp"

namespace otoc::fitting {

enum class FitKind { Exponential, PowerLaw };

struct FitResult {
    FitKind kind = FitKind::Exponential;
    double exponent = 0.0;  // gamma for exponential decay, alpha for power law
    int window_start = 0;
    int window_end = 0;
    double r_squared = 0.0;
    double stderr_exponent = 0.0;
};

struct WindowPolicy {
    int min_length = 4;
    int t_min_hint = 1;              // Ehrenfest-time guard
    double saturation_margin = 0.1;  // band above the tail mean excluded
    double r2_floor = 0.98;
    double tail_fraction = 0.25;     // tail used for the saturation estimate

    /// Guard defaulting: ceil(ln D / lyapunov_scale), clamped at 1.
    static WindowPolicy for_dimension(int dim, double lyapunov_scale = 1.0);
};

/// OLS of ln|O1| vs t over the closed window; gamma = -slope.
FitResult fit_exponential(const CorrelatorSeries& series, int t_start, int t_end);

/// OLS of ln|O1| vs ln t; alpha = slope. Requires t_start >= 1.
FitResult fit_power_law(const CorrelatorSeries& series, int t_start, int t_end);

/// Longest window at or after the guard, ending before the saturation band,
/// whose exponential fit reaches the r^2 floor. Ties favor higher r^2.
std::pair<int, int> detect_exponential_window(const CorrelatorSeries& series,
                                              const WindowPolicy& policy);

/// Mean of |O1| over the final tail_fraction of the series.
double saturation_value(const CorrelatorSeries& series, double tail_fraction);

}  // namespace otoc::fitting
