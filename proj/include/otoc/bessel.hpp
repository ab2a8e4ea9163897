#pragma once

#include <vector>

namespace otoc::bessel {

/// J_n(x) for integer order; handles negative order and argument via the
/// reflection identities J_{-n}(x) = (-1)^n J_n(x), J_n(-x) = (-1)^n J_n(x).
double cyl_j(int order, double x);

/// J_0(x) .. J_{n_max}(x) in one pass (Miller's downward recurrence,
/// normalized by J_0 + 2*sum J_{2k} = 1).
std::vector<double> cyl_j_array(int n_max, double x);

}  // namespace otoc::bessel
