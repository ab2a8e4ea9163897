#pragma once

#include "otoc/types.hpp"

namespace otoc::quantum {

/// Cyclic shift V_S = sum_q |q+1><q| (wraps |D-1> -> |0>).
ComplexMatrix schwinger_shift_v(int dim);

/// Phase clock U_S = diag(exp(2*pi*i*q/D)).
ComplexMatrix schwinger_clock_u(int dim);

/// X = (U_S - U_S^dag) / 2i, diagonal with entries sin(2*pi*q/D).
ComplexMatrix position_operator(int dim);

/// P = (V_S - V_S^dag) / 2i.
ComplexMatrix momentum_operator(int dim);

struct EvolutionOptions {
    MomentumGrid grid = MomentumGrid::NonNegative;
    bool rehermitize = true;       // op <- (op + op^dag)/2 after each step
    int dim_cap = 2000;            // dense-conjugation resource limit
    bool evolve_position = false;  // conjugate X instead of P (reversed pair)
};

/// One-period Floquet propagator of the quantum standard map,
/// kinetic phases in the momentum basis times kick phases in position.
ComplexMatrix floquet_unitary(const MapParams& params,
                              MomentumGrid grid = MomentumGrid::NonNegative);

/// (U^dag)^t op U^t by repeated one-step conjugation.
ComplexMatrix heisenberg_evolve(const ComplexMatrix& op, const ComplexMatrix& propagator,
                                int steps, bool rehermitize = true);

/// O1, O2 and C = -2(Re O1 - O2) for t = 0..t_max under the maximally
/// mixed average.
CorrelatorSeries compute_correlators(const MapParams& params, int t_max,
                                     const EvolutionOptions& options = {});

}  // namespace otoc::quantum
