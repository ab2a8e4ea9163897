#include "otoc/quantum.hpp"

#include <cmath>

#include "otoc/linalg.hpp"

namespace otoc::quantum {

namespace {
constexpr double kPi = std::numbers::pi;

void check_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("quantum operator: dimension must be >= 2");
}
}  // namespace

ComplexMatrix schwinger_shift_v(int dim) {
    check_dim(dim);
    ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
    for (int q = 0; q < dim; ++q) v((q + 1) % dim, q) = 1.0;
    return v;
}

ComplexMatrix schwinger_clock_u(int dim) {
    check_dim(dim);
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (int q = 0; q < dim; ++q) u(q, q) = std::polar(1.0, 2.0 * kPi * q / dim);
    return u;
}

ComplexMatrix position_operator(int dim) {
    check_dim(dim);
    ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
    for (int q = 0; q < dim; ++q) x(q, q) = std::sin(2.0 * kPi * q / dim);
    return x;
}

ComplexMatrix momentum_operator(int dim) {
    check_dim(dim);
    ComplexMatrix v = schwinger_shift_v(dim);
    return (v - v.adjoint().eval()) / Complex(0.0, 2.0);
}

ComplexMatrix floquet_unitary(const MapParams& params, MomentumGrid grid) {
    const int dim = params.dim;
    const double kick = params.kick_strength;

    Eigen::VectorXcd kick_phase(dim);
    for (int q = 0; q < dim; ++q)
        kick_phase(q) = std::polar(1.0, -kick * dim * std::cos(2.0 * kPi * q / dim) / (2.0 * kPi));

    Eigen::VectorXcd kinetic_phase(dim);
    for (int j = 0; j < dim; ++j) {
        double idx = static_cast<double>(j);
        if (grid == MomentumGrid::Symmetric && j >= (dim + 1) / 2) idx -= dim;
        kinetic_phase(j) = std::polar(1.0, -kPi * idx * idx / dim);
    }

    ComplexMatrix f = linalg::dft_matrix(dim);
    ComplexMatrix u = kinetic_phase.asDiagonal() * f * kick_phase.asDiagonal().toDenseMatrix();
    return f.adjoint() * u;
}

ComplexMatrix heisenberg_evolve(const ComplexMatrix& op, const ComplexMatrix& propagator,
                                int steps, bool rehermitize) {
    if (op.rows() != propagator.rows() || op.cols() != propagator.cols() ||
        op.rows() != op.cols())
        throw std::invalid_argument("heisenberg_evolve: dimension mismatch");
    if (steps < 0) throw std::invalid_argument("heisenberg_evolve: steps must be >= 0");
    ComplexMatrix result = op;
    ComplexMatrix udag = propagator.adjoint();
    for (int t = 0; t < steps; ++t) {
        result = udag * result * propagator;
        if (rehermitize) result = 0.5 * (result + result.adjoint().eval());
    }
    return result;
}

CorrelatorSeries compute_correlators(const MapParams& params, int t_max,
                                     const EvolutionOptions& options) {
    if (t_max < 1) throw std::invalid_argument("compute_correlators: t_max must be >= 1");
    if (params.dim > options.dim_cap)
        throw NumericError("compute_correlators: dimension exceeds configured cap of " +
                           std::to_string(options.dim_cap));

    const int dim = params.dim;
    ComplexMatrix propagator = floquet_unitary(params, options.grid);
    // Default pair is (P(t), X); the reversed pair evolves X against a fixed P.
    ComplexMatrix fixed = options.evolve_position ? momentum_operator(dim) : position_operator(dim);
    ComplexMatrix evolving = options.evolve_position ? position_operator(dim) : momentum_operator(dim);
    ComplexMatrix udag = propagator.adjoint();

    CorrelatorSeries series;
    series.kick_strength = params.kick_strength;
    series.dim = dim;

    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) {
            evolving = udag * evolving * propagator;
            if (options.rehermitize) evolving = 0.5 * (evolving + evolving.adjoint().eval());
        }
        ComplexMatrix mixed = evolving * fixed;
        // Tr(AB) = sum_ij A_ij B_ji
        Complex o1 = (mixed.array() * mixed.transpose().array()).sum() / static_cast<double>(dim);
        ComplexMatrix sq_left = evolving * evolving;
        ComplexMatrix sq_right = fixed * fixed;
        Complex o2 = (sq_left.array() * sq_right.transpose().array()).sum() / static_cast<double>(dim);
        series.times.push_back(t);
        series.o1.push_back(o1);
        series.o2.push_back(o2.real());
        series.c.push_back(-2.0 * (o1.real() - o2.real()));
    }
    return series;
}

}  // namespace otoc::quantum
