#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <string>

#include "otoc/types.hpp"

namespace otoc::pf {

enum class Method { MomentumPosition, Fourier, Ulam };

std::string method_name(Method method);

/// Coarse-grained Perron-Frobenius approximation. All three construction
/// methods yield real-entried matrices, stored sparse; the spectra are
/// complex.
struct PFOperator {
    Eigen::SparseMatrix<double> matrix;
    Method method = Method::Ulam;
    double kick_strength = 0.0;
    double noise = 0.0;             // s, sigma, or Gaussian std per method
    std::string basis_descriptor;   // grid/cutoff/cell metadata
    std::uint64_t seed = 0;

    int dim() const { return static_cast<int>(matrix.rows()); }
    RealMatrix dense() const { return RealMatrix(matrix); }
};

/// Grid discretization of the map kernel with each periodic delta replaced
/// by a periodic Gaussian of width parameter s; columns renormalized to 1.
PFOperator build_momentum_position(double kick_strength, int grid_size, double s);

/// Fourier-mode matrix J_{m-m'}(k'K) exp(-sigma^2 m^2/2) delta_{k-k',m}
/// over the square window |k|,|m| <= k_max.
PFOperator build_fourier(double kick_strength, int k_max, double sigma);

enum class UlamStart { UniformInCell, CellCenter };

/// Ulam transition matrix on an M x M cell grid from sampled one-step
/// trajectories, optionally with Gaussian noise on the position update.
PFOperator build_ulam(double kick_strength, int cells_per_axis, int n_per_cell,
                      double noise_std, std::uint64_t seed,
                      UlamStart start = UlamStart::UniformInCell);

/// Spectrum of a PF operator; dense solve below the cap, subspace
/// iteration above it.
Spectrum spectrum_of(const PFOperator& op, int leading_count = 8);

/// Largest-modulus eigenvalue strictly inside the unit shell |z| < 1-unit_tol.
Complex leading_resonance(const Spectrum& spec, double unit_tol);

}  // namespace otoc::pf
