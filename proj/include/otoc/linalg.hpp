#pragma once

#include <functional>
#include <optional>

#include "otoc/types.hpp"

namespace otoc::linalg {

enum class DftDirection { Forward, Inverse };

/// Unitary DFT matrix with kernel <p|q> = exp(-2*pi*i*q*p/D)/sqrt(D).
ComplexMatrix dft_matrix(int dim);

/// Applies the unitary DFT to each column of a square matrix.
ComplexMatrix dft_apply(const ComplexMatrix& m, DftDirection dir);

struct EigenRequest {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> action;  // v -> M v, real
    int dim = 0;
    int count = 1;
    double tolerance = 1e-10;
    int max_iterations = 5000;
};

struct EigenPair {
    Complex value;
    Eigen::VectorXcd vector;
};

/// Full eigenvalue set of a general complex matrix, modulus-sorted.
Spectrum eig_full(const ComplexMatrix& m);
Spectrum eig_full(const RealMatrix& m);

/// Eigenvalues plus right eigenvectors; used for residual checks.
std::vector<EigenPair> eig_full_pairs(const ComplexMatrix& m);

/// Leading eigenvalues of a real operator given only its action, via
/// subspace iteration with Rayleigh-Ritz extraction.
Spectrum eig_leading(const EigenRequest& request);

}  // namespace otoc::linalg
