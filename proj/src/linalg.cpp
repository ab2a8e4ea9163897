#include "otoc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace otoc::linalg {

namespace {
constexpr int kDenseCap = 4000;
}

ComplexMatrix dft_matrix(int dim) {
    ComplexMatrix f(dim, dim);
    const double w = -2.0 * std::numbers::pi / dim;
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q)
            f(p, q) = std::polar(norm, w * static_cast<double>(p) * q);
    return f;
}

ComplexMatrix dft_apply(const ComplexMatrix& m, DftDirection dir) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dft_apply: matrix must be square");
    ComplexMatrix f = dft_matrix(static_cast<int>(m.rows()));
    if (dir == DftDirection::Inverse) f.adjointInPlace();
    return f * m;
}

Spectrum eig_full(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_full: matrix must be square");
    if (m.rows() > kDenseCap) throw NumericError("eig_full: dimension exceeds dense cap");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("eig_full: QR iteration failed to converge", m.rows() * 40);
    Spectrum spec;
    spec.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    spec.sort_by_modulus();
    return spec;
}

Spectrum eig_full(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_full: matrix must be square");
    if (m.rows() > kDenseCap) throw NumericError("eig_full: dimension exceeds dense cap");
    Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("eig_full: QR iteration failed to converge", m.rows() * 40);
    Spectrum spec;
    spec.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    spec.sort_by_modulus();
    return spec;
}

std::vector<EigenPair> eig_full_pairs(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_full_pairs: matrix must be square");
    if (m.rows() > kDenseCap) throw NumericError("eig_full_pairs: dimension exceeds dense cap");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw NumericError("eig_full_pairs: QR iteration failed to converge", m.rows() * 40);
    std::vector<EigenPair> pairs(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        pairs[i] = {solver.eigenvalues()(i), solver.eigenvectors().col(i)};
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        return std::abs(a.value) > std::abs(b.value);
    });
    return pairs;
}

Spectrum eig_leading(const EigenRequest& request) {
    if (!request.action) throw std::invalid_argument("eig_leading: matrix action required");
    if (request.dim < 2) throw std::invalid_argument("eig_leading: dimension must be >= 2");
    const int n = request.dim;
    // Extra basis vectors buffer the wanted values against slow-converging
    // trailing Ritz pairs, and keep conjugate pairs together.
    const int block = std::min(n, request.count + 6);

    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, block);
    // Deterministic start: uniform vector plus a fixed pseudo-random fill.
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) / static_cast<double>(1ull << 53) - 0.5;
    };
    basis.col(0).setOnes();
    for (int j = 1; j < block; ++j)
        for (int i = 0; i < n; ++i) basis(i, j) = next();
    basis = Eigen::HouseholderQR<Eigen::MatrixXd>(basis).householderQ() *
            Eigen::MatrixXd::Identity(n, block);

    std::vector<Complex> previous(request.count, Complex(0, 0));
    Eigen::MatrixXd image(n, block);
    double last_change = std::numeric_limits<double>::infinity();

    for (int iter = 1; iter <= request.max_iterations; ++iter) {
        for (int j = 0; j < block; ++j) image.col(j) = request.action(basis.col(j));
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(image);
        basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);

        if (iter % 5 != 0 && iter != request.max_iterations) continue;

        // Rayleigh-Ritz on the current subspace.
        Eigen::MatrixXd projected(block, block);
        for (int j = 0; j < block; ++j) projected.col(j) = basis.transpose() * request.action(basis.col(j));
        Eigen::EigenSolver<Eigen::MatrixXd> small(projected, /*computeEigenvectors=*/false);
        std::vector<Complex> ritz(small.eigenvalues().data(),
                                  small.eigenvalues().data() + block);
        std::sort(ritz.begin(), ritz.end(),
                  [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });

        double change = 0.0;
        for (int i = 0; i < request.count; ++i)
            change = std::max(change, std::abs(ritz[static_cast<std::size_t>(i)] - previous[static_cast<std::size_t>(i)]));
        previous.assign(ritz.begin(), ritz.begin() + request.count);

        if (change <= request.tolerance) {
            Spectrum spec;
            spec.eigenvalues = previous;
            spec.source = "subspace-iteration";
            return spec;
        }
        if (change >= last_change && change < 1e-15)
            throw NumericError("eig_leading: stagnation below machine precision", iter);
        last_change = change;
    }
    throw NumericError("eig_leading: no convergence within iteration budget",
                       request.max_iterations);
}

}  // namespace otoc::linalg
