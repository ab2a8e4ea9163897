#include <doctest.h>

#include <cmath>

#include "otoc/linalg.hpp"
#include "otoc/pf.hpp"
#include "otoc/rng.hpp"

using namespace otoc;

namespace {

double column_sum(const Eigen::SparseMatrix<double>& m, int col) {
    double total = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) total += it.value();
    return total;
}

Eigen::VectorXd uniform_density(int dim) {
    return Eigen::VectorXd::Constant(dim, 1.0 / dim);
}

void check_conjugate_pairing(const Spectrum& spec) {
    for (const auto& z : spec.eigenvalues) {
        if (std::abs(z.imag()) < 1e-12) continue;
        double best = 1e9;
        for (const auto& w : spec.eigenvalues) best = std::min(best, std::abs(w - std::conj(z)));
        CHECK(best < 1e-8);
    }
}

}  // namespace

TEST_CASE("momentum-position: columns sum to 1 and fix the uniform density") {
    for (double kick : {0.0, 6.6, 17.0}) {
        auto op = pf::build_momentum_position(kick, 24, 0.001);
        REQUIRE(op.dim() == 24 * 24);
        for (int j = 0; j < op.dim(); ++j)
            CHECK(std::abs(column_sum(op.matrix, j) - 1.0) < 1e-12);

        // row sums are also 1 for this column-normalized kernel on a uniform
        // grid, so the uniform density is fixed
        Eigen::VectorXd rho = uniform_density(op.dim());
        Eigen::VectorXd image = op.matrix * rho;
        CHECK((image - rho).cwiseAbs().maxCoeff() < 1e-10);

        auto spec = linalg::eig_full(op.dense());
        CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-8);
        CHECK(std::abs(spec.eigenvalues[0]) <= 1.0 + 1e-6);
    }
}

TEST_CASE("momentum-position at K=0 and small s approaches the free rotation") {
    // With p on the grid, both kernel deltas align exactly with grid points,
    // so every column concentrates on the single target q' = q + p.
    const int n = 16;
    auto op = pf::build_momentum_position(0.0, n, 1e-5);
    for (int iq = 0; iq < n; ++iq) {
        for (int ip = 0; ip < n; ++ip) {
            int col = iq * n + ip;
            int target = ((iq + ip) % n) * n + ip;
            double diag = op.matrix.coeff(target, col);
            CHECK(diag > 0.999);
        }
    }
}

TEST_CASE("momentum-position rejects bad inputs") {
    CHECK_THROWS_AS(pf::build_momentum_position(1.0, 1, 0.001), std::invalid_argument);
    CHECK_THROWS_AS(pf::build_momentum_position(1.0, 16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pf::build_momentum_position(1.0, 16, -1.0), std::invalid_argument);
}

TEST_CASE("fourier: invariant mode, selection rule and K=0 structure") {
    const int k_max = 6;
    const int n = 2 * k_max + 1;
    auto idx = [&](int k, int m) { return (k + k_max) * n + (m + k_max); };

    auto op = pf::build_fourier(3.3, k_max, 0.2);
    CHECK(op.matrix.coeff(idx(0, 0), idx(0, 0)) == doctest::Approx(1.0));

    RealMatrix dense = op.dense();
    for (int k = -k_max; k <= k_max; ++k)
        for (int m = -k_max; m <= k_max; ++m)
            for (int kp = -k_max; kp <= k_max; ++kp)
                for (int mp = -k_max; mp <= k_max; ++mp)
                    if (k - kp != m) CHECK(dense(idx(k, m), idx(kp, mp)) == 0.0);

    // K=0: J_{m-m'}(0) = delta_{m,m'}
    auto free = pf::build_fourier(0.0, k_max, 0.1);
    for (int k = 0; k < free.dim(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(free.matrix, k); it; ++it) {
            if (it.value() == 0.0) continue;
            int m_row = it.row() % n - k_max;
            int m_col = static_cast<int>(it.col()) % n - k_max;
            CHECK(m_row == m_col);
        }

    auto spec = linalg::eig_full(op.dense());
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-8);
    CHECK(std::abs(spec.eigenvalues[0]) <= 1.0 + 1e-6);
}

TEST_CASE("fourier: K ordering and noise monotonicity at fixed truncation") {
    const int k_max = 10;
    auto lambda1 = [&](double kick, double sigma) {
        auto spec = linalg::eig_full(pf::build_fourier(kick, k_max, sigma).dense());
        return std::abs(pf::leading_resonance(spec, 0.01));
    };
    CHECK(lambda1(6.6, 0.2) > lambda1(17.0, 0.2));

    for (double kick : {6.6, 17.0}) {
        double previous = 1.0;
        for (double sigma : {0.0, 0.1, 0.2, 0.3}) {
            double value = lambda1(kick, sigma);
            CHECK(value <= previous + 1e-9);
            previous = value;
        }
    }
}

TEST_CASE("ulam: exact column stochasticity for any inputs") {
    for (double kick : {0.0, 1.0, 17.0}) {
        auto op = pf::build_ulam(kick, 12, 37, 0.01, 5);
        for (int j = 0; j < op.dim(); ++j)
            CHECK(std::abs(column_sum(op.matrix, j) - 1.0) < 1e-12);
        for (int j = 0; j < op.matrix.outerSize(); ++j)
            for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, j); it; ++it)
                CHECK(it.value() >= 0.0);
    }
}

TEST_CASE("ulam at K=0 with cell-center starts is a permutation") {
    auto op = pf::build_ulam(0.0, 10, 25, 0.0, 3, pf::UlamStart::CellCenter);
    for (int j = 0; j < op.dim(); ++j) {
        int entries = 0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, j); it; ++it) {
            CHECK(it.value() == doctest::Approx(1.0));
            ++entries;
        }
        CHECK(entries == 1);
    }
}

TEST_CASE("ulam with quantum-scale noise has a sub-unit leading resonance") {
    const int cells = 30;
    const double hbar = 1.0 / (2.0 * std::numbers::pi * cells);
    auto op = pf::build_ulam(17.0, cells, 200, hbar, 7);
    auto spec = linalg::eig_full(op.dense());
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-8);
    double lambda1 = std::abs(pf::leading_resonance(spec, 0.01));
    CHECK(lambda1 < 1.0);
    CHECK(lambda1 > 0.0);
    check_conjugate_pairing(spec);
}

TEST_CASE("ulam is deterministic given the seed") {
    auto a = pf::build_ulam(6.6, 8, 50, 0.02, 11);
    auto b = pf::build_ulam(6.6, 8, 50, 0.02, 11);
    CHECK((RealMatrix(a.matrix) - RealMatrix(b.matrix)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectral radius stays within the unit disc for all methods") {
    for (double kick : {1.0, 6.6, 17.0}) {
        CHECK(std::abs(linalg::eig_full(pf::build_momentum_position(kick, 20, 0.002).dense())
                           .eigenvalues[0]) <= 1.0 + 1e-6);
        CHECK(std::abs(linalg::eig_full(pf::build_fourier(kick, 8, 0.2).dense())
                           .eigenvalues[0]) <= 1.0 + 1e-6);
        CHECK(std::abs(linalg::eig_full(pf::build_ulam(kick, 15, 80, 0.0, 2).dense())
                           .eigenvalues[0]) <= 1.0 + 1e-6);
    }
}

TEST_CASE("real-matrix spectra occur in conjugate pairs") {
    check_conjugate_pairing(linalg::eig_full(pf::build_momentum_position(6.6, 18, 0.003).dense()));
    check_conjugate_pairing(linalg::eig_full(pf::build_ulam(6.6, 14, 60, 0.01, 13).dense()));
}

TEST_CASE("leading_resonance selection and errors") {
    Spectrum spec;
    spec.eigenvalues = {{1.0, 0.0}, {0.8, 0.0}, {0.5, 0.0}};
    CHECK(pf::leading_resonance(spec, 0.01) == Complex(0.8, 0.0));

    Spectrum shell;
    shell.eigenvalues = {{1.0, 0.0}, {0.999, 0.0}};
    CHECK_THROWS_AS(pf::leading_resonance(shell, 0.01), NumericError);

    Spectrum pair;
    pair.eigenvalues = {{1.0, 0.0}, {0.7, 0.1}, {0.7, -0.1}, {0.3, 0.0}};
    auto chosen = pf::leading_resonance(pair, 0.01);
    CHECK(chosen == Complex(0.7, 0.1));

    CHECK_THROWS_AS(pf::leading_resonance(Spectrum{}, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(pf::leading_resonance(spec, 1.5), std::invalid_argument);
}

TEST_CASE("spectrum_of uses subspace iteration above the dense cap") {
    // 40x40 grid -> 1600 > dense cap; compare against eig_full on the same
    // matrix to validate the iterative path.
    auto op = pf::build_momentum_position(10.0, 40, 0.002);
    auto iterative = pf::spectrum_of(op, 6);
    CHECK(iterative.source.find("momentum-position") != std::string::npos);

    linalg::EigenRequest request;  // sanity: spectrum_of picked the iterative path
    auto dense_spec = [&]() {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(op.dense().cast<Complex>(), false);
        std::vector<Complex> values(solver.eigenvalues().data(),
                                    solver.eigenvalues().data() + op.dim());
        std::sort(values.begin(), values.end(),
                  [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
        return values;
    }();
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(iterative.eigenvalues[static_cast<std::size_t>(i)] -
                       dense_spec[static_cast<std::size_t>(i)]) < 1e-6);
}
