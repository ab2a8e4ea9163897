#include <doctest.h>

#include <complex>
#include <random>

#include "otoc/bessel.hpp"
#include "otoc/linalg.hpp"

using namespace otoc;
using namespace std::complex_literals;

namespace {

ComplexMatrix random_unitary(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("dft of identity is the dft matrix, dc column maps to e0") {
    const int n = 8;
    ComplexMatrix f = linalg::dft_apply(ComplexMatrix::Identity(n, n),
                                        linalg::DftDirection::Forward);
    CHECK(std::abs(f(3, 5) - std::polar(1.0 / std::sqrt(8.0),
                                        -2.0 * std::numbers::pi * 15.0 / 8.0)) < 1e-14);

    ComplexMatrix ones = ComplexMatrix::Constant(n, n, 1.0 / std::sqrt(double(n)));
    ComplexMatrix transformed = linalg::dft_apply(ones, linalg::DftDirection::Forward);
    CHECK(std::abs(transformed(0, 0) - 1.0) < 1e-12);
    for (int i = 1; i < n; ++i) CHECK(std::abs(transformed(i, 0)) < 1e-12);
}

TEST_CASE("dft forward then inverse is the identity and preserves the norm") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    ComplexMatrix m(12, 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix fwd = linalg::dft_apply(m, linalg::DftDirection::Forward);
    ComplexMatrix back = linalg::dft_apply(fwd, linalg::DftDirection::Inverse);
    CHECK((back - m).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(fwd.norm() - m.norm()) < 1e-12);
}

TEST_CASE("eig_full on trivial matrices") {
    auto spec = linalg::eig_full(ComplexMatrix(ComplexMatrix::Identity(5, 5)));
    for (const auto& z : spec.eigenvalues) CHECK(std::abs(z - 1.0) < 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 0.3;
    d(1, 1) = 0.9;
    d(2, 2) = 1.0;
    spec = linalg::eig_full(d);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-12);
    CHECK(std::abs(spec.eigenvalues[1] - 0.9) < 1e-12);
    CHECK(std::abs(spec.eigenvalues[2] - 0.3) < 1e-12);
}

TEST_CASE("eig_full: companion matrix of z^3 - 1 gives the cube roots of unity") {
    ComplexMatrix c = ComplexMatrix::Zero(3, 3);
    c(0, 2) = 1.0;
    c(1, 0) = 1.0;
    c(2, 1) = 1.0;
    auto spec = linalg::eig_full(c);
    std::vector<Complex> roots = {1.0 + 0.0i, std::polar(1.0, 2.0 * std::numbers::pi / 3.0),
                                  std::polar(1.0, -2.0 * std::numbers::pi / 3.0)};
    for (const auto& root : roots) {
        double best = 1e9;
        for (const auto& z : spec.eigenvalues) best = std::min(best, std::abs(z - root));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("eig_full: random column-stochastic matrix has leading eigenvalue 1") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    RealMatrix s(50, 50);
    for (int j = 0; j < 50; ++j) {
        double total = 0.0;
        for (int i = 0; i < 50; ++i) {
            s(i, j) = uniform(rng);
            total += s(i, j);
        }
        s.col(j) /= total;
    }
    auto spec = linalg::eig_full(s);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-8);
}

TEST_CASE("eig_full eigenvalues invariant under unitary similarity") {
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    ComplexMatrix m(20, 20);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix u = random_unitary(20, 5);
    auto a = linalg::eig_full(m);
    auto b = linalg::eig_full(ComplexMatrix(u * m * u.adjoint()));
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
        double best = 1e9;
        for (const auto& z : b.eigenvalues) best = std::min(best, std::abs(z - a.eigenvalues[i]));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("eig_full_pairs residuals") {
    std::mt19937 rng(9);
    std::normal_distribution<double> gauss;
    ComplexMatrix m(30, 30);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    for (const auto& pair : linalg::eig_full_pairs(m)) {
        double residual = (m * pair.vector - pair.value * pair.vector).norm() / pair.vector.norm();
        CHECK(residual < 1e-8);
    }
}

TEST_CASE("eig_leading picks the top moduli of a diagonal matrix") {
    const int n = 40;
    Eigen::VectorXd diag(n);
    diag(0) = 1.0;
    diag(1) = 0.8;
    for (int i = 2; i < n; ++i) diag(i) = 0.5 * std::pow(0.9, i);
    linalg::EigenRequest request;
    request.dim = n;
    request.count = 2;
    request.action = [&diag](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return diag.asDiagonal() * v;
    };
    auto spec = linalg::eig_leading(request);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-8);
    CHECK(std::abs(spec.eigenvalues[1] - 0.8) < 1e-8);
}

TEST_CASE("eig_leading returns both members of a leading conjugate pair") {
    // 2x2 rotation block with radius 0.9 atop a decaying diagonal.
    const int n = 20;
    RealMatrix m = RealMatrix::Zero(n, n);
    const double r = 0.9, theta = 0.7;
    m(0, 0) = r * std::cos(theta);
    m(0, 1) = -r * std::sin(theta);
    m(1, 0) = r * std::sin(theta);
    m(1, 1) = r * std::cos(theta);
    for (int i = 2; i < n; ++i) m(i, i) = 0.4 * std::pow(0.8, i - 2);
    linalg::EigenRequest request;
    request.dim = n;
    request.count = 2;
    request.action = [&m](const Eigen::VectorXd& v) -> Eigen::VectorXd { return m * v; };
    auto spec = linalg::eig_leading(request);
    Complex expected = std::polar(r, theta);
    CHECK(std::abs(std::abs(spec.eigenvalues[0]) - r) < 1e-8);
    CHECK(std::abs(std::abs(spec.eigenvalues[1]) - r) < 1e-8);
    double d0 = std::min(std::abs(spec.eigenvalues[0] - expected),
                         std::abs(spec.eigenvalues[0] - std::conj(expected)));
    CHECK(d0 < 1e-8);
    CHECK(std::abs(spec.eigenvalues[0] - std::conj(spec.eigenvalues[1])) < 1e-8);
}

TEST_CASE("eig_leading agrees with eig_full on a random stochastic matrix") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    RealMatrix s(60, 60);
    for (int j = 0; j < 60; ++j) {
        for (int i = 0; i < 60; ++i) s(i, j) = uniform(rng);
        s.col(j) /= s.col(j).sum();
    }
    linalg::EigenRequest request;
    request.dim = 60;
    request.count = 3;
    request.action = [&s](const Eigen::VectorXd& v) -> Eigen::VectorXd { return s * v; };
    auto partial = linalg::eig_leading(request);
    auto full = linalg::eig_full(s);
    for (int i = 0; i < 3; ++i) {
        double best = 1e9;
        for (const auto& z : full.eigenvalues)
            best = std::min(best, std::abs(z - partial.eigenvalues[static_cast<std::size_t>(i)]));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("bessel values match high-precision references") {
    struct Fixture {
        int order;
        double x;
        double value;
    };
    // mpmath besselj at 30 digits
    const Fixture fixtures[] = {
        {0, 0.5, 0.938469807240812904},
        {1, 1.0, 0.440050585744933516},
        {3, 2.0, 0.128943249474402051},
        {10, 8.0, 0.0607670267742511563},
        {2, 17.0, 0.158363841238503471},
        {7, 66.0, -0.0373737611665046563},
        {25, 600.0, 0.00990685675546819047},
        {60, 600.0, 0.0184899128817338499},
        {40, 12.0, 6.74488214846900612e-18},
        {5, 3.0, 0.0430284348770475839},
        {4, 7.0, 0.157798144661367918},
        {12, 198.0, -0.0534564604827035344},
        {0, 330.0, -0.0348856025871531894},
    };
    for (const auto& f : fixtures)
        CHECK(std::abs(bessel::cyl_j(f.order, f.x) - f.value) < 1e-12);
}

TEST_CASE("bessel reflection identities and zero argument") {
    CHECK(bessel::cyl_j(0, 0.0) == doctest::Approx(1.0));
    CHECK(bessel::cyl_j(3, 0.0) == doctest::Approx(0.0));
    CHECK(bessel::cyl_j(-3, 2.0) == doctest::Approx(-bessel::cyl_j(3, 2.0)));
    CHECK(bessel::cyl_j(3, -2.0) == doctest::Approx(-bessel::cyl_j(3, 2.0)));
    CHECK(bessel::cyl_j(-4, -7.0) == doctest::Approx(bessel::cyl_j(4, 7.0)));
}
