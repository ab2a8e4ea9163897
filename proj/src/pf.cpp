#include "otoc/pf.hpp"

#include <cmath>
#include <vector>

#include "otoc/bessel.hpp"
#include "otoc/linalg.hpp"
#include "otoc/rng.hpp"

namespace otoc::pf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Kernel weights below this fraction of the column peak carry no spectral
// information at double precision and are dropped from the sparse pattern.
constexpr double kWeightFloor = 1e-15;
constexpr int kDenseSpectrumCap = 1200;

// Periodic Gaussian sum_j exp(-(x-j)^2/s), j in {-3..3}.
double periodic_gaussian(double x, double s) {
    double total = 0.0;
    for (int j = -3; j <= 3; ++j) {
        double d = x - j;
        total += std::exp(-d * d / s);
    }
    return total;
}

}  // namespace

std::string method_name(Method method) {
    switch (method) {
        case Method::MomentumPosition: return "momentum-position";
        case Method::Fourier: return "fourier";
        case Method::Ulam: return "ulam";
    }
    return "unknown";
}

PFOperator build_momentum_position(double kick_strength, int grid_size, double s) {
    if (grid_size < 2) throw std::invalid_argument("build_momentum_position: grid_size >= 2");
    if (s <= 0) throw std::invalid_argument("build_momentum_position: s must be > 0");
    const int n = grid_size;
    const int dim = n * n;

    // The second delta couples q' to q + p' where all three live on the same
    // 1/n grid, so its weights depend only on the cyclic separation d.
    std::vector<double> grid_weight(n);
    double grid_peak = 0.0;
    for (int d = 0; d < n; ++d) {
        grid_weight[d] = periodic_gaussian(static_cast<double>(d) / n, s);
        grid_peak = std::max(grid_peak, grid_weight[d]);
    }
    if (!(grid_peak > 0.0))
        throw NumericError("build_momentum_position: kernel underflows for this s");
    std::vector<int> grid_support;
    for (int d = 0; d < n; ++d)
        if (grid_weight[d] >= kWeightFloor * grid_peak) grid_support.push_back(d);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(dim) * grid_support.size());

    std::vector<double> p_weight(n);
    for (int iq = 0; iq < n; ++iq) {
        const double q = static_cast<double>(iq) / n;
        for (int ip = 0; ip < n; ++ip) {
            const double p = static_cast<double>(ip) / n;
            const int col = iq * n + ip;
            double p_next = p + kick_strength / kTwoPi * std::sin(kTwoPi * q);
            p_next -= std::floor(p_next);

            double peak = 0.0;
            for (int jp = 0; jp < n; ++jp) {
                p_weight[jp] = periodic_gaussian(static_cast<double>(jp) / n - p_next, s);
                peak = std::max(peak, p_weight[jp]);
            }
            if (!(peak > 0.0))
                throw NumericError("build_momentum_position: kernel underflows for this s");

            double column_sum = 0.0;
            std::size_t first = triplets.size();
            for (int jp = 0; jp < n; ++jp) {
                if (p_weight[jp] < kWeightFloor * peak) continue;
                // q' = q + p' shifted by the cyclic separation d
                for (int d : grid_support) {
                    int jq = (iq + jp + d) % n;
                    double w = p_weight[jp] * grid_weight[static_cast<std::size_t>(d)];
                    triplets.emplace_back(jq * n + jp, col, w);
                    column_sum += w;
                }
            }
            for (std::size_t k = first; k < triplets.size(); ++k)
                triplets[k] = {triplets[k].row(), triplets[k].col(),
                               triplets[k].value() / column_sum};
        }
    }

    PFOperator op;
    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.method = Method::MomentumPosition;
    op.kick_strength = kick_strength;
    op.noise = s;
    op.basis_descriptor = "grid " + std::to_string(n) + "x" + std::to_string(n);
    return op;
}

PFOperator build_fourier(double kick_strength, int k_max, double sigma) {
    if (k_max < 1) throw std::invalid_argument("build_fourier: k_max must be >= 1");
    if (sigma < 0) throw std::invalid_argument("build_fourier: sigma must be >= 0");
    const int n = 2 * k_max + 1;
    const int dim = n * n;
    auto idx = [&](int k, int m) { return (k + k_max) * n + (m + k_max); };

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(dim) * n);

    for (int kp = -k_max; kp <= k_max; ++kp) {
        const double arg = kp * kick_strength;
        auto jn = bessel::cyl_j_array(2 * k_max, std::abs(arg));
        // J_nu at negative argument or order flips sign for odd nu.
        auto bessel_at = [&](int nu) {
            double sign = 1.0;
            if (arg < 0 && nu % 2 != 0) sign = -sign;
            if (nu < 0) {
                if (nu % 2 != 0) sign = -sign;
                nu = -nu;
            }
            return sign * jn[static_cast<std::size_t>(nu)];
        };
        for (int mp = -k_max; mp <= k_max; ++mp) {
            const int col = idx(kp, mp);
            for (int m = -k_max; m <= k_max; ++m) {
                int k = kp + m;  // selection rule k - k' = m
                if (k < -k_max || k > k_max) continue;
                double value = bessel_at(m - mp) *
                               std::exp(-0.5 * sigma * sigma * static_cast<double>(m) * m);
                if (value != 0.0) triplets.emplace_back(idx(k, m), col, value);
            }
        }
    }

    PFOperator op;
    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.method = Method::Fourier;
    op.kick_strength = kick_strength;
    op.noise = sigma;
    op.basis_descriptor =
        "k_max " + std::to_string(k_max) + ", modes " + std::to_string(dim);
    return op;
}

PFOperator build_ulam(double kick_strength, int cells_per_axis, int n_per_cell,
                      double noise_std, std::uint64_t seed, UlamStart start) {
    if (cells_per_axis < 2) throw std::invalid_argument("build_ulam: cells_per_axis >= 2");
    if (n_per_cell < 1) throw std::invalid_argument("build_ulam: n_per_cell >= 1");
    if (noise_std < 0) throw std::invalid_argument("build_ulam: noise_std must be >= 0");
    const int m = cells_per_axis;
    const int dim = m * m;

    std::vector<Eigen::Triplet<double>> triplets;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, noise_std > 0 ? noise_std : 1.0);
    std::vector<long> counts(static_cast<std::size_t>(dim));

    for (int iq = 0; iq < m; ++iq) {
        for (int ip = 0; ip < m; ++ip) {
            const int col = iq * m + ip;
            auto rng = stream_rng(seed, static_cast<std::uint64_t>(col));
            std::fill(counts.begin(), counts.end(), 0L);
            for (int sample = 0; sample < n_per_cell; ++sample) {
                double q, p;
                if (start == UlamStart::CellCenter) {
                    q = (iq + 0.5) / m;
                    p = (ip + 0.5) / m;
                } else {
                    q = (iq + uniform(rng)) / m;
                    p = (ip + uniform(rng)) / m;
                }
                double p1 = p + kick_strength / kTwoPi * std::sin(kTwoPi * q);
                p1 -= std::floor(p1);
                double q1 = q + p1;
                if (noise_std > 0) q1 += gauss(rng);
                q1 -= std::floor(q1);
                int jq = std::min(static_cast<int>(q1 * m), m - 1);
                int jp = std::min(static_cast<int>(p1 * m), m - 1);
                ++counts[static_cast<std::size_t>(jq * m + jp)];
            }
            for (int row = 0; row < dim; ++row)
                if (counts[static_cast<std::size_t>(row)] > 0)
                    triplets.emplace_back(row, col,
                                          static_cast<double>(counts[static_cast<std::size_t>(row)]) /
                                              n_per_cell);
        }
    }

    PFOperator op;
    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.method = Method::Ulam;
    op.kick_strength = kick_strength;
    op.noise = noise_std;
    op.seed = seed;
    op.basis_descriptor = "cells " + std::to_string(m) + "x" + std::to_string(m) +
                          ", samples " + std::to_string(n_per_cell);
    return op;
}

Spectrum spectrum_of(const PFOperator& op, int leading_count) {
    Spectrum spec;
    if (op.dim() <= kDenseSpectrumCap) {
        spec = linalg::eig_full(op.dense());
    } else {
        linalg::EigenRequest request;
        const Eigen::SparseMatrix<double>* matrix = &op.matrix;
        request.action = [matrix](const Eigen::VectorXd& v) -> Eigen::VectorXd {
            return (*matrix) * v;
        };
        request.dim = op.dim();
        request.count = leading_count;
        request.tolerance = 1e-10;
        request.max_iterations = 20000;
        spec = linalg::eig_leading(request);
    }
    spec.source = method_name(op.method) + ", K=" + std::to_string(op.kick_strength) +
                  ", noise=" + std::to_string(op.noise) + ", " + op.basis_descriptor;
    return spec;
}

Complex leading_resonance(const Spectrum& spec, double unit_tol) {
    if (spec.eigenvalues.empty())
        throw std::invalid_argument("leading_resonance: empty spectrum");
    if (unit_tol <= 0 || unit_tol >= 1)
        throw std::invalid_argument("leading_resonance: unit_tol must be in (0,1)");
    constexpr double kTieEps = 1e-9;
    bool found = false;
    Complex best;
    for (const Complex& z : spec.eigenvalues) {
        if (std::abs(z) >= 1.0 - unit_tol) continue;
        if (!found) {
            best = z;
            found = true;
            continue;
        }
        double dm = std::abs(z) - std::abs(best);
        if (dm > kTieEps) best = z;
        else if (dm > -kTieEps) {
            double dr = z.real() - best.real();
            if (dr > kTieEps) best = z;
            else if (dr > -kTieEps && z.imag() >= 0 && best.imag() < 0) best = z;
        }
    }
    if (!found)
        throw NumericError("leading_resonance: no eigenvalue below the unit shell");
    return best;
}

}  // namespace otoc::pf
