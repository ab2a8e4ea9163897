#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace otoc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Thrown when a computation fails to converge or exceeds a resource cap.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg, long iterations = -1)
        : std::runtime_error(msg), iterations_(iterations) {}
    long iterations() const { return iterations_; }

private:
    long iterations_;
};

/// One quantum standard-map instance: kick strength and Hilbert dimension.
/// The effective Planck constant is always derived, never stored.
struct MapParams {
    double kick_strength = 0.0;  // K
    int dim = 2;                 // D

    MapParams(double K, int D) : kick_strength(K), dim(D) {
        if (D < 2) throw std::invalid_argument("MapParams: dimension must be >= 2");
        if (K < 0) throw std::invalid_argument("MapParams: kick strength must be >= 0");
    }

    double hbar_eff() const { return 1.0 / (2.0 * std::numbers::pi * dim); }
};

/// Momentum-grid convention for the Floquet propagator.
enum class MomentumGrid {
    NonNegative,  // j in {0..D-1}, p_j = j/D
    Symmetric,    // j in [-D/2, D/2)
};

/// Integer-time series of the correlators O1, O2 and C = -2(Re O1 - O2).
struct CorrelatorSeries {
    std::vector<int> times;
    std::vector<Complex> o1;
    std::vector<double> o2;
    std::vector<double> c;
    double kick_strength = 0.0;
    int dim = 0;

    std::size_t size() const { return times.size(); }
};

/// Eigenvalues sorted by descending modulus, tagged with their origin.
struct Spectrum {
    std::vector<Complex> eigenvalues;
    std::string source;

    void sort_by_modulus();
};

inline void Spectrum::sort_by_modulus() {
    std::sort(eigenvalues.begin(), eigenvalues.end(),
              [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
}

}  // namespace otoc
