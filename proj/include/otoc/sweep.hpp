#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "otoc/classical.hpp"
#include "otoc/fitting.hpp"
#include "otoc/types.hpp"

namespace otoc::sweep {

struct QuantumConfig {
    int dim = 1000;
    int t_max = 36;
    MomentumGrid grid = MomentumGrid::NonNegative;
    bool evolve_position = false;
    int dim_cap = 2000;
};

struct FourierConfig {
    bool enabled = true;
    int k_max = 30;
    double sigma = 0.2;
};

struct MomentumPositionConfig {
    bool enabled = true;
    int grid_size = 90;
    double s = 0.001;
};

struct UlamConfig {
    bool enabled = false;
    int cells_per_axis = 30;
    int n_per_cell = 1000;
    double noise_std = -1.0;  // < 0: use hbar_eff of the cell grid
};

struct AreaConfig {
    bool enabled = false;
    long n_total = 100000;
    int steps = 10000;
    classical::Rectangle hole;
};

struct SweepConfig {
    std::vector<double> k_values;
    QuantumConfig quantum;
    FourierConfig fourier;
    MomentumPositionConfig momentum_position;
    UlamConfig ulam;
    AreaConfig area;
    fitting::WindowPolicy fit;
    bool k_aware_guard = true;  // derive the window guard from ln(K/2)
    std::filesystem::path output_dir = "out";
    std::filesystem::path cache_dir = "cache";
    int parallelism = 1;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SweepRecord {
    double kick_strength = 0.0;
    std::string status = "ok";  // or no-window / no-resonance / error:<msg>
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double gamma_stderr = std::numeric_limits<double>::quiet_NaN();
    int window_start = -1;
    int window_end = -1;
    double exp_neg_half_gamma = std::numeric_limits<double>::quiet_NaN();
    double lambda1_fourier = std::numeric_limits<double>::quiet_NaN();
    double lambda1_momentum_position = std::numeric_limits<double>::quiet_NaN();
    double lambda1_ulam = std::numeric_limits<double>::quiet_NaN();
    double a_reg = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    long quantum_evolutions = 0;  // instrumentation: cache-miss count
    bool partial = false;
};

/// Per-K pipeline: cached correlator series -> gamma fit -> enabled PF
/// spectra -> optional regular-area estimate. Failures mark the row's
/// status and never abort the sweep.
SweepResult run_sweep(const SweepConfig& config);

void write_sweep_csv(const std::vector<SweepRecord>& records,
                     const std::filesystem::path& path);
void write_manifest(const SweepConfig& config, const SweepResult& result,
                    const std::filesystem::path& path);

/// Reads a JSON config file; missing keys fall back to defaults.
SweepConfig load_config(const std::filesystem::path& path);

}  // namespace otoc::sweep
