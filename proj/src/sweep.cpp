#include "otoc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "otoc/csvio.hpp"
#include "otoc/pf.hpp"
#include "otoc/quantum.hpp"
#include "otoc/rng.hpp"

namespace otoc::sweep {

namespace {

using nlohmann::json;

constexpr const char* kCsvVersionLine = "# otoclab sweep csv v1";
constexpr double kUnitTol = 0.01;

std::string grid_name(MomentumGrid grid) {
    return grid == MomentumGrid::Symmetric ? "symmetric" : "nonneg";
}

double guard_scale(double kick_strength) {
    // Chaotic-regime Lyapunov estimate ln(K/2) for the standard map.
    return kick_strength > 2.0 ? std::log(kick_strength / 2.0) : 1.0;
}

SweepRecord process_one(const SweepConfig& config, double kick, std::uint64_t k_seed,
                        const io::SeriesCache& cache, std::atomic<long>& evolutions) {
    SweepRecord record;
    record.kick_strength = kick;
    record.seed = k_seed;

    // Correlator series: load-or-compute with write-to-temp-then-rename.
    MapParams params(kick, config.quantum.dim);
    std::string key = io::series_cache_key(kick, config.quantum.dim, config.quantum.t_max,
                                           grid_name(config.quantum.grid));
    std::optional<CorrelatorSeries> series = cache.load(key);
    if (!series) {
        quantum::EvolutionOptions options;
        options.grid = config.quantum.grid;
        options.evolve_position = config.quantum.evolve_position;
        options.dim_cap = config.quantum.dim_cap;
        series = quantum::compute_correlators(params, config.quantum.t_max, options);
        ++evolutions;
        cache.store(key, *series);
    }

    fitting::WindowPolicy policy = config.fit;
    if (config.k_aware_guard)
        policy = fitting::WindowPolicy::for_dimension(config.quantum.dim, guard_scale(kick));
    try {
        auto [a, b] = fitting::detect_exponential_window(*series, policy);
        auto fit = fitting::fit_exponential(*series, a, b);
        record.gamma = fit.exponent;
        record.gamma_stderr = fit.stderr_exponent;
        record.window_start = a;
        record.window_end = b;
        record.exp_neg_half_gamma = std::exp(-0.5 * fit.exponent);
    } catch (const std::exception&) {
        record.status = "no-window";
    }

    auto resonance = [&](const pf::PFOperator& op) {
        return std::abs(pf::leading_resonance(pf::spectrum_of(op), kUnitTol));
    };
    try {
        if (config.fourier.enabled)
            record.lambda1_fourier =
                resonance(pf::build_fourier(kick, config.fourier.k_max, config.fourier.sigma));
        if (config.momentum_position.enabled)
            record.lambda1_momentum_position = resonance(pf::build_momentum_position(
                kick, config.momentum_position.grid_size, config.momentum_position.s));
        if (config.ulam.enabled) {
            double noise = config.ulam.noise_std;
            if (noise < 0)
                noise = 1.0 / (2.0 * std::numbers::pi * config.ulam.cells_per_axis);
            record.lambda1_ulam = resonance(pf::build_ulam(kick, config.ulam.cells_per_axis,
                                                           config.ulam.n_per_cell, noise, k_seed));
        }
    } catch (const NumericError&) {
        record.status = record.status == "ok" ? "no-resonance" : record.status;
    }

    if (config.area.enabled) {
        auto estimate = classical::estimate_regular_area(kick, config.area.n_total,
                                                         config.area.steps, config.area.hole,
                                                         k_seed);
        record.a_reg = estimate.area;
    }
    return record;
}

}  // namespace

void SweepConfig::validate() const {
    if (k_values.empty()) throw std::invalid_argument("sweep config: k_values must be non-empty");
    for (double k : k_values)
        if (k < 0) throw std::invalid_argument("sweep config: k_values must be >= 0");
    if (parallelism < 1) throw std::invalid_argument("sweep config: parallelism must be >= 1");
    if (quantum.dim < 2 || quantum.t_max < 1)
        throw std::invalid_argument("sweep config: invalid quantum block");
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);
    io::SeriesCache cache{config.cache_dir};

    SweepResult result;
    result.records.resize(config.k_values.size());
    std::atomic<long> evolutions{0};
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= config.k_values.size()) return;
            std::uint64_t k_seed = mix_seed(config.seed, i);
            try {
                result.records[i] =
                    process_one(config, config.k_values[i], k_seed, cache, evolutions);
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                result.records[i].kick_strength = config.k_values[i];
                result.records[i].seed = k_seed;
                result.records[i].status = std::string("error:") + e.what();
            }
        }
    };

    int threads = std::min<int>(config.parallelism, static_cast<int>(config.k_values.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.quantum_evolutions = evolutions.load();
    for (const auto& r : result.records)
        if (r.status != "ok") result.partial = true;
    return result;
}

void write_sweep_csv(const std::vector<SweepRecord>& records,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.precision(17);
    out << kCsvVersionLine << '\n';
    out << "K,status,gamma,gamma_stderr,window_start,window_end,exp_neg_half_gamma,"
           "lambda1_fourier,lambda1_momentum_position,lambda1_ulam,a_reg,seed\n";
    for (const auto& r : records)
        out << r.kick_strength << ',' << r.status << ',' << r.gamma << ',' << r.gamma_stderr
            << ',' << r.window_start << ',' << r.window_end << ',' << r.exp_neg_half_gamma
            << ',' << r.lambda1_fourier << ',' << r.lambda1_momentum_position << ','
            << r.lambda1_ulam << ',' << r.a_reg << ',' << r.seed << '\n';
}

void write_manifest(const SweepConfig& config, const SweepResult& result,
                    const std::filesystem::path& path) {
    json manifest;
    manifest["version"] = 1;
    manifest["k_values"] = config.k_values;
    manifest["quantum"] = {{"dim", config.quantum.dim},
                           {"t_max", config.quantum.t_max},
                           {"grid", grid_name(config.quantum.grid)},
                           {"evolve_position", config.quantum.evolve_position}};
    manifest["fourier"] = {{"enabled", config.fourier.enabled},
                           {"k_max", config.fourier.k_max},
                           {"sigma", config.fourier.sigma}};
    manifest["momentum_position"] = {{"enabled", config.momentum_position.enabled},
                                     {"grid_size", config.momentum_position.grid_size},
                                     {"s", config.momentum_position.s}};
    manifest["ulam"] = {{"enabled", config.ulam.enabled},
                        {"cells_per_axis", config.ulam.cells_per_axis},
                        {"n_per_cell", config.ulam.n_per_cell},
                        {"noise_std", config.ulam.noise_std}};
    manifest["area"] = {{"enabled", config.area.enabled},
                        {"n_total", config.area.n_total},
                        {"steps", config.area.steps},
                        {"hole", {config.area.hole.q_min, config.area.hole.q_max,
                                  config.area.hole.p_min, config.area.hole.p_max}}};
    manifest["seed"] = config.seed;
    manifest["parallelism"] = config.parallelism;
    manifest["quantum_evolutions"] = result.quantum_evolutions;
    manifest["partial"] = result.partial;
    json rows = json::array();
    for (const auto& r : result.records)
        rows.push_back({{"K", r.kick_strength}, {"status", r.status}, {"seed", r.seed}});
    manifest["rows"] = rows;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << manifest.dump(2) << '\n';
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path.string());
    json j = json::parse(in);

    SweepConfig config;
    if (j.contains("k_values")) {
        if (j["k_values"].is_array()) {
            config.k_values = j["k_values"].get<std::vector<double>>();
        } else {
            double start = j["k_values"].at("start").get<double>();
            double stop = j["k_values"].at("stop").get<double>();
            double step = j["k_values"].at("step").get<double>();
            if (step <= 0) throw std::invalid_argument("sweep config: step must be > 0");
            for (double k = start; k <= stop + 1e-12; k += step) config.k_values.push_back(k);
        }
    }
    if (j.contains("quantum")) {
        const auto& q = j["quantum"];
        config.quantum.dim = q.value("dim", config.quantum.dim);
        config.quantum.t_max = q.value("t_max", config.quantum.t_max);
        config.quantum.evolve_position =
            q.value("evolve_position", config.quantum.evolve_position);
        config.quantum.dim_cap = q.value("dim_cap", config.quantum.dim_cap);
        if (q.value("grid", std::string("nonneg")) == "symmetric")
            config.quantum.grid = MomentumGrid::Symmetric;
    }
    if (j.contains("fourier")) {
        const auto& f = j["fourier"];
        config.fourier.enabled = f.value("enabled", config.fourier.enabled);
        config.fourier.k_max = f.value("k_max", config.fourier.k_max);
        config.fourier.sigma = f.value("sigma", config.fourier.sigma);
    }
    if (j.contains("momentum_position")) {
        const auto& m = j["momentum_position"];
        config.momentum_position.enabled = m.value("enabled", config.momentum_position.enabled);
        config.momentum_position.grid_size =
            m.value("grid_size", config.momentum_position.grid_size);
        config.momentum_position.s = m.value("s", config.momentum_position.s);
    }
    if (j.contains("ulam")) {
        const auto& u = j["ulam"];
        config.ulam.enabled = u.value("enabled", config.ulam.enabled);
        config.ulam.cells_per_axis = u.value("cells_per_axis", config.ulam.cells_per_axis);
        config.ulam.n_per_cell = u.value("n_per_cell", config.ulam.n_per_cell);
        config.ulam.noise_std = u.value("noise_std", config.ulam.noise_std);
    }
    if (j.contains("area")) {
        const auto& a = j["area"];
        config.area.enabled = a.value("enabled", config.area.enabled);
        config.area.n_total = a.value("n_total", config.area.n_total);
        config.area.steps = a.value("steps", config.area.steps);
        if (a.contains("hole")) {
            auto h = a["hole"].get<std::vector<double>>();
            if (h.size() != 4) throw std::invalid_argument("sweep config: hole needs 4 values");
            config.area.hole = {h[0], h[1], h[2], h[3]};
        }
    }
    if (j.contains("fit")) {
        const auto& f = j["fit"];
        config.fit.min_length = f.value("min_length", config.fit.min_length);
        config.fit.t_min_hint = f.value("t_min_hint", config.fit.t_min_hint);
        config.fit.saturation_margin =
            f.value("saturation_margin", config.fit.saturation_margin);
        config.fit.r2_floor = f.value("r2_floor", config.fit.r2_floor);
        config.k_aware_guard = f.value("k_aware_guard", config.k_aware_guard);
    }
    config.output_dir = j.value("output_dir", config.output_dir.string());
    config.cache_dir = j.value("cache_dir", config.cache_dir.string());
    config.parallelism = j.value("parallelism", config.parallelism);
    config.seed = j.value("seed", config.seed);
    config.validate();
    return config;
}

}  // namespace otoc::sweep
