// Command-line front end: correlator runs, PF spectra, phase portraits,
// regular-area estimates, K sweeps, fits and SVG plots.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "otoc/classical.hpp"
#include "otoc/csvio.hpp"
#include "otoc/fitting.hpp"
#include "otoc/pf.hpp"
#include "otoc/quantum.hpp"
#include "otoc/svg.hpp"
#include "otoc/sweep.hpp"

namespace {

using namespace otoc;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitPartial = 3;

CorrelatorSeries load_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open series csv: " + path.string());
    CorrelatorSeries series;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<double> values;
        while (std::getline(row, field, ',')) values.push_back(std::stod(field));
        if (values.size() < 6) throw std::invalid_argument("malformed series csv row");
        series.times.push_back(static_cast<int>(values[0]));
        series.o1.emplace_back(values[1], values[2]);
        series.o2.push_back(values[4]);
        series.c.push_back(values[5]);
    }
    return series;
}

svg::Figure decay_figure(const CorrelatorSeries& series,
                         const std::optional<fitting::FitResult>& fit) {
    svg::Figure figure;
    figure.title = "|O1| decay, K=" + std::to_string(series.kick_strength);
    figure.x_label = "t";
    figure.y_label = "|O1|";
    figure.log_y = true;
    svg::Series data{"|O1|", {}, "#1f4e9c", true, true, false};
    for (std::size_t i = 0; i < series.size(); ++i)
        data.points.emplace_back(series.times[i], std::abs(series.o1[i]));
    figure.series.push_back(std::move(data));
    if (fit) {
        // Dashed fitted line over the detected window.
        std::size_t a = 0;
        while (series.times[a] != fit->window_start) ++a;
        double anchor = std::abs(series.o1[a]);
        svg::Series line{"fit", {}, "#000000", true, false, true};
        for (int t = fit->window_start; t <= fit->window_end; ++t)
            line.points.emplace_back(t, anchor * std::exp(-fit->exponent * (t - fit->window_start)));
        figure.series.push_back(std::move(line));
    }
    return figure;
}

int run(int argc, char** argv) {
    CLI::App app{"Standard-map OTOC decay and Perron-Frobenius resonance laboratory"};
    app.require_subcommand(1);

    // --- otoc: one correlator series ---
    auto* cmd_otoc = app.add_subcommand("otoc", "Compute O1/O2/C for one (K, D)");
    double kick = 6.6;
    int dim = 1000, t_max = 36, dim_cap = 2000;
    bool symmetric_grid = false, evolve_position = false;
    std::string out_path = "otoc.csv";
    cmd_otoc->add_option("-K,--kick", kick, "Kick strength");
    cmd_otoc->add_option("-D,--dim", dim, "Hilbert dimension");
    cmd_otoc->add_option("-t,--t-max", t_max, "Number of map periods");
    cmd_otoc->add_option("--dim-cap", dim_cap, "Dense-evolution dimension cap");
    cmd_otoc->add_flag("--symmetric-grid", symmetric_grid, "Symmetrized momentum grid");
    cmd_otoc->add_flag("--evolve-position", evolve_position, "Use the reversed operator pair");
    cmd_otoc->add_option("-o,--output", out_path, "Output CSV path");

    // --- pf: one spectrum ---
    auto* cmd_pf = app.add_subcommand("pf", "Build one PF discretization and its spectrum");
    std::string method = "fourier";
    int k_max = 30, grid_size = 90, cells = 30, n_per_cell = 1000;
    double sigma = 0.2, smooth = 0.001, noise_std = -1.0;
    std::uint64_t seed = 1;
    cmd_pf->add_option("-K,--kick", kick, "Kick strength");
    cmd_pf->add_option("-m,--method", method, "momentum-position | fourier | ulam");
    cmd_pf->add_option("--k-max", k_max, "Fourier mode cutoff per axis");
    cmd_pf->add_option("--grid", grid_size, "Momentum-position grid points per axis");
    cmd_pf->add_option("--cells", cells, "Ulam cells per axis");
    cmd_pf->add_option("--n-per-cell", n_per_cell, "Ulam trajectories per cell");
    cmd_pf->add_option("--sigma", sigma, "Fourier noise");
    cmd_pf->add_option("--smoothing", smooth, "Momentum-position Gaussian parameter s");
    cmd_pf->add_option("--noise-std", noise_std, "Ulam noise std (<0: hbar_eff)");
    cmd_pf->add_option("--seed", seed, "Ulam RNG seed");
    cmd_pf->add_option("-o,--output", out_path, "Output CSV path");

    // --- portrait ---
    auto* cmd_portrait = app.add_subcommand("portrait", "Phase portrait point cloud");
    int n_ic = 200, n_steps = 500;
    cmd_portrait->add_option("-K,--kick", kick, "Kick strength");
    cmd_portrait->add_option("--n-ic", n_ic, "Initial conditions");
    cmd_portrait->add_option("--n-steps", n_steps, "Iterations per trajectory");
    cmd_portrait->add_option("--seed", seed, "RNG seed");
    cmd_portrait->add_option("-o,--output", out_path, "Output CSV path");

    // --- area ---
    auto* cmd_area = app.add_subcommand("area", "Regular-area estimate by the hole method");
    long n_total = 100000;
    int steps = 10000;
    std::vector<double> hole{0.0, 0.1, 0.0, 0.1};
    cmd_area->add_option("-K,--kick", kick, "Kick strength");
    cmd_area->add_option("--n-total", n_total, "Initial conditions");
    cmd_area->add_option("--steps", steps, "Absorption steps");
    cmd_area->add_option("--hole", hole, "q_min q_max p_min p_max")->expected(4);
    cmd_area->add_option("--seed", seed, "RNG seed");
    cmd_area->add_option("-o,--output", out_path, "Output CSV path");

    // --- fit ---
    auto* cmd_fit = app.add_subcommand("fit", "Fit a decay exponent to a series CSV");
    std::string series_path, fit_kind = "exponential";
    int w_start = -1, w_end = -1;
    cmd_fit->add_option("-i,--input", series_path, "Series CSV (from the otoc subcommand)")
        ->required();
    cmd_fit->add_option("--kind", fit_kind, "exponential | power-law");
    cmd_fit->add_option("--start", w_start, "Window start (default: auto-detect)");
    cmd_fit->add_option("--end", w_end, "Window end");

    // --- sweep ---
    auto* cmd_sweep = app.add_subcommand("sweep", "K sweep with caching and CSV/JSON output");
    std::string config_path;
    std::vector<double> k_override;
    cmd_sweep->add_option("-c,--config", config_path, "JSON config file");
    cmd_sweep->add_option("-K,--k-values", k_override, "Override k_values");
    std::string sweep_out = "", sweep_cache = "";
    cmd_sweep->add_option("--output-dir", sweep_out, "Override output directory");
    cmd_sweep->add_option("--cache-dir", sweep_cache, "Override cache directory");
    int sweep_dim = -1, sweep_parallelism = -1;
    cmd_sweep->add_option("-D,--dim", sweep_dim, "Override quantum dimension");
    cmd_sweep->add_option("-j,--parallelism", sweep_parallelism, "Worker pool size");

    // --- plot ---
    auto* cmd_plot = app.add_subcommand("plot", "Render CSV data as an SVG figure");
    std::string plot_kind = "decay-curve", plot_input;
    cmd_plot->add_option("--kind", plot_kind,
                         "decay-curve | gamma-vs-k | lambda-vs-k | portrait | area-vs-k");
    cmd_plot->add_option("-i,--input", plot_input, "Input CSV")->required();
    cmd_plot->add_option("-o,--output", out_path, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_otoc->parsed()) {
            MapParams params(kick, dim);
            quantum::EvolutionOptions options;
            options.grid = symmetric_grid ? MomentumGrid::Symmetric : MomentumGrid::NonNegative;
            options.evolve_position = evolve_position;
            options.dim_cap = dim_cap;
            auto series = quantum::compute_correlators(params, t_max, options);
            io::write_correlators_csv(series, out_path);
            std::cout << "wrote " << out_path << "\n";
        } else if (cmd_pf->parsed()) {
            pf::PFOperator op;
            if (method == "fourier") {
                op = pf::build_fourier(kick, k_max, sigma);
            } else if (method == "momentum-position") {
                op = pf::build_momentum_position(kick, grid_size, smooth);
            } else if (method == "ulam") {
                double noise = noise_std < 0 ? 1.0 / (2.0 * std::numbers::pi * cells) : noise_std;
                op = pf::build_ulam(kick, cells, n_per_cell, noise, seed);
            } else {
                throw std::invalid_argument("unknown method: " + method);
            }
            auto spec = pf::spectrum_of(op);
            nlohmann::json meta{{"method", pf::method_name(op.method)},
                                {"K", op.kick_strength},
                                {"noise", op.noise},
                                {"basis_descriptor", op.basis_descriptor},
                                {"seed", op.seed}};
            io::write_spectrum_csv(spec, meta.dump(), out_path);
            auto lambda1 = pf::leading_resonance(spec, 0.01);
            std::cout << "lambda1 = " << std::abs(lambda1) << "\n";
        } else if (cmd_portrait->parsed()) {
            auto cloud = classical::phase_portrait(kick, n_ic, n_steps, seed);
            io::write_portrait_csv(cloud, out_path);
            std::cout << "wrote " << out_path << "\n";
        } else if (cmd_area->parsed()) {
            classical::Rectangle rect{hole[0], hole[1], hole[2], hole[3]};
            auto estimate = classical::estimate_regular_area(kick, n_total, steps, rect, seed);
            io::write_area_csv({estimate}, out_path);
            std::cout << "A_reg = " << estimate.area << "\n";
        } else if (cmd_fit->parsed()) {
            auto series = load_series_csv(series_path);
            if (w_start < 0 || w_end < 0) {
                auto policy = fitting::WindowPolicy::for_dimension(
                    series.dim > 0 ? series.dim : 1000);
                std::tie(w_start, w_end) = fitting::detect_exponential_window(series, policy);
            }
            fitting::FitResult fit =
                fit_kind == "power-law" ? fitting::fit_power_law(series, w_start, w_end)
                                        : fitting::fit_exponential(series, w_start, w_end);
            std::cout << (fit_kind == "power-law" ? "alpha = " : "gamma = ") << fit.exponent
                      << "  window [" << fit.window_start << "," << fit.window_end
                      << "]  r2 = " << fit.r_squared << "  stderr = " << fit.stderr_exponent
                      << "\n";
        } else if (cmd_sweep->parsed()) {
            sweep::SweepConfig config;
            if (!config_path.empty()) config = sweep::load_config(config_path);
            if (!k_override.empty()) config.k_values = k_override;
            if (!sweep_out.empty()) config.output_dir = sweep_out;
            if (!sweep_cache.empty()) config.cache_dir = sweep_cache;
            if (sweep_dim > 0) config.quantum.dim = sweep_dim;
            if (sweep_parallelism > 0) config.parallelism = sweep_parallelism;
            config.validate();
            auto result = sweep::run_sweep(config);
            sweep::write_sweep_csv(result.records, config.output_dir / "sweep.csv");
            sweep::write_manifest(config, result, config.output_dir / "manifest.json");
            std::cout << "wrote " << (config.output_dir / "sweep.csv").string() << " ("
                      << result.records.size() << " rows, " << result.quantum_evolutions
                      << " quantum evolutions)\n";
            if (result.partial) return kExitPartial;
        } else if (cmd_plot->parsed()) {
            svg::Figure figure;
            if (plot_kind == "decay-curve") {
                auto series = load_series_csv(plot_input);
                std::optional<fitting::FitResult> fit;
                try {
                    auto policy = fitting::WindowPolicy::for_dimension(
                        series.dim > 0 ? series.dim : 1000);
                    auto [a, b] = fitting::detect_exponential_window(series, policy);
                    fit = fitting::fit_exponential(series, a, b);
                } catch (const std::exception&) {
                }
                figure = decay_figure(series, fit);
            } else if (plot_kind == "portrait") {
                std::ifstream in(plot_input);
                if (!in) throw std::invalid_argument("cannot open: " + plot_input);
                std::string line;
                std::getline(in, line);
                svg::Series scatter{"", {}, "#1f4e9c", false, true, false};
                while (std::getline(in, line)) {
                    std::istringstream row(line);
                    double q, p;
                    char comma;
                    if (row >> q >> comma >> p) scatter.points.emplace_back(q, p);
                }
                figure.title = "phase portrait";
                figure.x_label = "q";
                figure.y_label = "p";
                figure.series.push_back(std::move(scatter));
            } else if (plot_kind == "gamma-vs-k" || plot_kind == "lambda-vs-k" ||
                       plot_kind == "area-vs-k") {
                std::ifstream in(plot_input);
                if (!in) throw std::invalid_argument("cannot open: " + plot_input);
                std::string line;
                std::getline(in, line);  // version comment
                std::getline(in, line);  // header
                svg::Series gamma_pts{"e^{-gamma/2}", {}, "#1f4e9c", false, true, false};
                svg::Series fourier{"fourier", {}, "#c03020", true, false, false};
                svg::Series mp{"momentum-position", {}, "#000000", true, false, false};
                svg::Series area{"A_reg", {}, "#000000", true, false, false};
                svg::Series gamma_line{"gamma", {}, "#000000", true, true, false};
                while (std::getline(in, line)) {
                    std::istringstream row(line);
                    std::string field;
                    std::vector<std::string> fields;
                    while (std::getline(row, field, ',')) fields.push_back(field);
                    if (fields.size() < 11) continue;
                    double k = std::stod(fields[0]);
                    auto num = [&](int i) { return std::stod(fields[static_cast<std::size_t>(i)]); };
                    if (plot_kind == "gamma-vs-k" && std::isfinite(num(2)))
                        gamma_line.points.emplace_back(k, num(2));
                    if (plot_kind == "lambda-vs-k") {
                        if (std::isfinite(num(6))) gamma_pts.points.emplace_back(k, num(6));
                        if (std::isfinite(num(7))) fourier.points.emplace_back(k, num(7));
                        if (std::isfinite(num(8))) mp.points.emplace_back(k, num(8));
                    }
                    if (plot_kind == "area-vs-k" && std::isfinite(num(10)))
                        area.points.emplace_back(k, num(10));
                }
                figure.x_label = "K";
                if (plot_kind == "gamma-vs-k") {
                    figure.title = "decay rate vs K";
                    figure.y_label = "gamma";
                    figure.series.push_back(std::move(gamma_line));
                } else if (plot_kind == "lambda-vs-k") {
                    figure.title = "leading resonance vs K";
                    figure.y_label = "|lambda1|";
                    for (auto* s : {&mp, &fourier, &gamma_pts})
                        if (!s->points.empty()) figure.series.push_back(std::move(*s));
                } else {
                    figure.title = "regular area vs K";
                    figure.y_label = "A_reg";
                    figure.series.push_back(std::move(area));
                }
            } else {
                throw std::invalid_argument("unknown plot kind: " + plot_kind);
            }
            svg::emit(figure, out_path);
            std::cout << "wrote " << out_path << "\n";
        }
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
