// Command-line driver: evolve | convergence | entropy | flocking | network.
// A run is described by a JSON config (sole positional argument); --out,
// --stride and --quiet override the corresponding config fields. Exit codes:
// 0 ok, 1 solver error, 2 config error.

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "mfp/config.hpp"
#include "mfp/csvio.hpp"
#include "mfp/diagnostics.hpp"
#include "mfp/flocking.hpp"
#include "mfp/fpcore.hpp"
#include "mfp/models.hpp"
#include "mfp/network.hpp"
#include "mfp/runner.hpp"

namespace {

using namespace mfp;

struct CommonArgs {
    std::string config_path;
    std::string out_override;
    int stride_override = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", args.out_override, "override output.directory");
    cmd->add_option("--stride", args.stride_override, "override output.stride");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

RunConfig load(const CommonArgs& args) {
    RunConfig cfg = parse_config_file(args.config_path);
    if (!args.out_override.empty()) cfg.out_dir = args.out_override;
    if (args.stride_override > 0) cfg.stride = args.stride_override;
    cfg.quiet = cfg.quiet || args.quiet;
    write_resolved_config(cfg);
    return cfg;
}

std::string trimmed_time(double t) {
    std::string s = format_double(t);
    return s;
}

// Gaussian bump centered on the steady-state mean, with total nodal mass
// matched to the analytic steady state carried by the truncated grid.
DensityField wealth_initial(const Grid1D& grid, double sigma2) {
    auto target = wealth_steady_state(sigma2, grid);
    double target_mass = mass(target);
    auto f = DensityField::from_function(grid, [](double w) {
        double d = w - 1.0;
        return std::exp(-d * d / (2.0 * 0.04));
    });
    double m = mass(f);
    for (auto& v : f.values) v *= target_mass / m;
    return f;
}

// Diagnostics emitted by cmd_evolve: entropy columns are measured against the
// discrete zero-flux profile of the current coefficients.
template <class Model>
int run_evolve_1d(const RunConfig& cfg, const Grid1D& grid, const Model& model,
                  const DensityField& f0, const DensityField& steady_ref) {
    CsvWriter diag(cfg.out_dir + "/diagnostics.csv",
                   {"t", "mass", "mean", "l1_err", "entropy", "dissipation"});
    std::vector<std::string> field_header = {"t"};
    for (int i = 0; i < grid.n_nodes; ++i) field_header.push_back("f" + std::to_string(i));
    std::unique_ptr<CsvWriter> fields;
    if (cfg.emit_fields) fields = std::make_unique<CsvWriter>(cfg.out_dir + "/fields.csv", field_header);

    Evolution1D<double, Model> evo(f0, model, cfg.rule, cfg.integrator);
    long step_index = 0;
    auto emit = [&](const Evolution1D<double, Model>& e) {
        if (step_index % cfg.stride != 0 && e.time() < cfg.t_end - 1e-12) return;
        const auto& f = e.state();
        auto coeffs = compute_coefficients(f, model, cfg.rule);
        auto finf = zero_flux_profile(grid, coeffs);
        auto h = relative_entropy(f, finf);
        auto i_d = discrete_dissipation(f, finf, coeffs);
        diag.row({e.time(), mass(f), first_moment(f), l1_relative_error(f, steady_ref), h.value,
                  i_d.value});
        if (fields) {
            std::vector<double> row;
            row.reserve(f.values.size() + 1);
            row.push_back(e.time());
            row.insert(row.end(), f.values.begin(), f.values.end());
            fields->row(row);
        }
    };

    evo.run_to(cfg.t_end, cfg.dt.value_or(-1.0), [&](const auto& e) {
        emit(e);
        ++step_index;
    });
    if (!cfg.quiet)
        std::cerr << "evolve: reached t = " << evo.time()
                  << (evo.saw_negative() ? " (negative values were flagged)" : "") << "\n";
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    if (cfg.model_name == "opinion") {
        Grid1D grid(cfg.w_min, cfg.w_max, cfg.n_nodes);
        OpinionModel<double> model{cfg.sigma2, cfg.freeze_drift};
        auto f0 = initial_two_bumps(grid, cfg.bump_c);
        double mb = cfg.freeze_drift.value_or(model.mean_opinion(f0));
        auto ref = opinion_steady_state(mb, cfg.sigma2, grid);
        return run_evolve_1d(cfg, grid, model, f0, ref);
    }
    if (cfg.model_name == "wealth") {
        int n = cfg.n_nodes;
        double h = cfg.wealth_w_max / n;
        Grid1D grid(h, cfg.wealth_w_max, n);
        WealthModel<double> model{cfg.sigma2};
        auto f0 = wealth_initial(grid, cfg.sigma2);
        auto ref = wealth_steady_state(cfg.sigma2, grid);
        return run_evolve_1d(cfg, grid, model, f0, ref);
    }
    throw ConfigError("evolve: model must be opinion or wealth");
}

int cmd_entropy(const RunConfig& cfg) {
    if (cfg.model_name != "opinion" || !cfg.freeze_drift)
        throw ConfigError("entropy: needs model.name=opinion with model.freeze_drift set");
    if (!(std::abs(*cfg.freeze_drift) < 1.0))
        throw ConfigError("entropy: freeze_drift must lie in (-1, 1)");

    Grid1D grid(cfg.w_min, cfg.w_max, cfg.n_nodes);
    OpinionModel<double> model{cfg.sigma2, cfg.freeze_drift};
    auto f0 = initial_two_bumps(grid, cfg.bump_c);

    // Frozen drift: coefficients and the discrete steady state are constant.
    auto coeffs = compute_coefficients(f0, model, cfg.rule);
    auto finf = zero_flux_profile(grid, coeffs);

    CsvWriter diag(cfg.out_dir + "/diagnostics.csv",
                   {"t", "entropy", "dissipation", "balance_residual", "flux_identity_dev",
                    "skipped_nodes"});

    Evolution1D<double, OpinionModel<double>> evo(f0, model, cfg.rule, cfg.integrator);
    int order = cfg.integrator == Integrator::ForwardEuler ? 1
                : cfg.integrator == Integrator::RK4        ? 4
                                                           : 2;
    long step_index = 0;
    double h_prev = relative_entropy(f0, finf).value;
    double i_prev = discrete_dissipation(f0, finf, coeffs).value;
    double last_dt = 0.0;
    auto emit = [&](const Evolution1D<double, OpinionModel<double>>& e, double residual) {
        auto h = relative_entropy(e.state(), finf);
        auto i_d = discrete_dissipation(e.state(), finf, coeffs);
        auto dev = flux_identity_check(e.state(), finf, coeffs);
        diag.row({e.time(), h.value, i_d.value, residual, dev.max_abs_deviation,
                  static_cast<double>(h.skipped_nodes)});
    };
    emit(evo, 0.0);
    while (evo.time() < cfg.t_end - 1e-12) {
        double dt = cfg.dt.value_or(evo.auto_dt());
        if (evo.time() + dt > cfg.t_end) dt = cfg.t_end - evo.time();
        DensityField before = evo.state();
        double i_mid = 0.0;
        if (order >= 4) {
            Evolution1D<double, OpinionModel<double>> half(before, model, cfg.rule,
                                                           cfg.integrator);
            half.step(dt / 2.0);
            i_mid = discrete_dissipation(half.state(), finf, coeffs).value;
        }
        evo.step(dt);
        double h_now = relative_entropy(evo.state(), finf).value;
        double i_now = discrete_dissipation(evo.state(), finf, coeffs).value;
        double residual = entropy_balance_residual(h_prev, h_now, dt, i_prev, i_now, order, i_mid);
        ++step_index;
        if (step_index % cfg.stride == 0 || evo.time() >= cfg.t_end - 1e-12)
            emit(evo, residual);
        h_prev = h_now;
        i_prev = i_now;
        last_dt = dt;
    }
    (void)last_dt;
    if (!cfg.quiet) std::cerr << "entropy: reached t = " << evo.time() << "\n";
    return 0;
}

int cmd_convergence(const RunConfig& cfg) {
    ConvergenceSettings s;
    s.sigma2 = cfg.sigma2;
    s.bump_sharpness = cfg.bump_c;
    s.grids = cfg.conv_grids;
    s.times = cfg.conv_times;
    s.gauss_points = cfg.conv_gauss_points;
    auto table = run_convergence_study(s);

    CsvWriter out(cfg.out_dir + "/orders.csv", {"T", "quadrature", "N_pair", "observed_order"});
    for (const auto& e : table) {
        out.raw_row({format_double(e.t), e.quadrature, e.pair_label, format_double(e.order)});
        if (e.stagnated)
            std::cerr << "convergence: stagnation at T=" << e.t << " " << e.quadrature << " "
                      << e.pair_label << " (order " << e.order << ")\n";
    }
    if (!cfg.quiet) std::cerr << "convergence: wrote " << table.size() << " rows\n";
    return 0;
}

void write_matrix_snapshot(const std::string& path, const std::vector<std::string>& col_header,
                           const std::vector<double>& row_labels,
                           const std::function<double(int, int)>& value, int rows, int cols) {
    std::vector<std::string> header = {"row"};
    header.insert(header.end(), col_header.begin(), col_header.end());
    CsvWriter out(path, header);
    for (int r = 0; r < rows; ++r) {
        std::vector<double> row;
        row.reserve(static_cast<size_t>(cols) + 1);
        row.push_back(row_labels[static_cast<size_t>(r)]);
        for (int c = 0; c < cols; ++c) row.push_back(value(r, c));
        out.row(row);
    }
}

int cmd_flocking(const RunConfig& cfg) {
    Grid2D grid{Grid1D(cfg.x_min, cfg.x_max, cfg.nx), Grid1D(cfg.w_min, cfg.w_max, cfg.n_nodes)};
    FlockingSim sim;
    sim.model = CuckerSmaleModel{cfg.cs_gamma, cfg.cs_diffusion};
    sim.rule = cfg.rule;
    sim.cfl = cfg.cfl;
    sim.f = flocking_initial(grid, cfg.cs_x_spread, cfg.cs_w_cluster, cfg.cs_w_spread);

    std::vector<double> snaps = cfg.snapshot_times;
    if (snaps.empty()) snaps = {0.0, 0.6, 1.2, 3.0, 6.0, 9.0};

    std::vector<std::string> wcols;
    for (int j = 0; j < grid.axis_v.n_nodes; ++j) wcols.push_back("w" + std::to_string(j));
    std::vector<double> xlabels;
    for (int i = 0; i < grid.axis_w.n_nodes; ++i) xlabels.push_back(grid.axis_w.node(i));

    CsvWriter diag(cfg.out_dir + "/diagnostics.csv",
                   {"t", "mass", "w_mean", "w_variance", "x_sup_deviation"});
    auto emit_snapshot = [&](double t_label) {
        write_matrix_snapshot(cfg.out_dir + "/snapshot_t=" + trimmed_time(t_label) + ".csv",
                              wcols, xlabels, [&](int r, int c) { return sim.f.at(r, c); },
                              grid.axis_w.n_nodes, grid.axis_v.n_nodes);
    };
    auto emit_diag = [&]() {
        auto obs = flocking_observables(sim.f);
        diag.row({sim.t, obs.mass, obs.w_mean, obs.w_variance, obs.x_sup_deviation});
    };

    size_t next_snap = 0;
    long step_index = 0;
    emit_diag();
    if (!snaps.empty() && snaps[0] <= 0.0) {
        emit_snapshot(snaps[0]);
        ++next_snap;
    }
    double t_end = std::max(cfg.t_end, snaps.back());
    while (sim.t < t_end - 1e-12) {
        double cap = t_end - sim.t;
        if (next_snap < snaps.size()) cap = std::min(cap, snaps[next_snap] - sim.t);
        sim.step(cap);
        ++step_index;
        if (step_index % cfg.stride == 0) emit_diag();
        if (next_snap < snaps.size() && sim.t >= snaps[next_snap] - 1e-12) {
            emit_snapshot(snaps[next_snap]);
            ++next_snap;
        }
    }
    if (!cfg.quiet) std::cerr << "flocking: reached t = " << sim.t << "\n";
    return 0;
}

int cmd_network(const RunConfig& cfg) {
    Grid1D wg(cfg.w_min, cfg.w_max, cfg.n_nodes);
    NetworkSim sim;
    sim.params = cfg.net;
    sim.params.sigma2 = cfg.sigma2;
    sim.rule = cfg.rule;
    sim.f = network_initial(sim.params, wg, cfg.net_gamma0, cfg.net_shift);

    std::vector<double> snaps = cfg.snapshot_times;
    if (snaps.empty()) snaps = {0.0, 10.0, 50.0, 100.0};

    std::vector<std::string> wcols;
    for (int j = 0; j < wg.n_nodes; ++j) wcols.push_back("w" + std::to_string(j));
    std::vector<double> xlabels;
    for (int x = 0; x < sim.f.c_levels; ++x) xlabels.push_back(x);

    CsvWriter diag(cfg.out_dir + "/diagnostics.csv", {"t", "mass", "gamma"});
    auto emit_snapshot = [&](double t_label) {
        write_matrix_snapshot(
            cfg.out_dir + "/snapshot_t=" + trimmed_time(t_label) + ".csv", wcols, xlabels,
            [&](int r, int c) { return std::log(sim.f.at(r, c) + cfg.log_eps); },
            sim.f.c_levels, wg.n_nodes);
    };
    auto emit_diag = [&]() {
        double m = 0.0;
        for (double v : sim.f.values) m += v;
        diag.row({sim.t, wg.dw * m, gamma_mean_connectivity(sim.f)});
    };

    size_t next_snap = 0;
    long step_index = 0;
    emit_diag();
    if (!snaps.empty() && snaps[0] <= 0.0) {
        emit_snapshot(snaps[0]);
        ++next_snap;
    }
    double t_end = std::max(cfg.t_end, snaps.back());
    while (sim.t < t_end - 1e-12) {
        double cap = t_end - sim.t;
        if (next_snap < snaps.size()) cap = std::min(cap, snaps[next_snap] - sim.t);
        sim.step(cap);
        ++step_index;
        if (step_index % cfg.stride == 0) emit_diag();
        if (next_snap < snaps.size() && sim.t >= snaps[next_snap] - 1e-12) {
            emit_snapshot(snaps[next_snap]);
            ++next_snap;
        }
    }
    if (!cfg.quiet) std::cerr << "network: reached t = " << sim.t << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving solvers for mean-field Fokker-Planck models"};
    app.require_subcommand(1);

    CommonArgs evolve_args, conv_args, entropy_args, flock_args, net_args;
    add_common(app.add_subcommand("evolve", "time evolution of a 1D model"), evolve_args);
    add_common(app.add_subcommand("convergence", "steady-state convergence orders"), conv_args);
    add_common(app.add_subcommand("entropy", "entropy dissipation certification"), entropy_args);
    add_common(app.add_subcommand("flocking", "Cucker-Smale phase-space run"), flock_args);
    add_common(app.add_subcommand("network", "opinions over a connection network"), net_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("evolve")) return cmd_evolve(load(evolve_args));
        if (app.got_subcommand("convergence")) return cmd_convergence(load(conv_args));
        if (app.got_subcommand("entropy")) return cmd_entropy(load(entropy_args));
        if (app.got_subcommand("flocking")) return cmd_flocking(load(flock_args));
        if (app.got_subcommand("network")) return cmd_network(load(net_args));
    } catch (const mfp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
