#include "mfp/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfp/fpcore.hpp"
#include "mfp/integrators.hpp"

namespace mfp {

namespace {

void apply_l_half(NetworkState& f, const NetworkParams& params, double dt_half) {
    double gamma_t = gamma_mean_connectivity(f);
    auto l = network_L(f, params, gamma_t);
    for (size_t k = 0; k < f.values.size(); ++k) f.values[k] -= dt_half * l[k];
}

}  // namespace

void NetworkSim::step(double dt_max) {
    const Grid1D& wg = f.opinion_grid;
    const int n = wg.n_nodes;
    const int levels = f.c_levels;

    // Drift and per-column coefficients from the current opinion marginal.
    NetworkDrift drift(f, params);
    std::vector<InterfaceCoefficients> coeffs;
    coeffs.reserve(static_cast<size_t>(levels));
    double fp_bound = std::numeric_limits<double>::infinity();
    for (int x = 0; x < levels; ++x) {
        coeffs.push_back(compute_coefficients_frozen(
            wg, [&](double w) { return drift.eval(x, w); },
            [&](double w) {
                double q = 1.0 - w * w;
                return 0.5 * params.sigma2 * q * q;
            },
            [&](double w) { return -2.0 * params.sigma2 * w * (1.0 - w * w); }, rule));
        fp_bound = std::min(fp_bound, cfl_semi_implicit(coeffs.back()));
    }

    double gamma_t = gamma_mean_connectivity(f);
    if (!(gamma_t > 0.0)) throw std::runtime_error("network: nonpositive mean connectivity");
    double l_bound = 1.0 / network_L_rate_bound(params, gamma_t);

    double dt = std::min(dt_max, safety * std::min(fp_bound, l_bound));
    if (!(dt > 0.0)) throw std::runtime_error("network: vanishing time step");

    apply_l_half(f, params, dt / 2.0);

    DensityField row{wg, std::vector<double>(static_cast<size_t>(n))};
    for (int x = 0; x < levels; ++x) {
        for (int j = 0; j < n; ++j) row.values[static_cast<size_t>(j)] = f.at(x, j);
        auto sys = assemble_semi_implicit(row, coeffs[static_cast<size_t>(x)], dt);
        auto next = solve_tridiagonal(sys);
        for (int j = 0; j < n; ++j) f.at(x, j) = next[static_cast<size_t>(j)];
    }

    apply_l_half(f, params, dt / 2.0);

    t += dt;
    last_dt = dt;
}

NetworkState network_initial(const NetworkParams& params, const Grid1D& opinion_grid,
                             double gamma0, int shift) {
    const int levels = params.c_max + 1;
    if (shift <= 0 || shift >= levels)
        throw std::invalid_argument("network_initial: shift outside 1..c_max");

    // Base power law q(x) ~ (x+1)^-3 on {0..c_max}.
    std::vector<double> q(static_cast<size_t>(levels));
    double qs = 0.0;
    for (int x = 0; x < levels; ++x) {
        q[static_cast<size_t>(x)] = std::pow(static_cast<double>(x + 1), -3.0);
        qs += q[static_cast<size_t>(x)];
    }
    double q_mean = 0.0;
    for (int x = 0; x < levels; ++x) q_mean += x * q[static_cast<size_t>(x)] / qs;

    // Shifted copy living on {shift..c_max}.
    std::vector<double> q2(static_cast<size_t>(levels), 0.0);
    double q2s = 0.0;
    for (int x = shift; x < levels; ++x) {
        q2[static_cast<size_t>(x)] = std::pow(static_cast<double>(x - shift + 1), -3.0);
        q2s += q2[static_cast<size_t>(x)];
    }
    double q2_mean = 0.0;
    for (int x = shift; x < levels; ++x) q2_mean += x * q2[static_cast<size_t>(x)] / q2s;

    if (!(q_mean < gamma0 && gamma0 < q2_mean))
        throw std::invalid_argument("network_initial: gamma0 not bracketed by the mixture");
    double theta = (gamma0 - q_mean) / (q2_mean - q_mean);

    NetworkState f(params.c_max, opinion_grid);
    const int n = opinion_grid.n_nodes;
    for (int x = 0; x < levels; ++x) {
        double col_mass =
            (1.0 - theta) * q[static_cast<size_t>(x)] / qs + theta * q2[static_cast<size_t>(x)] / q2s;
        double nodal = col_mass / (opinion_grid.dw * static_cast<double>(n));
        for (int j = 0; j < n; ++j) f.at(x, j) = nodal;
    }
    return f;
}

}  // namespace mfp
