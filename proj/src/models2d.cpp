#include "mfp/models2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfp {

double CuckerSmaleModel::kernel(double x, double y) const {
    double d = x - y;
    return std::pow(1.0 + d * d, -gamma);
}

CsAffineDrift cs_drift_affine(const DensityField2D& f, const CuckerSmaleModel& model) {
    const Grid1D& xg = f.grid.axis_w;
    const Grid1D& wg = f.grid.axis_v;
    const int nx = xg.n_nodes;
    const int nw = wg.n_nodes;
    const double cell = xg.dw * wg.dw;

    // Per-x-column velocity moments.
    std::vector<double> rho(static_cast<size_t>(nx), 0.0);
    std::vector<double> mom(static_cast<size_t>(nx), 0.0);
    for (int k = 0; k < nx; ++k) {
        double r = 0.0, q = 0.0;
        for (int l = 0; l < nw; ++l) {
            double v = f.at(k, l);
            r += v;
            q += wg.node(l) * v;
        }
        rho[static_cast<size_t>(k)] = r;
        mom[static_cast<size_t>(k)] = q;
    }

    CsAffineDrift drift;
    drift.a.resize(static_cast<size_t>(nx));
    drift.b.resize(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i) {
        double a = 0.0, b = 0.0;
        double xi = xg.node(i);
        for (int k = 0; k < nx; ++k) {
            double h = model.kernel(xi, xg.node(k));
            a += h * rho[static_cast<size_t>(k)];
            b += h * mom[static_cast<size_t>(k)];
        }
        drift.a[static_cast<size_t>(i)] = cell * a;
        drift.b[static_cast<size_t>(i)] = cell * b;
    }
    return drift;
}

std::vector<double> cs_drift(const DensityField2D& f, const CuckerSmaleModel& model) {
    const Grid1D& wg = f.grid.axis_v;
    const int nx = f.grid.axis_w.n_nodes;
    const int nw = wg.n_nodes;
    auto drift = cs_drift_affine(f, model);
    std::vector<double> out(static_cast<size_t>(nx) * static_cast<size_t>(nw));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nw; ++j)
            out[static_cast<size_t>(i) * static_cast<size_t>(nw) + static_cast<size_t>(j)] =
                drift.a[static_cast<size_t>(i)] * wg.node(j) - drift.b[static_cast<size_t>(i)];
    return out;
}

NetworkDrift::NetworkDrift(const NetworkState& f, const NetworkParams& p)
    : params_(p), grid_(f.opinion_grid) {
    const int n = grid_.n_nodes;
    prefix_g_.assign(static_cast<size_t>(n) + 1, 0.0);
    prefix_wg_.assign(static_cast<size_t>(n) + 1, 0.0);
    for (int l = 0; l < n; ++l) {
        double g = 0.0;
        for (int x = 0; x < f.c_levels; ++x) g += f.at(x, l);
        prefix_g_[static_cast<size_t>(l) + 1] = prefix_g_[static_cast<size_t>(l)] + g;
        prefix_wg_[static_cast<size_t>(l) + 1] =
            prefix_wg_[static_cast<size_t>(l)] + grid_.node(l) * g;
    }
}

double NetworkDrift::eval(int x, double w) const {
    const double delta = params_.confidence(x);
    if (delta <= 0.0) return 0.0;
    // Window of nodes with |w - v_l| <= delta, boundary ties included.
    const double tie = 1e-12;
    int lo = static_cast<int>(std::ceil((w - delta - grid_.w_min) / grid_.dw - tie));
    int hi = static_cast<int>(std::floor((w + delta - grid_.w_min) / grid_.dw + tie));
    lo = std::max(lo, 0);
    hi = std::min(hi, grid_.n_nodes - 1);
    if (lo > hi) return 0.0;
    double s0 = prefix_g_[static_cast<size_t>(hi) + 1] - prefix_g_[static_cast<size_t>(lo)];
    double s1 = prefix_wg_[static_cast<size_t>(hi) + 1] - prefix_wg_[static_cast<size_t>(lo)];
    return grid_.dw * (w * s0 - s1);
}

std::vector<double> network_drift(const NetworkState& f, const NetworkParams& p) {
    NetworkDrift drift(f, p);
    const int n = f.opinion_grid.n_nodes;
    std::vector<double> out(static_cast<size_t>(f.c_levels) * static_cast<size_t>(n));
    for (int x = 0; x < f.c_levels; ++x)
        for (int j = 0; j < n; ++j)
            out[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                drift.eval(x, f.opinion_grid.node(j));
    return out;
}

namespace {

struct LRates {
    std::vector<double> removal;  // rate of x -> x-1 (disabled at x = 0)
    std::vector<double> addition;  // rate of x -> x+1 (disabled at x = c_max)
};

LRates l_rates(const NetworkParams& p, int c_levels, double gamma_t) {
    if (!(gamma_t > 0.0)) throw std::domain_error("network_L: gamma must be positive");
    const double cr = 2.0 * p.V_r / (gamma_t + p.beta);
    const double ca = 2.0 * p.V_a / (gamma_t + p.alpha);
    LRates r;
    r.removal.resize(static_cast<size_t>(c_levels));
    r.addition.resize(static_cast<size_t>(c_levels));
    for (int x = 0; x < c_levels; ++x) {
        r.removal[static_cast<size_t>(x)] = (x == 0) ? 0.0 : cr * (x + p.beta);
        r.addition[static_cast<size_t>(x)] = (x == c_levels - 1) ? 0.0 : ca * (x + p.alpha);
    }
    return r;
}

}  // namespace

std::vector<double> network_L(const NetworkState& f, const NetworkParams& p, double gamma_t) {
    const int n = f.opinion_grid.n_nodes;
    auto rates = l_rates(p, f.c_levels, gamma_t);
    std::vector<double> out(static_cast<size_t>(f.c_levels) * static_cast<size_t>(n));
    for (int x = 0; x < f.c_levels; ++x) {
        for (int j = 0; j < n; ++j) {
            double gain = 0.0;
            if (x + 1 < f.c_levels) gain += rates.removal[static_cast<size_t>(x) + 1] * f.at(x + 1, j);
            if (x - 1 >= 0) gain += rates.addition[static_cast<size_t>(x) - 1] * f.at(x - 1, j);
            double loss =
                (rates.removal[static_cast<size_t>(x)] + rates.addition[static_cast<size_t>(x)]) *
                f.at(x, j);
            // L is the operator as written on the left-hand side: -(gain - loss).
            out[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                loss - gain;
        }
    }
    return out;
}

double gamma_mean_connectivity(const NetworkState& f) {
    double total = 0.0;
    for (int x = 0; x < f.c_levels; ++x) {
        double col = 0.0;
        for (int j = 0; j < f.opinion_grid.n_nodes; ++j) col += f.at(x, j);
        total += static_cast<double>(x) * col;
    }
    return f.opinion_grid.dw * total;
}

double network_L_rate_bound(const NetworkParams& p, double gamma_t) {
    auto rates = l_rates(p, p.c_max + 1, gamma_t);
    double worst = 0.0;
    for (size_t x = 0; x < rates.removal.size(); ++x)
        worst = std::max(worst, rates.removal[x] + rates.addition[x]);
    return worst;
}

}  // namespace mfp
