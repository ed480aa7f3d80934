#include "mfp/flocking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mfp/fpcore.hpp"
#include "mfp/integrators.hpp"
#include "mfp/transport.hpp"

namespace mfp {

namespace {

// Row-local model adapter: affine drift, constant diffusion.
struct RowModel {
    double a, b, d0;
    double diffusion(double) const { return d0; }
    double diffusion_prime(double) const { return 0.0; }
    auto frozen_drift(const DensityField&) const {
        double aa = a, bb = b;
        return [aa, bb](double w) { return aa * w - bb; };
    }
};

}  // namespace

double FlockingSim::step_size() const {
    const Grid1D& xg = f.grid.axis_w;
    const Grid1D& wg = f.grid.axis_v;
    double wmax = std::max(std::abs(wg.w_min), std::abs(wg.w_max));
    return cfl * xg.dw / wmax;
}

void FlockingSim::fp_half(double dt_half) {
    const Grid1D& wg = f.grid.axis_v;
    const int nx = f.n_w();
    const int nw = f.n_v();
    auto drift = cs_drift_affine(f, model);

    DensityField row{wg, std::vector<double>(static_cast<size_t>(nw))};
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nw; ++j) row.values[static_cast<size_t>(j)] = f.at(i, j);
        RowModel rm{drift.a[static_cast<size_t>(i)], drift.b[static_cast<size_t>(i)],
                    model.diffusion_const};
        auto coeffs = compute_coefficients(row, rm, rule);
        if (dt_half >= cfl_semi_implicit(coeffs))
            throw std::runtime_error("flocking: dt violates the semi-implicit positivity bound");
        auto sys = assemble_semi_implicit(row, coeffs, dt_half);
        auto next = solve_tridiagonal(sys);
        for (int j = 0; j < nw; ++j) f.at(i, j) = next[static_cast<size_t>(j)];
    }
}

void FlockingSim::transport_full(double dt) {
    const Grid1D& xg = f.grid.axis_w;
    const Grid1D& wg = f.grid.axis_v;
    const int nx = f.n_w();
    const int nw = f.n_v();

    std::vector<double> u(static_cast<size_t>(nx)), u1(static_cast<size_t>(nx));
    for (int j = 0; j < nw; ++j) {
        double speed = wg.node(j);
        for (int i = 0; i < nx; ++i) u[static_cast<size_t>(i)] = f.at(i, j);
        auto k1 = weno3_flux_derivative(u, speed, xg.dw);
        for (int i = 0; i < nx; ++i)
            u1[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] + dt * k1[static_cast<size_t>(i)];
        auto k2 = weno3_flux_derivative(u1, speed, xg.dw);
        for (int i = 0; i < nx; ++i)
            f.at(i, j) = 0.5 * (u[static_cast<size_t>(i)] + u1[static_cast<size_t>(i)] +
                                dt * k2[static_cast<size_t>(i)]);
    }
}

void FlockingSim::step(double dt_cap) {
    double dt = std::min(step_size(), dt_cap);
    if (!(dt > 0.0)) throw std::runtime_error("flocking: vanishing time step");
    fp_half(dt / 2.0);
    transport_full(dt);
    fp_half(dt / 2.0);
    t += dt;
}

DensityField2D flocking_initial(const Grid2D& grid, double x_spread, double w_cluster,
                                double w_spread) {
    DensityField2D f(grid);
    const int nx = f.n_w();
    const int nw = f.n_v();
    double sum = 0.0;
    for (int i = 0; i < nx; ++i) {
        double x = grid.axis_w.node(i);
        double gx = std::exp(-x * x / (2.0 * x_spread * x_spread));
        for (int j = 0; j < nw; ++j) {
            double w = grid.axis_v.node(j);
            double dm = w - w_cluster;
            double dp = w + w_cluster;
            double gw = std::exp(-dm * dm / (2.0 * w_spread * w_spread)) +
                        std::exp(-dp * dp / (2.0 * w_spread * w_spread));
            f.at(i, j) = gx * gw;
            sum += gx * gw;
        }
    }
    double mass = grid.axis_w.dw * grid.axis_v.dw * sum;
    for (auto& v : f.values) v /= mass;
    return f;
}

FlockingObservables flocking_observables(const DensityField2D& f) {
    const Grid1D& xg = f.grid.axis_w;
    const Grid1D& wg = f.grid.axis_v;
    const int nx = f.n_w();
    const int nw = f.n_v();
    const double cell = xg.dw * wg.dw;

    FlockingObservables obs;
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    std::vector<double> x_marginal(static_cast<size_t>(nx), 0.0);
    for (int i = 0; i < nx; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < nw; ++j) {
            double v = f.at(i, j);
            double w = wg.node(j);
            rowsum += v;
            m0 += v;
            m1 += w * v;
            m2 += w * w * v;
        }
        x_marginal[static_cast<size_t>(i)] = wg.dw * rowsum;
    }
    obs.mass = cell * m0;
    obs.w_mean = cell * m1 / obs.mass;
    obs.w_variance = cell * m2 / obs.mass - obs.w_mean * obs.w_mean;

    double avg = 0.0;
    for (double v : x_marginal) avg += v;
    avg /= static_cast<double>(nx);
    double dev = 0.0;
    for (double v : x_marginal) dev = std::max(dev, std::abs(v - avg));
    obs.x_sup_deviation = dev;
    return obs;
}

}  // namespace mfp
