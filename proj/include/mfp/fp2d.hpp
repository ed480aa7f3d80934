#pragma once

#include <vector>

#include "mfp/density.hpp"
#include "mfp/fpcore.hpp"

namespace mfp {

// Dimension-by-dimension 2D scheme: per-row (fixed v_j) and per-column
// (fixed w_i) Chang-Cooper coefficients, assembled into the unsplit
// right-hand side with no-flux on all four sides.
//
// A 2D problem provides, with f frozen at the current state:
//   drift_w(f) -> callable(Real w, int j)   w-component of B at (w, v_j)
//   drift_v(f) -> callable(Real v, int i)   v-component of B at (w_i, v)
//   diffusion(w, v), diffusion_dw(w, v), diffusion_dv(w, v)

template <class Problem>
InterfaceCoefficients coefficients_axis_w(const DensityField2D& f, const Problem& prob,
                                          const QuadratureRule& rule, int j) {
    auto B = prob.drift_w(f);
    double v = f.grid.axis_v.node(j);
    return compute_coefficients_frozen(
        f.grid.axis_w, [&](double w) { return B(w, j); },
        [&](double w) { return prob.diffusion(w, v); },
        [&](double w) { return prob.diffusion_dw(w, v); }, rule);
}

template <class Problem>
InterfaceCoefficients coefficients_axis_v(const DensityField2D& f, const Problem& prob,
                                          const QuadratureRule& rule, int i) {
    auto B = prob.drift_v(f);
    double w = f.grid.axis_w.node(i);
    return compute_coefficients_frozen(
        f.grid.axis_v, [&](double v) { return B(v, i); },
        [&](double v) { return prob.diffusion(w, v); },
        [&](double v) { return prob.diffusion_dv(w, v); }, rule);
}

// (F_{i+1/2,j} - F_{i-1/2,j})/dw + (F_{i,j+1/2} - F_{i,j-1/2})/dv, row-major
// like the field itself.
template <class Problem>
std::vector<double> rhs_2d(const DensityField2D& f, const Problem& prob,
                           const QuadratureRule& rule) {
    const int nw = f.n_w();
    const int nv = f.n_v();
    std::vector<double> out(static_cast<size_t>(nw) * static_cast<size_t>(nv), 0.0);

    // w-direction sweeps at fixed j
    {
        auto B = prob.drift_w(f);
        DensityField slice{f.grid.axis_w, std::vector<double>(static_cast<size_t>(nw))};
        for (int j = 0; j < nv; ++j) {
            double v = f.grid.axis_v.node(j);
            auto coeffs = compute_coefficients_frozen(
                f.grid.axis_w, [&](double w) { return B(w, j); },
                [&](double w) { return prob.diffusion(w, v); },
                [&](double w) { return prob.diffusion_dw(w, v); }, rule);
            for (int i = 0; i < nw; ++i) slice.values[static_cast<size_t>(i)] = f.at(i, j);
            auto r = rhs(slice, coeffs);
            for (int i = 0; i < nw; ++i)
                out[static_cast<size_t>(i) * static_cast<size_t>(nv) + static_cast<size_t>(j)] +=
                    r[static_cast<size_t>(i)];
        }
    }

    // v-direction sweeps at fixed i
    {
        auto B = prob.drift_v(f);
        DensityField slice{f.grid.axis_v, std::vector<double>(static_cast<size_t>(nv))};
        for (int i = 0; i < nw; ++i) {
            double w = f.grid.axis_w.node(i);
            auto coeffs = compute_coefficients_frozen(
                f.grid.axis_v, [&](double v) { return B(v, i); },
                [&](double v) { return prob.diffusion(w, v); },
                [&](double v) { return prob.diffusion_dv(w, v); }, rule);
            for (int j = 0; j < nv; ++j) slice.values[static_cast<size_t>(j)] = f.at(i, j);
            auto r = rhs(slice, coeffs);
            for (int j = 0; j < nv; ++j)
                out[static_cast<size_t>(i) * static_cast<size_t>(nv) + static_cast<size_t>(j)] +=
                    r[static_cast<size_t>(j)];
        }
    }
    return out;
}

}  // namespace mfp
