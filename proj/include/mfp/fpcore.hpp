#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfp/density.hpp"
#include "mfp/grid.hpp"
#include "mfp/quadrature.hpp"

namespace mfp {

// Per-interface data for the generalized Chang-Cooper flux. All arrays have
// one entry per interior interface i+1/2, i = 0..N-1. Relations kept in sync:
// c_tilde = (d_face/dw) * lambda and delta = delta_formula(lambda).
template <class Real>
struct BasicInterfaceCoefficients {
    std::vector<Real> lambda;
    std::vector<Real> delta;
    std::vector<Real> c_tilde;
    std::vector<Real> d_face;
    Real dw{};

    int interfaces() const { return static_cast<int>(lambda.size()); }
};

using InterfaceCoefficients = BasicInterfaceCoefficients<double>;

// Convex weight delta(lambda) = 1/lambda + 1/(1 - exp(lambda)).
// Total on finite inputs: series branch around 0, asymptotic branches past
// +-500 where exp would overflow. Lies in (0,1), delta(0) = 1/2,
// delta(l) + delta(-l) = 1.
template <class Real>
Real delta_formula(Real lam) {
    if (std::abs(lam) <= Real(1e-6))
        return Real(0.5) - lam / Real(12) + lam * lam * lam / Real(720);
    if (lam > Real(500)) return Real(1) / lam;
    if (lam < Real(-500)) return Real(1) + Real(1) / lam;
    return Real(1) / lam - Real(1) / std::expm1(lam);
}

// alpha(lambda) = lambda / (exp(lambda) - 1), the semi-implicit stencil
// weight; alpha(0) = 1. Note alpha(lambda)*exp(lambda) = alpha(-lambda), which
// is how the exp products are formed without overflow.
template <class Real>
Real growth_alpha(Real lam) {
    if (std::abs(lam) <= Real(1e-6)) return Real(1) - lam / Real(2) + lam * lam / Real(12);
    if (lam > Real(500)) return lam * std::exp(-lam);
    if (lam < Real(-500)) return -lam;
    return lam / std::expm1(lam);
}

// Interface coefficients from a frozen drift B(w): lambda by cell quadrature
// of (B + D')/D, then C~ = (D_face/dw) lambda, delta = delta_formula(lambda).
// Diffusion must be positive at every sampled point; a violating sample is
// reported with its interface index.
template <class Real, class Drift, class Diff, class DiffPrime>
BasicInterfaceCoefficients<Real> compute_coefficients_frozen(const BasicGrid1D<Real>& grid,
                                                             Drift&& B, Diff&& D, DiffPrime&& Dp,
                                                             const QuadratureRule& rule) {
    const int n = grid.interfaces();
    BasicInterfaceCoefficients<Real> c;
    c.dw = grid.dw;
    c.lambda.resize(n);
    c.delta.resize(n);
    c.c_tilde.resize(n);
    c.d_face.resize(n);

    auto ratio = [&](Real w) -> Real {
        Real d = D(w);
        if (!(d > Real(0))) throw SingularDiffusionError(static_cast<double>(w));
        return (B(w) + Dp(w)) / d;
    };

    for (int i = 0; i < n; ++i) {
        Real a = grid.node(i);
        Real b = grid.node(i + 1);
        Real lam;
        try {
            lam = lambda_weight(rule, ratio, a, b);
        } catch (const QuadratureSampleError& e) {
            throw QuadratureSampleError(
                std::string(e.what()) + " (interface " + std::to_string(i) + "+1/2)",
                e.abscissa());
        }
        Real dmid = D(grid.interface_midpoint(i));
        c.lambda[i] = lam;
        c.delta[i] = delta_formula(lam);
        c.d_face[i] = dmid;
        c.c_tilde[i] = dmid * lam / grid.dw;
    }
    return c;
}

// Model-facing overload: freezes B[f] at the current state. Models provide
// frozen_drift(f) -> callable(w), diffusion(w), diffusion_prime(w).
template <class Real, class Model>
BasicInterfaceCoefficients<Real> compute_coefficients(const BasicDensityField<Real>& f,
                                                      const Model& model,
                                                      const QuadratureRule& rule) {
    auto B = model.frozen_drift(f);
    return compute_coefficients_frozen(
        f.grid, B, [&](Real w) { return model.diffusion(w); },
        [&](Real w) { return model.diffusion_prime(w); }, rule);
}

// Numerical flux F_{i+1/2} = C~ [(1-delta) f_{i+1} + delta f_i] + D (f_{i+1}-f_i)/dw.
template <class Real>
Real flux(const BasicDensityField<Real>& f, const BasicInterfaceCoefficients<Real>& c, int i) {
    const Real fi = f.values[static_cast<size_t>(i)];
    const Real fip1 = f.values[static_cast<size_t>(i) + 1];
    const Real tilde = (Real(1) - c.delta[i]) * fip1 + c.delta[i] * fi;
    return c.c_tilde[i] * tilde + c.d_face[i] * (fip1 - fi) / c.dw;
}

// Conservative right-hand side (F_{i+1/2} - F_{i-1/2})/dw with no-flux ends.
// Telescopes: the nodal sum vanishes identically.
template <class Real>
std::vector<Real> rhs(const BasicDensityField<Real>& f, const BasicInterfaceCoefficients<Real>& c) {
    const int n_nodes = f.grid.n_nodes;
    const int n_if = c.interfaces();
    if (n_if != f.grid.interfaces())
        throw std::invalid_argument("rhs: coefficients do not match the field's grid");
    std::vector<Real> out(static_cast<size_t>(n_nodes));
    Real left = Real(0);  // F_{-1/2}
    for (int i = 0; i < n_if; ++i) {
        Real right = flux(f, c, i);
        out[static_cast<size_t>(i)] = (right - left) / c.dw;
        left = right;
    }
    out[static_cast<size_t>(n_nodes - 1)] = (Real(0) - left) / c.dw;  // F_{N+1/2} = 0
    return out;
}

// Discrete steady ratio f_{i+1}/f_i = exp(-lambda_{i+1/2}); underflows to zero
// for very steep interfaces.
template <class Real>
Real steady_ratio(const BasicInterfaceCoefficients<Real>& c, int i) {
    if (i < 0 || i >= c.interfaces())
        throw std::out_of_range("steady_ratio: interface index out of range");
    return std::exp(-c.lambda[i]);
}

// The zero-flux profile the coefficients encode: f_{i+1} = f_i exp(-lambda),
// accumulated in log space and normalized to unit nodal mass dw * sum = 1.
template <class Real>
BasicDensityField<Real> zero_flux_profile(const BasicGrid1D<Real>& grid,
                                          const BasicInterfaceCoefficients<Real>& c) {
    const int n = grid.n_nodes;
    std::vector<Real> logf(static_cast<size_t>(n));
    logf[0] = Real(0);
    for (int i = 0; i < grid.interfaces(); ++i) logf[static_cast<size_t>(i) + 1] = logf[static_cast<size_t>(i)] - c.lambda[i];
    Real peak = *std::max_element(logf.begin(), logf.end());
    BasicDensityField<Real> f(grid);
    Real sum = Real(0);
    for (int i = 0; i < n; ++i) {
        f.values[static_cast<size_t>(i)] = std::exp(logf[static_cast<size_t>(i)] - peak);
        sum += f.values[static_cast<size_t>(i)];
    }
    Real mass = grid.dw * sum;
    for (auto& v : f.values) v /= mass;
    return f;
}

}  // namespace mfp
