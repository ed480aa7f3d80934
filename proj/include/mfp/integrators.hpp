#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mfp/fpcore.hpp"

namespace mfp {

// Explicit positivity bound dt <= dw^2 / (2 (M dw + D)) with
// M = max |C~_{i+1/2}|, D = max D_{i+1/2}. Unconstrained (infinity) when both
// vanish.
template <class Real>
Real cfl_explicit(const BasicInterfaceCoefficients<Real>& c) {
    if (c.interfaces() == 0) throw std::invalid_argument("cfl_explicit: empty coefficients");
    Real m = Real(0), d = Real(0);
    for (int i = 0; i < c.interfaces(); ++i) {
        m = std::max(m, std::abs(c.c_tilde[i]));
        d = std::max(d, c.d_face[i]);
    }
    Real denom = Real(2) * (m * c.dw + d);
    if (denom == Real(0)) return std::numeric_limits<Real>::infinity();
    return c.dw * c.dw / denom;
}

// Semi-implicit bound dt < dw / (2 M), M = max |C~_{i+1/2}|.
template <class Real>
Real cfl_semi_implicit(const BasicInterfaceCoefficients<Real>& c) {
    if (c.interfaces() == 0) throw std::invalid_argument("cfl_semi_implicit: empty coefficients");
    Real m = Real(0);
    for (int i = 0; i < c.interfaces(); ++i) m = std::max(m, std::abs(c.c_tilde[i]));
    if (m == Real(0)) return std::numeric_limits<Real>::infinity();
    return c.dw / (Real(2) * m);
}

template <class Real>
struct StepResult {
    BasicDensityField<Real> f;
    bool negative = false;  // diagnostic: some nodal value came out negative
};

namespace detail {

template <class Real>
bool any_negative(const std::vector<Real>& v) {
    for (Real x : v)
        if (x < Real(0)) return true;
    return false;
}

}  // namespace detail

// Forward Euler f^{n+1} = f^n + dt rhs(f^n). Mass is conserved exactly;
// nonnegativity holds under the cfl_explicit bound.
template <class Real, class Model>
StepResult<Real> step_forward_euler(const BasicDensityField<Real>& f, const Model& model,
                                    const QuadratureRule& rule, Real dt) {
    auto c = compute_coefficients(f, model, rule);
    auto r = rhs(f, c);
    StepResult<Real> out{f, false};
    for (size_t i = 0; i < r.size(); ++i) out.f.values[i] += dt * r[i];
    out.negative = detail::any_negative(out.f.values);
    return out;
}

// Heun / SSP-RK2: convex combination of two Euler steps, so the Euler
// positivity bound carries over. Coefficients are recomputed at each stage
// (B[f] is nonlinear through its moments).
template <class Real, class Model>
StepResult<Real> step_ssprk2(const BasicDensityField<Real>& f, const Model& model,
                             const QuadratureRule& rule, Real dt) {
    auto s1 = step_forward_euler(f, model, rule, dt);
    auto s2 = step_forward_euler(s1.f, model, rule, dt);
    StepResult<Real> out{f, false};
    for (size_t i = 0; i < out.f.values.size(); ++i)
        out.f.values[i] = (f.values[i] + s2.f.values[i]) / Real(2);
    out.negative = detail::any_negative(out.f.values);
    return out;
}

// Classical RK4, stages conservative, coefficients recomputed per stage. Not
// SSP; the negative flag is the guardrail when dt rides the parabolic bound.
template <class Real, class Model>
StepResult<Real> step_rk4(const BasicDensityField<Real>& f, const Model& model,
                          const QuadratureRule& rule, Real dt) {
    const size_t n = f.values.size();
    auto stage_rhs = [&](const BasicDensityField<Real>& state) {
        auto c = compute_coefficients(state, model, rule);
        return rhs(state, c);
    };
    auto k1 = stage_rhs(f);
    BasicDensityField<Real> tmp = f;
    for (size_t i = 0; i < n; ++i) tmp.values[i] = f.values[i] + dt / Real(2) * k1[i];
    auto k2 = stage_rhs(tmp);
    for (size_t i = 0; i < n; ++i) tmp.values[i] = f.values[i] + dt / Real(2) * k2[i];
    auto k3 = stage_rhs(tmp);
    for (size_t i = 0; i < n; ++i) tmp.values[i] = f.values[i] + dt * k3[i];
    auto k4 = stage_rhs(tmp);

    StepResult<Real> out{f, false};
    for (size_t i = 0; i < n; ++i)
        out.f.values[i] =
            f.values[i] + dt / Real(6) * (k1[i] + Real(2) * k2[i] + Real(2) * k3[i] + k4[i]);
    out.negative = detail::any_negative(out.f.values);
    return out;
}

// Tridiagonal system A f^{n+1} = f^n for the semi-implicit step. lower/upper
// carry P_i and Q_i (the off-diagonals of A are -P_i, -Q_i).
template <class Real>
struct TridiagonalSystem {
    std::vector<Real> lower;  // P_i, i = 0..N (P_0 unused)
    std::vector<Real> diag;   // R_i
    std::vector<Real> upper;  // Q_i (Q_N unused)
    std::vector<Real> rhs;    // f^n
};

// Assembles R, Q, P with coefficients frozen at f^n:
//   R_i = 1 + (dt/dw^2)[D_{i+1/2} a(l_{i+1/2}) + D_{i-1/2} a(-l_{i-1/2})]
//   Q_i = (dt/dw^2) D_{i+1/2} a(-l_{i+1/2})
//   P_i = (dt/dw^2) D_{i-1/2} a(l_{i-1/2})
// where a = growth_alpha and a(l) exp(l) was rewritten as a(-l). Boundary rows
// drop the out-of-domain terms (no-flux), making every column of A sum to one.
template <class Real>
TridiagonalSystem<Real> assemble_semi_implicit(const BasicDensityField<Real>& f,
                                               const BasicInterfaceCoefficients<Real>& c,
                                               Real dt) {
    const int n = f.grid.n_nodes;
    const Real mu = dt / (c.dw * c.dw);
    TridiagonalSystem<Real> sys;
    sys.lower.assign(static_cast<size_t>(n), Real(0));
    sys.diag.assign(static_cast<size_t>(n), Real(1));
    sys.upper.assign(static_cast<size_t>(n), Real(0));
    sys.rhs = f.values;

    for (int i = 0; i < n; ++i) {
        Real r = Real(1);
        if (i < n - 1) {
            Real lam = c.lambda[i];
            r += mu * c.d_face[i] * growth_alpha(lam);
            sys.upper[static_cast<size_t>(i)] = mu * c.d_face[i] * growth_alpha(-lam);
        }
        if (i > 0) {
            Real lam = c.lambda[i - 1];
            r += mu * c.d_face[i - 1] * growth_alpha(-lam);
            sys.lower[static_cast<size_t>(i)] = mu * c.d_face[i - 1] * growth_alpha(lam);
        }
        sys.diag[static_cast<size_t>(i)] = r;
    }
    return sys;
}

// Thomas algorithm. The assembled systems are strictly diagonally dominant
// under the semi-implicit time-step bound, so pivots stay away from zero.
template <class Real>
std::vector<Real> solve_tridiagonal(const TridiagonalSystem<Real>& sys) {
    const size_t n = sys.diag.size();
    if (n == 0 || sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: inconsistent system");
    std::vector<Real> cp(n), x(n);
    Real piv = sys.diag[0];
    if (piv == Real(0) || !std::isfinite(static_cast<double>(piv)))
        throw std::runtime_error("solve_tridiagonal: zero pivot");
    cp[0] = -sys.upper[0] / piv;
    x[0] = sys.rhs[0] / piv;
    for (size_t i = 1; i < n; ++i) {
        // sub-diagonal of A is -lower[i]
        piv = sys.diag[i] + sys.lower[i] * cp[i - 1];
        if (piv == Real(0) || !std::isfinite(static_cast<double>(piv)))
            throw std::runtime_error("solve_tridiagonal: zero pivot");
        cp[i] = -sys.upper[i] / piv;
        x[i] = (sys.rhs[i] + sys.lower[i] * x[i - 1]) / piv;
    }
    for (size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
}

// Semi-implicit step: coefficients at f^n, density at f^{n+1}, one
// tridiagonal solve. Positive and mass-conserving under cfl_semi_implicit.
template <class Real, class Model>
StepResult<Real> step_semi_implicit(const BasicDensityField<Real>& f, const Model& model,
                                    const QuadratureRule& rule, Real dt) {
    auto c = compute_coefficients(f, model, rule);
    auto sys = assemble_semi_implicit(f, c, dt);
    StepResult<Real> out{f, false};
    out.f.values = solve_tridiagonal(sys);
    out.negative = detail::any_negative(out.f.values);
    return out;
}

}  // namespace mfp
