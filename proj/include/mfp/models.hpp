#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mfp/density.hpp"
#include "mfp/grid.hpp"

namespace mfp {

// ---------------------------------------------------------------------------
// Opinion model on [-1,1]: B[f](w) = w - u with u the current first moment,
// D(w) = (sigma^2/2)(1-w^2)^2. With freeze_u set, u is held fixed (the
// prototype equation used for the entropy analysis).
// ---------------------------------------------------------------------------
template <class Real>
struct OpinionModel {
    Real sigma2{};
    std::optional<Real> freeze_u{};

    Real diffusion(Real w) const {
        Real q = Real(1) - w * w;
        return Real(0.5) * sigma2 * q * q;
    }
    Real diffusion_prime(Real w) const { return Real(-2) * sigma2 * w * (Real(1) - w * w); }

    // Discrete first moment dw * sum w_i f_i (unit-mass normalization
    // convention; the initial data are normalized to nodal mass one).
    Real mean_opinion(const BasicDensityField<Real>& f) const {
        Real mass = Real(0), mom = Real(0);
        for (int i = 0; i < f.grid.n_nodes; ++i) {
            mass += f.values[static_cast<size_t>(i)];
            mom += f.grid.node(i) * f.values[static_cast<size_t>(i)];
        }
        if (!(mass * f.grid.dw > Real(0)))
            throw std::domain_error("opinion drift: zero or negative mass");
        return f.grid.dw * mom;
    }

    auto frozen_drift(const BasicDensityField<Real>& f) const {
        Real u = freeze_u ? *freeze_u : mean_opinion(f);
        return [u](Real w) { return w - u; };
    }
};

// Nodal evaluation of the opinion steady state for mean m_bar,
//   f_inf(w) = C0 (1+w)^(-2+m/(2 s2)) (1-w)^(-2-m/(2 s2))
//              exp(-(1 - m w)/(s2 (1-w^2))),
// normalized to unit nodal mass; the boundary nodes take the limit value 0.
// The (1 +- w) powers carry m/(2 sigma^2): that exponent is what makes the
// continuous flux (w - m + D') f + D f' vanish identically for D =
// (sigma^2/2)(1-w^2)^2, which the tests verify by finite differences.
template <class Real>
BasicDensityField<Real> opinion_steady_state(Real m_bar, Real sigma2,
                                             const BasicGrid1D<Real>& grid) {
    if (!(std::abs(m_bar) < Real(1)))
        throw std::invalid_argument("opinion_steady_state: need |m_bar| < 1");
    BasicDensityField<Real> f(grid);
    const Real pw = m_bar / (Real(2) * sigma2);
    Real sum = Real(0);
    for (int i = 0; i < grid.n_nodes; ++i) {
        Real w = grid.node(i);
        Real q = Real(1) - w * w;
        Real v = Real(0);
        if (q > Real(0)) {
            Real logv = (Real(-2) + pw) * std::log(Real(1) + w) +
                        (Real(-2) - pw) * std::log(Real(1) - w) -
                        (Real(1) - m_bar * w) / (sigma2 * q);
            v = std::exp(logv);
        }
        f.values[static_cast<size_t>(i)] = v;
        sum += v;
    }
    Real mass = grid.dw * sum;
    for (auto& v : f.values) v /= mass;
    return f;
}

// Two Gaussian bumps at -1/2 and +1/2, normalized to unit nodal mass.
template <class Real>
BasicDensityField<Real> initial_two_bumps(const BasicGrid1D<Real>& grid, Real c) {
    BasicDensityField<Real> f(grid);
    Real sum = Real(0);
    for (int i = 0; i < grid.n_nodes; ++i) {
        Real w = grid.node(i);
        Real a = w + Real(0.5);
        Real b = w - Real(0.5);
        Real v = std::exp(-c * a * a) + std::exp(-c * b * b);
        f.values[static_cast<size_t>(i)] = v;
        sum += v;
    }
    Real mass = grid.dw * sum;
    for (auto& v : f.values) v /= mass;
    return f;
}

// ---------------------------------------------------------------------------
// Homogeneous wealth model on a truncated (0, w_max] grid: D = (sigma^2/2) w^2
// and the mean-field drift frozen at its conserved continuum value,
// B(w) = w - 1 (the steady state is normalized to first moment one). The
// Pareto exponent is mu = 1 + 2/sigma^2.
// ---------------------------------------------------------------------------
template <class Real>
struct WealthModel {
    Real sigma2{};
    Real mean_value = Real(1);

    Real mu() const { return Real(1) + Real(2) / sigma2; }
    Real diffusion(Real w) const { return Real(0.5) * sigma2 * w * w; }
    Real diffusion_prime(Real w) const { return sigma2 * w; }

    auto frozen_drift(const BasicDensityField<Real>&) const {
        Real m = mean_value;
        return [m](Real w) { return w - m; };
    }
};

// Inverse-gamma steady state f_inf(w) = (mu-1)^mu / (Gamma(mu) w^(1+mu))
// exp(-(mu-1)/w), evaluated nodally without renormalization (its continuum
// mass and first moment both equal one; the truncated grid carries slightly
// less).
template <class Real>
BasicDensityField<Real> wealth_steady_state(Real sigma2, const BasicGrid1D<Real>& grid) {
    if (!(grid.w_min > Real(0)))
        throw std::invalid_argument("wealth_steady_state: grid must exclude w = 0");
    const Real mu = Real(1) + Real(2) / sigma2;
    const Real log_pref = mu * std::log(mu - Real(1)) - std::lgamma(mu);
    BasicDensityField<Real> f(grid);
    for (int i = 0; i < grid.n_nodes; ++i) {
        Real w = grid.node(i);
        f.values[static_cast<size_t>(i)] =
            std::exp(log_pref - (Real(1) + mu) * std::log(w) - (mu - Real(1)) / w);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Constant-diffusion model with no drift; used as a sanity problem by tests
// and the convergence harness.
// ---------------------------------------------------------------------------
template <class Real>
struct DiffusionModel {
    Real d0 = Real(1);

    Real diffusion(Real) const { return d0; }
    Real diffusion_prime(Real) const { return Real(0); }
    auto frozen_drift(const BasicDensityField<Real>&) const {
        return [](Real) { return Real(0); };
    }
};

}  // namespace mfp
