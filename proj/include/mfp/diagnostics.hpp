#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mfp/density.hpp"
#include "mfp/fpcore.hpp"

namespace mfp {

// Nodal-sum mass dw * sum_i f_i (the convention every normalization in this
// library uses). Kahan-compensated so per-step drift measurements are not
// polluted by summation order.
template <class Real>
Real mass(const BasicDensityField<Real>& f) {
    Real sum = Real(0), comp = Real(0);
    for (Real v : f.values) {
        Real y = v - comp;
        Real t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return f.grid.dw * sum;
}

inline double mass2d(const DensityField2D& f) {
    double sum = 0.0, comp = 0.0;
    for (double v : f.values) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return f.grid.axis_w.dw * f.grid.axis_v.dw * sum;
}

// First moment dw * sum_i w_i f_i.
template <class Real>
Real first_moment(const BasicDensityField<Real>& f) {
    Real sum = Real(0);
    for (int i = 0; i < f.grid.n_nodes; ++i)
        sum += f.grid.node(i) * f.values[static_cast<size_t>(i)];
    return f.grid.dw * sum;
}

// Relative L1 error sum |f_i - g_i| / sum |g_i|.
template <class Real>
Real l1_relative_error(const BasicDensityField<Real>& f, const BasicDensityField<Real>& ref) {
    if (f.values.size() != ref.values.size())
        throw std::invalid_argument("l1_relative_error: size mismatch");
    Real num = Real(0), den = Real(0);
    for (size_t i = 0; i < f.values.size(); ++i) {
        num += std::abs(f.values[i] - ref.values[i]);
        den += std::abs(ref.values[i]);
    }
    if (!(den > Real(0))) throw std::domain_error("l1_relative_error: zero reference");
    return num / den;
}

// Observed convergence order log(err_coarse/err_fine)/log(refinement).
inline double observed_order(double err_coarse, double err_fine, double refinement) {
    if (!(err_coarse > 0.0) || !(err_fine > 0.0))
        throw std::domain_error("observed_order: errors must be positive");
    if (!(refinement > 1.0)) throw std::domain_error("observed_order: refinement must exceed 1");
    return std::log(err_coarse / err_fine) / std::log(refinement);
}

// Steady-state interface mean (a b / (b - a)) log(b/a); equal arguments
// return the common value. Symmetric, homogeneous of degree one, and always
// between min and max of the arguments.
template <class Real>
Real log_mean_steady(Real a, Real b) {
    if (!(a > Real(0)) || !(b > Real(0)))
        throw std::domain_error("log_mean_steady: arguments must be positive");
    if (a == b) return a;
    Real x = (b - a) / a;  // b = a (1 + x)
    if (std::abs(x) < Real(1e-8)) return a * (Real(1) + x / Real(2));
    return a * (Real(1) + x) * std::log1p(x) / x;
}

// Nodes where the steady state has underflowed to (effectively) zero are
// excluded from the entropy sums; the count is reported alongside the value.
inline constexpr double kEntropySupportFloor = 1e-300;

template <class Real>
struct EntropyResult {
    Real value{};
    int skipped_nodes = 0;
};

// Discrete relative entropy H = dw * sum f_i log(f_i / finf_i). Nodes where
// both densities vanish are skipped; a positive f over vanished finf is a
// support mismatch.
template <class Real>
EntropyResult<Real> relative_entropy(const BasicDensityField<Real>& f,
                                     const BasicDensityField<Real>& f_inf) {
    if (f.values.size() != f_inf.values.size())
        throw std::invalid_argument("relative_entropy: size mismatch");
    Real peak = Real(0);
    for (Real v : f.values) peak = std::max(peak, std::abs(v));
    EntropyResult<Real> out;
    Real sum = Real(0);
    for (size_t i = 0; i < f.values.size(); ++i) {
        Real fi = f.values[i];
        Real gi = f_inf.values[i];
        if (gi < Real(kEntropySupportFloor)) {
            if (fi > Real(1e-12) * peak)
                throw std::domain_error("relative_entropy: f positive where f_inf vanishes");
            ++out.skipped_nodes;
            continue;
        }
        if (fi <= Real(0)) {
            // f_i log f_i -> 0; zero nodes contribute nothing.
            if (fi < Real(0)) throw std::domain_error("relative_entropy: negative density");
            continue;
        }
        sum += fi * std::log(fi / gi);
    }
    out.value = f.grid.dw * sum;
    return out;
}

// Discrete dissipation
//   I = (1/dw) sum_interfaces [log r_{i+1} - log r_i] (r_{i+1} - r_i)
//       logmean(finf_i, finf_{i+1}) D_{i+1/2},      r = f / finf.
// Every summand is nonnegative since (x - y) log(x/y) >= 0; the 1/dw scale is
// the one for which dH/dt = -I holds exactly (summation by parts of the
// conservative form). Interfaces touching skipped nodes are dropped.
template <class Real>
EntropyResult<Real> discrete_dissipation(const BasicDensityField<Real>& f,
                                         const BasicDensityField<Real>& f_inf,
                                         const BasicInterfaceCoefficients<Real>& coeffs) {
    const int n_if = coeffs.interfaces();
    if (static_cast<int>(f.values.size()) != n_if + 1 || f.values.size() != f_inf.values.size())
        throw std::invalid_argument("discrete_dissipation: size mismatch");
    EntropyResult<Real> out;
    Real sum = Real(0);
    for (int i = 0; i < n_if; ++i) {
        Real g0 = f_inf.values[static_cast<size_t>(i)];
        Real g1 = f_inf.values[static_cast<size_t>(i) + 1];
        Real f0 = f.values[static_cast<size_t>(i)];
        Real f1 = f.values[static_cast<size_t>(i) + 1];
        if (g0 < Real(kEntropySupportFloor) || g1 < Real(kEntropySupportFloor) ||
            f0 <= Real(0) || f1 <= Real(0)) {
            ++out.skipped_nodes;
            continue;
        }
        Real r0 = f0 / g0;
        Real r1 = f1 / g1;
        sum += (std::log(r1) - std::log(r0)) * (r1 - r0) * log_mean_steady(g0, g1) *
               coeffs.d_face[i];
    }
    out.value = sum / coeffs.dw;
    return out;
}

// Gradient-flow form of the flux when B is time-independent:
//   F_{i+1/2} = (D_{i+1/2}/dw) logmean(finf_i, finf_{i+1}) (r_{i+1} - r_i).
// Identical to the direct flux whenever finf is the zero-flux profile of the
// same coefficients.
template <class Real>
Real flux_log_mean_form(const BasicDensityField<Real>& f, const BasicDensityField<Real>& f_inf,
                        const BasicInterfaceCoefficients<Real>& coeffs, int i) {
    Real g0 = f_inf.values[static_cast<size_t>(i)];
    Real g1 = f_inf.values[static_cast<size_t>(i) + 1];
    Real r0 = f.values[static_cast<size_t>(i)] / g0;
    Real r1 = f.values[static_cast<size_t>(i) + 1] / g1;
    return coeffs.d_face[i] / coeffs.dw * log_mean_steady(g0, g1) * (r1 - r0);
}

// Largest absolute deviation between the direct flux and its log-mean form
// over all interfaces whose steady values are representable, together with
// the flux scale it should be compared against.
template <class Real>
struct FluxIdentityDeviation {
    Real max_abs_deviation{};
    Real flux_scale{};
};

template <class Real>
FluxIdentityDeviation<Real> flux_identity_check(const BasicDensityField<Real>& f,
                                                const BasicDensityField<Real>& f_inf,
                                                const BasicInterfaceCoefficients<Real>& coeffs) {
    FluxIdentityDeviation<Real> out{Real(0), Real(0)};
    for (int i = 0; i < coeffs.interfaces(); ++i) {
        Real g0 = f_inf.values[static_cast<size_t>(i)];
        Real g1 = f_inf.values[static_cast<size_t>(i) + 1];
        if (g0 < Real(kEntropySupportFloor) || g1 < Real(kEntropySupportFloor)) continue;
        Real direct = flux(f, coeffs, i);
        Real logform = flux_log_mean_form(f, f_inf, coeffs, i);
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(direct - logform));
        out.flux_scale = std::max({out.flux_scale, std::abs(direct), std::abs(logform)});
    }
    return out;
}

// One full diagnostics row as emitted to diagnostics.csv.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double mean = 0.0;
    double l1_err = 0.0;
    double entropy = 0.0;
    double dissipation = 0.0;
};

}  // namespace mfp
