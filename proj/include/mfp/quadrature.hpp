#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mfp {

// Cell quadratures for the per-interface weight integral. Every rule samples
// strictly interior points of [a,b]: the integrand (B+D')/D may blow up at the
// cell endpoints when D vanishes on the domain boundary, so closed rules are
// out of the question.
enum class QuadratureKind { Midpoint, OpenNewtonCotes4, OpenNewtonCotes6, GaussLegendre };

struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::GaussLegendre;
    int gauss_points = 8;  // only used for GaussLegendre
};

// A sampled integrand value came out non-finite (or a diffusion sample was
// nonpositive). Carries the offending abscissa so callers can attach context.
class QuadratureSampleError : public std::runtime_error {
  public:
    QuadratureSampleError(const std::string& what, double where)
        : std::runtime_error(what), abscissa_(where) {}
    double abscissa() const { return abscissa_; }

  private:
    double abscissa_;
};

class SingularDiffusionError : public QuadratureSampleError {
  public:
    SingularDiffusionError(double where)
        : QuadratureSampleError("nonpositive diffusion at w = " + std::to_string(where), where) {}
};

namespace detail {

// Legendre P_n and P_n' by the three-term recurrence.
template <class Real>
std::pair<Real, Real> legendre_with_derivative(int n, Real x) {
    Real pm1 = Real(1), p = x;
    for (int k = 2; k <= n; ++k) {
        Real pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / Real(k);
        pm1 = p;
        p = pk;
    }
    Real dp = Real(n) * (x * p - pm1) / (x * x - Real(1));
    return {p, dp};
}

}  // namespace detail

// Gauss-Legendre abscissae/weights on [-1,1], computed once per point count by
// Newton iteration on the Legendre roots and cached.
template <class Real>
const std::vector<std::pair<Real, Real>>& gauss_nodes(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_nodes: point count outside 1..64");
    static std::map<int, std::vector<std::pair<Real, Real>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::pair<Real, Real>> nodes(n);
    for (int k = 0; k < n; ++k) {
        // Chebyshev-like initial guess, then Newton.
        Real x = std::cos(Real(M_PI) * (Real(4 * k + 3)) / (Real(4 * n + 2)));
        for (int iter = 0; iter < 100; ++iter) {
            auto [p, dp] = detail::legendre_with_derivative<Real>(n, x);
            Real step = p / dp;
            x -= step;
            if (std::abs(step) < Real(1e-19)) break;
        }
        auto [p, dp] = detail::legendre_with_derivative<Real>(n, x);
        (void)p;
        Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        nodes[k] = {x, w};
    }
    auto [pos, inserted] = cache.emplace(n, std::move(nodes));
    (void)inserted;
    return pos->second;
}

namespace detail {

template <class Real, class F>
Real checked_sample(F&& f, Real x) {
    Real v = f(x);
    if (!std::isfinite(static_cast<double>(v)))
        throw QuadratureSampleError("non-finite integrand sample at w = " +
                                        std::to_string(static_cast<double>(x)),
                                    static_cast<double>(x));
    return v;
}

}  // namespace detail

// Approximates the integral of f over [a,b] with the chosen rule.
// Degrees of exactness: Midpoint 1, OpenNewtonCotes4 3, OpenNewtonCotes6 5,
// Gauss n-point 2n-1.
template <class Real, class F>
Real integrate(const QuadratureRule& rule, F&& f, Real a, Real b) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
    switch (rule.kind) {
        case QuadratureKind::Midpoint:
            return (b - a) * detail::checked_sample(f, (a + b) / Real(2));
        case QuadratureKind::OpenNewtonCotes4: {
            // 3 interior points, x_k = a + k h, h = (b-a)/4.
            Real h = (b - a) / Real(4);
            Real f1 = detail::checked_sample(f, a + h);
            Real f2 = detail::checked_sample(f, a + 2 * h);
            Real f3 = detail::checked_sample(f, a + 3 * h);
            return (Real(4) * h / Real(3)) * (Real(2) * f1 - f2 + Real(2) * f3);
        }
        case QuadratureKind::OpenNewtonCotes6: {
            // 5 interior points, x_k = a + k h, h = (b-a)/6.
            Real h = (b - a) / Real(6);
            Real f1 = detail::checked_sample(f, a + h);
            Real f2 = detail::checked_sample(f, a + 2 * h);
            Real f3 = detail::checked_sample(f, a + 3 * h);
            Real f4 = detail::checked_sample(f, a + 4 * h);
            Real f5 = detail::checked_sample(f, a + 5 * h);
            return (Real(3) * h / Real(10)) *
                   (Real(11) * f1 - Real(14) * f2 + Real(26) * f3 - Real(14) * f4 + Real(11) * f5);
        }
        case QuadratureKind::GaussLegendre: {
            const auto& nodes = gauss_nodes<Real>(rule.gauss_points);
            Real mid = (a + b) / Real(2);
            Real half = (b - a) / Real(2);
            Real sum = Real(0);
            for (const auto& [x, w] : nodes) sum += w * detail::checked_sample(f, mid + half * x);
            return half * sum;
        }
    }
    throw std::logic_error("integrate: unknown quadrature kind");
}

// lambda_{i+1/2}: cell integral of (B[f]+D')/D over [w_i, w_{i+1}]. The caller
// supplies the assembled ratio; diffusion positivity is checked inside the
// ratio callable (see fpcore).
template <class Real, class F>
Real lambda_weight(const QuadratureRule& rule, F&& drift_plus_dprime_over_diffusion, Real w_i,
                   Real w_ip1) {
    return integrate(rule, drift_plus_dprime_over_diffusion, w_i, w_ip1);
}

}  // namespace mfp
