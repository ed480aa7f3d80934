#include <cmath>
#include <random>

#include "doctest.h"
#include "mfp/quadrature.hpp"

using namespace mfp;

namespace {

double monomial_integral(int p, double a, double b) {
    return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

int exactness_degree(const QuadratureRule& rule) {
    switch (rule.kind) {
        case QuadratureKind::Midpoint: return 1;
        case QuadratureKind::OpenNewtonCotes4: return 3;
        case QuadratureKind::OpenNewtonCotes6: return 5;
        case QuadratureKind::GaussLegendre: return 2 * rule.gauss_points - 1;
    }
    return 0;
}

}  // namespace

TEST_CASE("degree of exactness against closed-form antiderivatives") {
    std::vector<QuadratureRule> rules = {
        {QuadratureKind::Midpoint, 0},          {QuadratureKind::OpenNewtonCotes4, 0},
        {QuadratureKind::OpenNewtonCotes6, 0},  {QuadratureKind::GaussLegendre, 2},
        {QuadratureKind::GaussLegendre, 4},     {QuadratureKind::GaussLegendre, 8},
    };
    for (const auto& rule : rules) {
        int deg = exactness_degree(rule);
        for (int p = 0; p <= deg; ++p) {
            double got = integrate(rule, [p](double x) { return std::pow(x, p); }, 0.0, 1.0);
            // absolute tolerance on [0,1]-scaled monomials
            CHECK(std::abs(got - monomial_integral(p, 0.0, 1.0)) <= 1e-13);
        }
    }
}

TEST_CASE("named examples") {
    QuadratureRule mid{QuadratureKind::Midpoint, 0};
    CHECK(integrate(mid, [](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5));

    QuadratureRule g2{QuadratureKind::GaussLegendre, 2};
    CHECK(integrate(g2, [](double x) { return x * x * x; }, 0.0, 1.0) ==
          doctest::Approx(0.25).epsilon(1e-14));

    QuadratureRule onc4{QuadratureKind::OpenNewtonCotes4, 0};
    CHECK(integrate(onc4, [](double x) { return x * x; }, -1.0, 1.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    QuadratureRule rules[] = {{QuadratureKind::OpenNewtonCotes6, 0},
                              {QuadratureKind::GaussLegendre, 5}};
    auto g = [](double x) { return std::sin(3 * x); };
    auto h = [](double x) { return std::exp(x); };
    for (const auto& rule : rules) {
        for (int trial = 0; trial < 50; ++trial) {
            double al = coef(rng), be = coef(rng);
            double combined =
                integrate(rule, [&](double x) { return al * g(x) + be * h(x); }, -0.3, 1.1);
            double split = al * integrate(rule, g, -0.3, 1.1) + be * integrate(rule, h, -0.3, 1.1);
            CHECK(combined == doctest::Approx(split).epsilon(1e-13));
        }
    }
}

TEST_CASE("gauss nodes: weights sum to the interval, abscissae symmetric") {
    for (int n : {2, 3, 5, 8, 12}) {
        const auto& nodes = gauss_nodes<double>(n);
        double wsum = 0.0;
        for (auto [x, w] : nodes) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(nodes[static_cast<size_t>(k)].first +
                           nodes[static_cast<size_t>(n - 1 - k)].first) <= 1e-14);
        // strictly interior
        for (auto [x, w] : nodes) {
            CHECK(std::abs(x) < 1.0);
            CHECK(w > 0.0);
        }
    }
}

TEST_CASE("open rules sample strictly interior points") {
    // An integrand that blows up at both endpoints must still be integrable.
    for (auto kind : {QuadratureKind::Midpoint, QuadratureKind::OpenNewtonCotes4,
                      QuadratureKind::OpenNewtonCotes6, QuadratureKind::GaussLegendre}) {
        QuadratureRule rule{kind, 8};
        double v = integrate(
            rule, [](double x) { return 1.0 / (x * (1.0 - x)); }, 0.0, 1.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("non-finite samples abort with the offending abscissa") {
    QuadratureRule rule{QuadratureKind::GaussLegendre, 4};
    try {
        integrate(rule, [](double x) { return x < 0.5 ? 1.0 : std::nan(""); }, 0.0, 1.0);
        FAIL("expected QuadratureSampleError");
    } catch (const QuadratureSampleError& e) {
        CHECK(e.abscissa() >= 0.5);
        CHECK(e.abscissa() <= 1.0);
    }
    CHECK_THROWS_AS(integrate(rule, [](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("lambda_weight named cases") {
    // B + D' == 0 -> lambda = 0
    QuadratureRule g8{QuadratureKind::GaussLegendre, 8};
    CHECK(lambda_weight(g8, [](double) { return 0.0; }, 0.0, 0.1) == 0.0);

    // B = w (u = 0), D = s constant over [0, dw]: integral dw^2 / (2 s)
    double s = 0.35, dw = 0.05;
    auto ratio = [s](double w) { return w / s; };
    double expected = dw * dw / (2 * s);
    CHECK(lambda_weight(g8, ratio, 0.0, dw) == doctest::Approx(expected).epsilon(1e-14));
    QuadratureRule mid{QuadratureKind::Midpoint, 0};
    CHECK(lambda_weight(mid, ratio, 0.0, dw) == doctest::Approx(expected).epsilon(1e-14));
}
