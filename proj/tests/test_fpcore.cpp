#include <cmath>
#include <random>

#include "doctest.h"
#include "mfp/fpcore.hpp"
#include "mfp/models.hpp"

using namespace mfp;

namespace {

const QuadratureRule kGauss8{QuadratureKind::GaussLegendre, 8};
const QuadratureRule kMidpoint{QuadratureKind::Midpoint, 0};

DensityField random_field(const Grid1D& g, unsigned seed, bool with_zeros = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DensityField f(g);
    for (int i = 0; i < g.n_nodes; ++i) {
        f.values[static_cast<size_t>(i)] = u(rng);
        if (with_zeros && i % 7 == 3) f.values[static_cast<size_t>(i)] = 0.0;
    }
    return f;
}

}  // namespace

TEST_CASE("delta_formula values and branches") {
    CHECK(delta_formula(0.0) == 0.5);
    CHECK(delta_formula(1.0) == doctest::Approx(1.0 - 1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK(delta_formula(1.0) == doctest::Approx(0.4180232931).epsilon(1e-9));
    CHECK(delta_formula(-1.0) == doctest::Approx(0.5819767069).epsilon(1e-9));

    // overflow-safe asymptotics
    CHECK(delta_formula(1e6) == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(delta_formula(-1e6) == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
    CHECK(std::isfinite(delta_formula(700.0)));
    CHECK(std::isfinite(delta_formula(-700.0)));
}

TEST_CASE("delta_formula: range, complement identity, monotonicity") {
    std::vector<double> lams = {-1e6, -700, -500.0001, -499.9999, -20, -3,   -1e-3, -1e-7,
                                0,    1e-7, 1e-3,      3,         20,  499.9999, 500.0001, 1e6};
    double prev = 2.0;
    for (double l : lams) {
        double d = delta_formula(l);
        CHECK(d > 0.0);
        CHECK(d < 1.0);
        CHECK(d + delta_formula(-l) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d < prev);  // strictly decreasing across this ordered sweep
        prev = d;
    }
}

TEST_CASE("growth_alpha values and the exp product identity") {
    CHECK(growth_alpha(0.0) == 1.0);
    CHECK(growth_alpha(1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK(growth_alpha(-600.0) == 600.0);
    CHECK(growth_alpha(600.0) == doctest::Approx(600.0 * std::exp(-600.0)).epsilon(1e-12));
    // alpha(l) e^l = alpha(-l) on the moderate range
    for (double l : {-30.0, -2.0, -1e-4, 1e-4, 2.0, 30.0})
        CHECK(growth_alpha(l) * std::exp(l) == doctest::Approx(growth_alpha(-l)).epsilon(1e-12));
}

TEST_CASE("pure diffusion reduces to central differencing") {
    Grid1D g(-1.0, 1.0, 21);
    DiffusionModel<double> model{0.7};
    auto f = random_field(g, 11);
    auto c = compute_coefficients(f, model, kGauss8);
    for (int i = 0; i < c.interfaces(); ++i) {
        CHECK(std::abs(c.lambda[i]) <= 1e-15);
        CHECK(c.delta[i] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(c.c_tilde[i]) <= 1e-15);
        CHECK(c.d_face[i] == 0.7);
    }
}

TEST_CASE("midpoint rule gives c_tilde = B + D' at the face exactly") {
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, 0.0};  // frozen u = 0
    DensityField f = initial_two_bumps(g, 30.0);
    auto c = compute_coefficients(f, model, kMidpoint);
    for (int i = 0; i < c.interfaces(); ++i) {
        double w = g.interface_midpoint(i);
        double expected = w + model.diffusion_prime(w);
        CHECK(c.c_tilde[i] == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("coefficient relation lambda = dw c_tilde / d_face") {
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, {}};
    DensityField f = initial_two_bumps(g, 30.0);
    auto c = compute_coefficients(f, model, kGauss8);
    for (int i = 0; i < c.interfaces(); ++i)
        CHECK(c.lambda[i] ==
              doctest::Approx(g.dw * c.c_tilde[i] / c.d_face[i]).epsilon(1e-12));
}

TEST_CASE("opinion lambda against a brute-force trapezoid oracle") {
    // Interface at w = 0.5 on the dw = 0.05 grid, sigma^2/2 = 0.1, u = 0.
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, 0.0};
    DensityField f = initial_two_bumps(g, 30.0);
    auto c = compute_coefficients(f, model, kGauss8);

    int iface = 30;  // [w_30, w_31] = [0.5, 0.55]
    REQUIRE(g.node(30) == doctest::Approx(0.5).epsilon(1e-14));

    auto integrand = [&](double w) {
        return (w + model.diffusion_prime(w)) / model.diffusion(w);
    };
    const long panels = 1000000;
    double a = g.node(30), b = g.node(31);
    double h = (b - a) / panels;
    double acc = 0.5 * (integrand(a) + integrand(b));
    for (long k = 1; k < panels; ++k) acc += integrand(a + k * h);
    double oracle = acc * h;

    CHECK(c.lambda[iface] == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("flux vanishes on constants without drift") {
    Grid1D g(0.0, 1.0, 17);
    DiffusionModel<double> model{1.3};
    DensityField f = DensityField::from_function(g, [](double) { return 0.8; });
    auto c = compute_coefficients(f, model, kGauss8);
    for (int i = 0; i < c.interfaces(); ++i)
        CHECK(std::abs(flux(f, c, i)) <= 1e-14);
}

TEST_CASE("recursion-built steady state has zero flux") {
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, {}};
    DensityField f0 = initial_two_bumps(g, 30.0);
    auto c = compute_coefficients(f0, model, kGauss8);
    auto steady = zero_flux_profile(g, c);

    double fmax = 0.0, ctmax = 0.0, dmax = 0.0;
    for (double v : steady.values) fmax = std::max(fmax, std::abs(v));
    for (int i = 0; i < c.interfaces(); ++i) {
        ctmax = std::max(ctmax, std::abs(c.c_tilde[i]));
        dmax = std::max(dmax, c.d_face[i] / c.dw);
    }
    double scale = fmax * std::max(ctmax, dmax);
    for (int i = 0; i < c.interfaces(); ++i)
        CHECK(std::abs(flux(steady, c, i)) <= 1e-12 * scale);
}

TEST_CASE("central-difference flux is the delta = 1/2 special case") {
    Grid1D g(-1.0, 1.0, 21);
    OpinionModel<double> model{0.5, 0.1};
    DensityField f = random_field(g, 5);
    auto c = compute_coefficients(f, model, kMidpoint);
    // overwrite with the standard scheme's choices
    for (int i = 0; i < c.interfaces(); ++i) {
        double w = g.interface_midpoint(i);
        c.delta[i] = 0.5;
        c.c_tilde[i] = w - 0.1;  // B at the face, no D' correction
    }
    for (int i = 0; i < c.interfaces(); ++i) {
        double w = g.interface_midpoint(i);
        double central = (w - 0.1) * 0.5 * (f.values[static_cast<size_t>(i)] + f.values[static_cast<size_t>(i) + 1]) +
                         c.d_face[i] * (f.values[static_cast<size_t>(i) + 1] - f.values[static_cast<size_t>(i)]) / g.dw;
        CHECK(flux(f, c, i) == doctest::Approx(central).epsilon(1e-13));
    }
}

TEST_CASE("rhs telescopes to zero total mass change") {
    Grid1D g(-1.0, 1.0, 33);
    OpinionModel<double> model{0.3, {}};
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        auto f = random_field(g, seed, true);
        auto c = compute_coefficients(f, model, kGauss8);
        auto r = rhs(f, c);
        double sum = 0.0, scale = 0.0;
        for (double v : r) {
            sum += v;
            scale = std::max(scale, std::abs(v));
        }
        CHECK(std::abs(g.dw * sum) <= 1e-13 * std::max(1.0, g.dw * scale));
    }
}

TEST_CASE("rhs of a zero-flux state vanishes") {
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, 0.25};
    auto c = compute_coefficients(initial_two_bumps(g, 30.0), model, kGauss8);
    auto steady = zero_flux_profile(g, c);
    auto r = rhs(steady, c);
    for (double v : r) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("pure diffusion on a linear profile: interior rhs zero, ends one-sided") {
    Grid1D g(0.0, 1.0, 11);
    DiffusionModel<double> model{1.0};
    DensityField f(g);
    for (int i = 0; i < g.n_nodes; ++i) f.values[static_cast<size_t>(i)] = i;
    auto c = compute_coefficients(f, model, kGauss8);
    auto r = rhs(f, c);
    for (int i = 1; i < g.n_nodes - 1; ++i)
        CHECK(std::abs(r[static_cast<size_t>(i)]) <= 1e-10);
    CHECK(r[0] > 0.0);
    CHECK(r[static_cast<size_t>(g.n_nodes - 1)] < 0.0);
}

TEST_CASE("steady_ratio") {
    Grid1D g(0.0, 1.0, 5);
    InterfaceCoefficients c;
    c.dw = g.dw;
    c.lambda = {0.0, std::log(2.0), 800.0, -1.0};
    c.delta = {0.5, 0.5, 0.5, 0.5};
    c.c_tilde = {0, 0, 0, 0};
    c.d_face = {1, 1, 1, 1};
    CHECK(steady_ratio(c, 0) == 1.0);
    CHECK(steady_ratio(c, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(steady_ratio(c, 2) == 0.0);  // underflow branch
    CHECK_THROWS_AS(steady_ratio(c, 4), std::out_of_range);
}

TEST_CASE("recursion steady state matches the analytic profile at quadrature accuracy") {
    Grid1D g(-1.0, 1.0, 41);
    OpinionModel<double> model{0.2, 0.0};
    auto c = compute_coefficients(initial_two_bumps(g, 30.0), model, kGauss8);
    auto discrete = zero_flux_profile(g, c);
    auto analytic = opinion_steady_state(0.0, 0.2, g);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < discrete.values.size(); ++i) {
        num += std::abs(discrete.values[i] - analytic.values[i]);
        den += std::abs(analytic.values[i]);
    }
    CHECK(num / den <= 1e-11);
}

TEST_CASE("singular diffusion is reported with its interface") {
    Grid1D g(-1.0, 1.0, 11);
    // diffusion that dips to zero inside the domain
    auto B = [](double) { return 0.0; };
    auto D = [](double w) { return std::max(0.0, 0.25 - w * w); };
    auto Dp = [](double) { return 0.0; };
    try {
        compute_coefficients_frozen(g, B, D, Dp, kGauss8);
        FAIL("expected SingularDiffusionError to propagate");
    } catch (const QuadratureSampleError& e) {
        CHECK(std::string(e.what()).find("interface") != std::string::npos);
        CHECK(std::abs(e.abscissa()) >= 0.5 - 1e-9);
    }
}
