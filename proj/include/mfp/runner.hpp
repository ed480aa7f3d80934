#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfp/diagnostics.hpp"
#include "mfp/integrators.hpp"
#include "mfp/models.hpp"

namespace mfp {

enum class Integrator { ForwardEuler, SSPRK2, RK4, SemiImplicit };

// Advances one 1D model with a fixed integrator. dt may be pinned or derived
// from the active positivity bound ("auto" = 0.9 x bound, re-evaluated every
// step). The negative-output diagnostic flag is latched across the run.
template <class Real, class Model>
class Evolution1D {
  public:
    Evolution1D(BasicDensityField<Real> f0, Model model, QuadratureRule rule, Integrator kind)
        : f_(std::move(f0)), model_(std::move(model)), rule_(rule), kind_(kind) {}

    const BasicDensityField<Real>& state() const { return f_; }
    BasicDensityField<Real>& state() { return f_; }
    Real time() const { return t_; }
    bool saw_negative() const { return saw_negative_; }
    const Model& model() const { return model_; }
    const QuadratureRule& rule() const { return rule_; }

    // 0.9 x the positivity bound of the active scheme at the current state.
    Real auto_dt() const {
        auto c = compute_coefficients(f_, model_, rule_);
        Real bound = (kind_ == Integrator::SemiImplicit) ? cfl_semi_implicit(c) : cfl_explicit(c);
        return Real(0.9) * bound;
    }

    void step(Real dt) {
        StepResult<Real> r = [&] {
            switch (kind_) {
                case Integrator::ForwardEuler:
                    return step_forward_euler(f_, model_, rule_, dt);
                case Integrator::SSPRK2:
                    return step_ssprk2(f_, model_, rule_, dt);
                case Integrator::RK4:
                    return step_rk4(f_, model_, rule_, dt);
                case Integrator::SemiImplicit:
                    return step_semi_implicit(f_, model_, rule_, dt);
            }
            throw std::logic_error("Evolution1D: unknown integrator");
        }();
        f_ = std::move(r.f);
        saw_negative_ = saw_negative_ || r.negative;
        t_ += dt;
    }

    // Runs to t_end with a fixed dt (or per-step auto when dt <= 0), trimming
    // the final step to land on t_end exactly. The observer is called at t=0
    // and after every step.
    template <class Observer>
    void run_to(Real t_end, Real dt, Observer&& observe) {
        observe(*this);
        while (t_ < t_end - Real(1e-12)) {
            Real h = dt > Real(0) ? dt : auto_dt();
            if (t_ + h > t_end) h = t_end - t_;
            step(h);
            observe(*this);
        }
    }

    void run_to(Real t_end, Real dt) {
        run_to(t_end, dt, [](const Evolution1D&) {});
    }

  private:
    BasicDensityField<Real> f_;
    Model model_;
    QuadratureRule rule_;
    Integrator kind_;
    Real t_ = Real(0);
    bool saw_negative_ = false;
};

// ---------------------------------------------------------------------------
// Entropy certification for the frozen-drift prototype.
// ---------------------------------------------------------------------------

// Per-sample record from an entropy run.
struct EntropyRecord {
    double t = 0.0;
    double entropy = 0.0;
    double dissipation = 0.0;
    double balance_residual = 0.0;    // |dH/dt + I| across the last step
    double flux_identity_dev = 0.0;   // max |direct - log-mean| flux deviation
    double flux_scale = 0.0;
    int skipped_nodes = 0;
};

// Residual of the discrete entropy balance across one step,
// |(H^{n+1} - H^n)/dt + I*|, with I* a time quadrature of the dissipation
// matched to the integrator order: left endpoint (order 1), trapezoid
// (order 2), Simpson with the midpoint state (order 4).
template <class Real>
Real entropy_balance_residual(Real h_before, Real h_after, Real dt, Real i_before, Real i_after,
                              int order, Real i_mid = Real(0)) {
    Real quad;
    if (order <= 1)
        quad = i_before;
    else if (order <= 2)
        quad = (i_before + i_after) / Real(2);
    else
        quad = (i_before + Real(4) * i_mid + i_after) / Real(6);
    return std::abs((h_after - h_before) / dt + quad);
}

// ---------------------------------------------------------------------------
// Convergence study (the Table-1 style harness).
// ---------------------------------------------------------------------------

struct ConvergenceSettings {
    double sigma2 = 0.2;
    double bump_sharpness = 30.0;
    std::vector<int> grids = {41, 81, 161, 321};  // nested node counts
    std::vector<double> times = {1.0, 5.0, 10.0, 15.0};
    int gauss_points = 4;  // order 8 = the largest observable with RK4 at dt ~ dw^2
};

struct ConvergenceEntry {
    double t = 0.0;
    std::string quadrature;
    std::string pair_label;  // e.g. "41->81"
    double order = 0.0;
    bool stagnated = false;
};

// Self-convergence orders on nested grids: the error of each grid is its L1
// distance (restricted to common nodes) from the next finer solution at the
// same time; RK4 in extended precision with dt proportional to dw^2 so the
// spatial/steady-state error is the measured quantity down to ~1e-15.
std::vector<ConvergenceEntry> run_convergence_study(const ConvergenceSettings& settings);

}  // namespace mfp
