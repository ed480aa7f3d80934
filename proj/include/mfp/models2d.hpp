#pragma once

#include <vector>

#include "mfp/density.hpp"
#include "mfp/grid.hpp"

namespace mfp {

// ---------------------------------------------------------------------------
// Mean-field Cucker-Smale flocking. Phase space (x, w): first field axis is
// the spatial position x, second the velocity w. Constant diffusion in w.
// ---------------------------------------------------------------------------
struct CuckerSmaleModel {
    double gamma = 0.1;            // communication decay in H
    double diffusion_const = 0.1;  // D(x,w) = const

    // H(x,y) = (1 + (x-y)^2)^(-gamma), in (0,1].
    double kernel(double x, double y) const;
};

// Alignment drift B(x_i, w_j) = dx dw sum_{k,l} H(x_i,x_k) (w_j - w_l) f_{k,l},
// returned row-major like the field (row = x index, column = w index).
// Factorizes into per-column mass/momentum sums, so the cost is
// O(Nx^2 + Nx Nw).
std::vector<double> cs_drift(const DensityField2D& f, const CuckerSmaleModel& model);

// The same drift in its per-row affine form B(x_i, w) = a_i w - b_i; this is
// what the w-direction solver consumes (the drift is exactly affine in w).
struct CsAffineDrift {
    std::vector<double> a;
    std::vector<double> b;
};
CsAffineDrift cs_drift_affine(const DensityField2D& f, const CuckerSmaleModel& model);

// ---------------------------------------------------------------------------
// Opinion dynamics over a network: discrete connection count x in {0..c_max}
// crossed with a continuous opinion w in [-1,1]. Bounded-confidence
// compromise: agents at connection level x interact with opinions within
// Delta(x) = d0 x / c_max. Diffusion D(w) = (sigma2/2)(1-w^2)^2.
// ---------------------------------------------------------------------------
struct NetworkParams {
    int c_max = 250;
    double sigma2 = 1e-3;
    double d0 = 1.01;
    double alpha = 0.1;
    double beta = 0.0;
    double V_r = 1.0;
    double V_a = 1.0;

    double confidence(int x) const { return d0 * static_cast<double>(x) / c_max; }
};

// Field over {0..c_max} x opinion nodes, row-major per connection level.
struct NetworkState {
    int c_levels = 0;  // c_max + 1
    Grid1D opinion_grid;
    std::vector<double> values;

    NetworkState() = default;
    NetworkState(int c_max, const Grid1D& wg)
        : c_levels(c_max + 1),
          opinion_grid(wg),
          values(static_cast<size_t>(c_max + 1) * static_cast<size_t>(wg.n_nodes), 0.0) {}

    double& at(int x, int j) {
        return values[static_cast<size_t>(x) * static_cast<size_t>(opinion_grid.n_nodes) +
                      static_cast<size_t>(j)];
    }
    double at(int x, int j) const {
        return values[static_cast<size_t>(x) * static_cast<size_t>(opinion_grid.n_nodes) +
                      static_cast<size_t>(j)];
    }
};

// Frozen bounded-confidence drift. Built once per step from the opinion
// marginal g(v) = sum_x f(x,v); evaluates
//   B(x, w) = dw * sum_{|w - v_l| <= Delta(x)} (w - v_l) g_l
// at arbitrary w via prefix sums (window ties included).
class NetworkDrift {
  public:
    NetworkDrift(const NetworkState& f, const NetworkParams& p);
    double eval(int x, double w) const;

  private:
    const NetworkParams params_;
    Grid1D grid_;
    std::vector<double> prefix_g_;   // prefix sums of g_l
    std::vector<double> prefix_wg_;  // prefix sums of v_l g_l
};

// Nodal drift matrix B(x, w_j), same layout as the state.
std::vector<double> network_drift(const NetworkState& f, const NetworkParams& p);

// Connection-exchange operator L[f](x, w) as it appears on the left-hand side
// of the model (the evolution subtracts it). Transitions leaving {0..c_max}
// are disabled, so each opinion column's sum over x vanishes identically.
std::vector<double> network_L(const NetworkState& f, const NetworkParams& p, double gamma_t);

// Mean density of connectivity gamma = sum_x x dw sum_l f(x, w_l).
double gamma_mean_connectivity(const NetworkState& f);

// Largest total transition rate out of any connection state; the explicit
// Euler sub-step for L stays positive below its reciprocal.
double network_L_rate_bound(const NetworkParams& p, double gamma_t);

}  // namespace mfp
