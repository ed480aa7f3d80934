#pragma once

#include "mfp/density.hpp"
#include "mfp/models2d.hpp"
#include "mfp/quadrature.hpp"

namespace mfp {

// Strang-split driver for the flocking run: semi-implicit mean-field step in
// w per x-row, WENO3 + SSP-RK2 transport in x per w-row, composed as
// fp(dt/2) transport(dt) fp(dt/2). x is periodic; w has no-flux walls.
struct FlockingSim {
    CuckerSmaleModel model;
    QuadratureRule rule{QuadratureKind::GaussLegendre, 8};
    double cfl = 0.25;  // dt * max|w| / dx
    DensityField2D f;   // axis_w = x, axis_v = w
    double t = 0.0;

    double step_size() const;
    // One Strang step of min(step_size(), dt_cap).
    void step(double dt_cap);
    void step() { step(step_size()); }

  private:
    void fp_half(double dt_half);
    void transport_full(double dt);
};

// Population sharing an average location x = 0 and clustered around the two
// opposite velocities +-w_cluster; unit total mass.
DensityField2D flocking_initial(const Grid2D& grid, double x_spread, double w_cluster,
                                double w_spread);

struct FlockingObservables {
    double mass = 0.0;
    double w_mean = 0.0;
    double w_variance = 0.0;
    double x_sup_deviation = 0.0;  // max deviation of the x-marginal from its mean
};

FlockingObservables flocking_observables(const DensityField2D& f);

}  // namespace mfp
