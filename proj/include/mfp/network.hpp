#pragma once

#include <vector>

#include "mfp/models2d.hpp"
#include "mfp/quadrature.hpp"

namespace mfp {

// Strang-split driver for the opinion-on-networks run: explicit Euler
// half-steps on the connection-exchange operator around a full semi-implicit
// mean-field step in w per connection level. The opinion marginal is
// invariant under L (per-column mass conservation), so the w-coefficients
// computed at the start of a step stay exact through the first half-step.
struct NetworkSim {
    NetworkParams params;
    QuadratureRule rule{QuadratureKind::Midpoint, 8};
    double safety = 0.9;
    NetworkState f;
    double t = 0.0;
    double last_dt = 0.0;

    // One adaptive step, capped at dt_max. Time step honors both the
    // semi-implicit positivity bound (worst column) and the L-stencil
    // positivity bound 1/(rate sum).
    void step(double dt_max);
};

// Power-law connection profile mixed with a shifted copy so the mean
// connectivity starts exactly at gamma0; opinions uniform on the grid.
// Unit total mass.
NetworkState network_initial(const NetworkParams& params, const Grid1D& opinion_grid,
                             double gamma0, int shift);

}  // namespace mfp
