#pragma once

#include <stdexcept>
#include <string>

namespace mfp {

// Uniform node grid w_i = w_min + i*dw, i = 0..N (N+1 nodes, endpoints on the
// boundary). Interfaces sit at i+1/2 for i = 0..N-1; the boundary fluxes at
// -1/2 and N+1/2 exist only as the no-flux zeros and are never stored.
// Immutable after construction; shared read-only by every solver.
template <class Real>
struct BasicGrid1D {
    Real w_min{};
    Real w_max{};
    int n_nodes{};  // N+1
    Real dw{};

    BasicGrid1D() = default;

    BasicGrid1D(Real lo, Real hi, int nodes) : w_min(lo), w_max(hi), n_nodes(nodes) {
        if (nodes < 3) throw std::invalid_argument("Grid1D: need at least 3 nodes");
        if (!(lo < hi)) throw std::invalid_argument("Grid1D: w_min must be below w_max");
        dw = (hi - lo) / static_cast<Real>(nodes - 1);
    }

    // Number of intervals N; also the number of interior interfaces.
    int intervals() const { return n_nodes - 1; }
    int interfaces() const { return n_nodes - 1; }

    Real node(int i) const {
        if (i < 0 || i >= n_nodes)
            throw std::out_of_range("Grid1D::node: index " + std::to_string(i) +
                                    " outside 0.." + std::to_string(n_nodes - 1));
        return w_min + static_cast<Real>(i) * dw;
    }

    // Midpoint w_{i+1/2} of the interval [w_i, w_{i+1}].
    Real interface_midpoint(int i) const {
        if (i < 0 || i >= interfaces())
            throw std::out_of_range("Grid1D::interface_midpoint: index " + std::to_string(i) +
                                    " outside 0.." + std::to_string(interfaces() - 1));
        return w_min + (static_cast<Real>(i) + Real(0.5)) * dw;
    }
};

using Grid1D = BasicGrid1D<double>;

// Tensor grid of two 1D axes; cell (i,j) has size dw * dv.
struct Grid2D {
    Grid1D axis_w;
    Grid1D axis_v;
};

}  // namespace mfp
