#pragma once

#include <stdexcept>
#include <vector>

#include "mfp/grid.hpp"

namespace mfp {

// Nodal values f_i on a 1D grid.
template <class Real>
struct BasicDensityField {
    BasicGrid1D<Real> grid;
    std::vector<Real> values;

    BasicDensityField() = default;

    explicit BasicDensityField(const BasicGrid1D<Real>& g)
        : grid(g), values(static_cast<size_t>(g.n_nodes), Real(0)) {}

    BasicDensityField(const BasicGrid1D<Real>& g, std::vector<Real> v)
        : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.n_nodes)
            throw std::invalid_argument("DensityField: value count does not match grid");
    }

    template <class Fn>
    static BasicDensityField from_function(const BasicGrid1D<Real>& g, Fn&& fn) {
        BasicDensityField f(g);
        for (int i = 0; i < g.n_nodes; ++i) f.values[static_cast<size_t>(i)] = fn(g.node(i));
        return f;
    }
};

using DensityField = BasicDensityField<double>;

// Nodal values f_{i,j} on a 2D tensor grid, row-major in the second axis:
// index (i,j) -> i * (N2+1) + j.
struct DensityField2D {
    Grid2D grid;
    std::vector<double> values;

    DensityField2D() = default;

    explicit DensityField2D(const Grid2D& g)
        : grid(g),
          values(static_cast<size_t>(g.axis_w.n_nodes) * static_cast<size_t>(g.axis_v.n_nodes),
                 0.0) {}

    int n_w() const { return grid.axis_w.n_nodes; }
    int n_v() const { return grid.axis_v.n_nodes; }

    double& at(int i, int j) {
        return values[static_cast<size_t>(i) * static_cast<size_t>(n_v()) +
                      static_cast<size_t>(j)];
    }
    double at(int i, int j) const {
        return values[static_cast<size_t>(i) * static_cast<size_t>(n_v()) +
                      static_cast<size_t>(j)];
    }
};

}  // namespace mfp
