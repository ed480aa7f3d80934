#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace mfp {

// Third-order finite-difference WENO for scalar advection at constant speed
// per row, periodic in x. Smoothness regularization follows the classic
// eps = 1e-6 choice.
inline constexpr double kWenoEps = 1e-6;

// Nonlinear weights (w0, w1) for the two candidate stencils given the three
// upwind-ordered samples (hm, h0, hp). Nonnegative, sum to one.
std::array<double, 2> weno3_weights(double hm, double h0, double hp);

// Upwind-biased interface value from (h_{k-1}, h_k, h_{k+1}) where k is the
// upwind node of the interface.
double weno3_interface_value(double hm, double h0, double hp);

// Conservative approximation of -speed * d(row)/dx on a periodic row.
// Third-order on smooth data, non-oscillatory near discontinuities.
std::vector<double> weno3_flux_derivative(std::span<const double> row, double speed, double dx);

// Symmetric Strang composition: half A, full B, half A. Second order in dt
// when both sub-maps are at least second order.
template <class State, class HalfMap, class FullMap>
State strang_step(HalfMap&& fp_half, FullMap&& transport_full, State state) {
    state = fp_half(std::move(state));
    state = transport_full(std::move(state));
    state = fp_half(std::move(state));
    return state;
}

}  // namespace mfp
