#include "mfp/transport.hpp"

#include <cmath>
#include <stdexcept>

namespace mfp {

std::array<double, 2> weno3_weights(double hm, double h0, double hp) {
    // Linear weights 1/3 (shifted stencil) and 2/3 (centered stencil).
    const double b0 = (h0 - hm) * (h0 - hm);
    const double b1 = (hp - h0) * (hp - h0);
    double a0 = (1.0 / 3.0) / ((kWenoEps + b0) * (kWenoEps + b0));
    double a1 = (2.0 / 3.0) / ((kWenoEps + b1) * (kWenoEps + b1));
    double s = a0 + a1;
    return {a0 / s, a1 / s};
}

double weno3_interface_value(double hm, double h0, double hp) {
    auto [w0, w1] = weno3_weights(hm, h0, hp);
    const double p0 = -0.5 * hm + 1.5 * h0;  // from {k-1, k}
    const double p1 = 0.5 * (h0 + hp);       // from {k, k+1}
    return w0 * p0 + w1 * p1;
}

std::vector<double> weno3_flux_derivative(std::span<const double> row, double speed, double dx) {
    const int n = static_cast<int>(row.size());
    if (n < 5) throw std::invalid_argument("weno3_flux_derivative: row needs at least 5 nodes");
    if (!(dx > 0.0)) throw std::invalid_argument("weno3_flux_derivative: dx must be positive");

    auto wrap = [n](int i) { return ((i % n) + n) % n; };

    // Interface fluxes of h = speed * f, upwinded by the sign of the speed.
    // hat[i] approximates the flux at x_{i+1/2}.
    std::vector<double> hat(static_cast<size_t>(n));
    if (speed >= 0.0) {
        for (int i = 0; i < n; ++i) {
            double hm = speed * row[static_cast<size_t>(wrap(i - 1))];
            double h0 = speed * row[static_cast<size_t>(i)];
            double hp = speed * row[static_cast<size_t>(wrap(i + 1))];
            hat[static_cast<size_t>(i)] = weno3_interface_value(hm, h0, hp);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            // Upwind node is i+1; mirror the stencil.
            double hm = speed * row[static_cast<size_t>(wrap(i + 2))];
            double h0 = speed * row[static_cast<size_t>(wrap(i + 1))];
            double hp = speed * row[static_cast<size_t>(i)];
            hat[static_cast<size_t>(i)] = weno3_interface_value(hm, h0, hp);
        }
    }

    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] =
            -(hat[static_cast<size_t>(i)] - hat[static_cast<size_t>(wrap(i - 1))]) / dx;
    return out;
}

}  // namespace mfp
