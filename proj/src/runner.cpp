#include "mfp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mfp {

namespace {

using LD = long double;

struct QuadChoice {
    std::string name;
    QuadratureRule rule;
};

// Solution snapshots at the requested times for one (grid, quadrature) run.
std::map<double, std::vector<LD>> run_one(int n_nodes, const ConvergenceSettings& s,
                                          const QuadratureRule& rule,
                                          const std::vector<double>& times) {
    BasicGrid1D<LD> grid(LD(-1), LD(1), n_nodes);
    OpinionModel<LD> model{LD(s.sigma2), {}};
    auto f0 = initial_two_bumps(grid, LD(s.bump_sharpness));
    Evolution1D<LD, OpinionModel<LD>> evo(f0, model, rule, Integrator::RK4);

    // dt ~ dw^2: 0.9 x the explicit positivity bound at t = 0, rounded down
    // so every snapshot time is hit exactly.
    LD dt0 = evo.auto_dt();
    std::map<double, std::vector<LD>> snaps;
    double t_prev = 0.0;
    for (double t_snap : times) {
        double span = t_snap - t_prev;
        long steps = static_cast<long>(std::ceil(static_cast<double>(span / (double)dt0)));
        LD h = LD(span) / LD(steps);
        for (long k = 0; k < steps; ++k) evo.step(h);
        snaps[t_snap] = evo.state().values;
        t_prev = t_snap;
    }
    return snaps;
}

// L1-relative distance between a coarse solution and the next finer one on
// the coarse nodes (nested grids: coarse node i = fine node 2i).
LD nested_l1(const std::vector<LD>& coarse, const std::vector<LD>& fine) {
    LD num = 0, den = 0;
    for (size_t i = 0; i < coarse.size(); ++i) {
        LD ref = fine[2 * i];
        num += std::abs(coarse[i] - ref);
        den += std::abs(ref);
    }
    return num / den;
}

}  // namespace

std::vector<ConvergenceEntry> run_convergence_study(const ConvergenceSettings& s) {
    if (s.grids.size() < 2)
        throw std::invalid_argument("convergence study: need at least two grid sizes");
    for (size_t k = 1; k < s.grids.size(); ++k)
        if (s.grids[k] != 2 * s.grids[k - 1] - 1)
            throw std::invalid_argument("convergence study: grids must be nested (2N-1)");

    const std::vector<QuadChoice> quads = {
        {"midpoint", {QuadratureKind::Midpoint, 0}},
        {"onc4", {QuadratureKind::OpenNewtonCotes4, 0}},
        {"onc6", {QuadratureKind::OpenNewtonCotes6, 0}},
        {"gauss", {QuadratureKind::GaussLegendre, s.gauss_points}},
    };

    std::vector<ConvergenceEntry> table;
    for (const auto& q : quads) {
        // One run per grid, snapshots shared across times.
        std::vector<std::map<double, std::vector<LD>>> snaps;
        snaps.reserve(s.grids.size());
        for (int n : s.grids) snaps.push_back(run_one(n, s, q.rule, s.times));

        for (double t : s.times) {
            // err_k = distance of grid k from grid k+1; orders from pairs.
            std::vector<LD> errs;
            for (size_t k = 0; k + 1 < s.grids.size(); ++k)
                errs.push_back(nested_l1(snaps[k].at(t), snaps[k + 1].at(t)));
            for (size_t k = 0; k + 1 < errs.size(); ++k) {
                ConvergenceEntry e;
                e.t = t;
                e.quadrature = q.name;
                e.pair_label = std::to_string(s.grids[k]) + "->" + std::to_string(s.grids[k + 1]);
                if (errs[k] > LD(0) && errs[k + 1] > LD(0)) {
                    e.order = static_cast<double>(std::log(errs[k] / errs[k + 1]) /
                                                  std::log(LD(2)));
                    e.stagnated = std::abs(e.order) < 0.1;
                } else {
                    e.order = 0.0;
                    e.stagnated = true;
                }
                table.push_back(e);
            }
        }
    }
    return table;
}

}  // namespace mfp
