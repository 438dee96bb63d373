#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wqd/maps.hpp"

namespace wqd {

// Grid densities and refinement controls for the Bloch-sphere minimizers.
// theta is sampled on [0, pi] inclusive, phi on [0, 2 pi) exclusive.
struct OptimizerConfig {
    int theta_points = 33;
    int phi_points = 64;
    int refine_max_iter = 200;
    double refine_tol = 1e-10;
    // Per-side grid for the four-angle (A-side, B-side) problems.
    int joint_theta_points = 9;
    int joint_phi_points = 16;

    // Throws ValidationError when a count is < 2 or the tolerance is not positive.
    void validate() const;
};

struct OptimizerDiagnostics {
    double grid_best = 0.0;  // best value on the grid (after tie-breaking)
    double refined = 0.0;    // value reached by the simplex refinement
    int iterations = 0;      // simplex iterations
    int evaluations = 0;     // objective calls, grid included
};

struct BlochMinimum {
    BlochAngles angles;
    double value = 0.0;
    OptimizerDiagnostics diagnostics;
};

struct BlochPairMinimum {
    BlochAngles first;
    BlochAngles second;
    double value = 0.0;
    OptimizerDiagnostics diagnostics;
};

using BlochObjective = std::function<double(const BlochAngles&)>;
using BlochPairObjective = std::function<double(const BlochAngles&, const BlochAngles&)>;

// Grid scan followed by Nelder-Mead refinement from the best cell. Grid values
// within 1e-9 of the minimum tie; the lexicographically smallest (theta, phi)
// wins. The refined point replaces the grid point only if it is lower by more
// than 1e-12. Throws ValidationError if the objective returns a non-finite value.
BlochMinimum minimize_bloch(const BlochObjective& objective, const OptimizerConfig& config = {});

// Same over (first, second) on the joint_* grid; ties broken lexicographically
// on (theta_1, phi_1, theta_2, phi_2).
BlochPairMinimum minimize_bloch_pair(const BlochPairObjective& objective,
                                     const OptimizerConfig& config = {});

struct SimplexResult {
    std::vector<double> point;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
};

// Unconstrained Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2) with axis-aligned initial simplex start + steps[i] e_i.
// Stops when the value spread is <= ftol and every vertex lies within 1e-6 of
// the best one, or after max_iter iterations. Restarts once from the optimum.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, std::span<const double> steps, int max_iter,
                          double ftol);

} // namespace wqd
