#pragma once

#include <utility>
#include <vector>

#include "apq/sequence.hpp"

namespace apq {

enum class DensityKind { lower, upper };

/// One density run: the finite-r values along a schedule of radii and the
/// affine extrapolation of the limit in the variable 1 / log(1/(1-r)).
struct DensityReport {
    DensityKind kind = DensityKind::upper;
    std::vector<double> r_schedule;
    std::vector<double> values;
    double extrapolated = 0.0;
    double fit_residual = 0.0;
    int zeta_candidates_used = 0;
};

/// Candidate-set and schedule configuration for the density estimator. The
/// sup/inf over all centers is uncomputable; extrema sit near points and holes
/// of the sequence, so candidates combine the sequence itself with a
/// hyperbolic-uniform grid.
struct DensityOptions {
    std::vector<double> r_schedule = {0.99, 0.995, 0.9975, 0.99875, 0.999375};
    double grid_radius = 0.9;
    int grid_target = 400;
    bool use_gamma_candidates = true;
    bool use_grid_candidates = true;
    /// Evaluate the integral-quotient form F(Gamma, zeta, r) instead of the
    /// reformulated logarithmic quotient (cross-check only).
    bool integral_form = false;
};

DensityReport density(const PointSequence& gamma, DensityKind kind,
                      const DensityOptions& opts = {});

struct CalibrationResult {
    PointSequence sequence;
    double measured = 0.0;
    double c = 0.0;
    std::vector<std::pair<double, double>> trace;  // (c, measured density)
};

struct CalibrationOptions {
    double sigma = 0.5;
    double r_max = 0.9995;
    int L = 2;
    int max_steps = 40;
    DensityOptions density;
};

/// Bisects the lattice weight c until the measured density meets the target.
CalibrationResult calibrate_lattice(double target, DensityKind kind, double tol,
                                    const CalibrationOptions& opts = {});

} // namespace apq
