#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "apq/norms.hpp"

namespace apq {

/// Outcome of one numerical inequality check. "There exists C" claims become
/// fitted-constant stability tests: C is fitted on the given grid and verified
/// on a refined grid with a 10% drift allowance; any refined point beyond that
/// counts as a violation.
struct InequalityReport {
    std::string name;
    int parameter_grid_size = 0;
    double worst_ratio = 0.0;  // max LHS / (RHS * C_fitted) over the verify grid
    double C_fitted = 1.0;
    int violations = 0;
};

/// (sum |b_n|)^p <= sum |b_n|^p for 0 < p <= 1, random nonnegative tuples.
InequalityReport check_power_subadditivity(double p, int samples, std::uint64_t seed = 11);

/// Circle integral of |1 - rho e^{i theta}|^{-M} against (1 - rho)^{1-M}, M > 1.
InequalityReport check_circle_integral(double M, std::span<const double> rho_grid);

/// Radial integral of (1-r)^a (1 - r rho)^{-B} against (1 - rho)^{a+1-B},
/// for -1 < a < B - 1.
InequalityReport check_radial_integral(double a, double B, std::span<const double> rho_grid);

/// Disc integral of (1-|z|^2)^a |1 - conj(w) z|^{-M} dA against
/// (1 - |w|)^{a+2-M}, for -1 < a < M - 2.
InequalityReport check_disc_integral(double a, double M, std::span<const double> w_moduli);

/// Lattice sum bound: sum_k (1-|z_k|^2)^t |1 - conj(z) z_k|^{-s}
/// <= C (1-|z|^2)^{t-s} for uniformly discrete sequences and 1 < t < s.
InequalityReport check_lattice_sum(const PointSequence& gamma, double t, double s,
                                   std::span<const DiscPoint> z_grid);

/// Pointwise growth bound |f(z)| <= C (1-|z|)^{-(1/p+1/q)} over a corpus
/// normalized to unit mixed norm.
InequalityReport check_pointwise_growth(std::span<const AnalyticFunction> corpus,
                                        const SpaceParams& sp,
                                        std::span<const DiscPoint> grid,
                                        const QuadConfig& cfg = {});

/// Maximum-principle surrogate: the discrete norm of g restricted to the
/// pseudohyperbolic half-disk D = E(z_k, 1/2) is dominated by the norm outside,
/// with a constant independent of the center.
InequalityReport check_disk_domination(std::span<const AnalyticFunction> corpus,
                                       std::span<const DiscPoint> centers,
                                       const SpaceParams& sp, const Partition& part,
                                       const QuadConfig& cfg = {});

/// Closed forms used as engine-independent oracles.
double circle_integral_poisson(double rho);   // integral over (-pi,pi) at M = 2
double radial_integral_geometric(double rho); // integral over (0,1) at a = 0, B = 2

/// (1/2pi) * integral over (-pi, pi) of |1 - x e^{i theta}|^{-M} d theta,
/// computed with panels refined toward the theta = 0 peak.
double circle_kernel_mean(double x, double M);

} // namespace apq
