#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "apq/norms.hpp"

namespace apq {

/// Family of growth-space functions, one per sequence point, each normalized
/// to g_m(z_m) = (1-|z_m|^2)^{-n} and vanishing at every neighbor within the
/// cutoff. Built from truncated Blaschke products, so the off-diagonal values
/// at far points are not zero; their worst weighted magnitude is carried as
/// offdiag_residual and absorbed by the correction iteration.
struct GSystem {
    PointSequence gamma;
    double n = 1.0;
    double cutoff = 0.5;
    std::vector<AnalyticFunction> functions;
    double offdiag_residual = 0.0;  // max |g_m(z_m')| (1-|z_m'|^2)^n, m != m'
    double growth_bound = 0.0;      // max growth norm over the family
};

GSystem build_g_system(const PointSequence& gamma, double n, double r_cut);

/// Convergence certificate of the interpolation series: per-annulus sums of
/// |a_m| (1-|z_m|^2)^{n+s}. Returns the worst consecutive-annulus decay ratio
/// over the outer half of the populated annuli (<= 1/2 passes).
double summability_margin(const PointSequence& gamma, std::span<const complexd> data,
                          double n, double s);

/// Smallest exponent from {2, 3, 4, 6, 8} whose certificate passes;
/// throws SummabilityFailure when none does.
double choose_series_exponent(const PointSequence& gamma, std::span<const complexd> data,
                              double n);

/// The explicit interpolation series sum_m a_m g_m(z) (1-|z_m|^2)^{n+s} /
/// (1 - conj(z_m) z)^s over points with |z_m| <= trunc_radius.
AnalyticFunction series_interpolant(const PointSequence& gamma, std::span<const complexd> data,
                                    const GSystem& gs, double s, double trunc_radius = 1.0);

struct InterpolationResult {
    AnalyticFunction f;
    double residual = 0.0;          // l^{p,q} norm of a - R_Gamma f
    int iterations = 0;
    double gamma_contraction = 0.0; // max observed residual ratio
    double norm_f = 0.0;
};

using BaseSolver = std::function<AnalyticFunction(std::span<const complexd>)>;

/// Geometric correction: repeatedly solve for the residual data with the base
/// solver and add up the pieces. Succeeds when the residual falls below
/// tol * ||a||; throws NoContraction if the residual ratio stays >= 1 for
/// three consecutive steps.
InterpolationResult iterative_interpolant(const PointSequence& gamma,
                                          std::span<const complexd> data,
                                          const BaseSolver& base, const SpaceParams& sp,
                                          double tol, int max_iter,
                                          const QuadConfig& cfg = {});

/// Minimal-norm polynomial interpolant of degree <= N. For p = 2 the discrete
/// norm is a quadratic form in the coefficients (rotational symmetry of the
/// annuli), solved exactly at q = 2 and refined by convex descent on the
/// null space for other q. Other p fall back to the Hilbert-space objective.
InterpolationResult least_squares_interpolant(const PointSequence& gamma,
                                              std::span<const complexd> data, int degree,
                                              const SpaceParams& sp,
                                              const QuadConfig& cfg = {});

struct ConstantTrace {
    std::vector<int> degrees;
    std::vector<double> M;             // max over trials, per degree
    std::vector<std::size_t> points_used;
    double estimate = 0.0;             // value at the deepest degree
};

struct ConstantTraceOptions {
    /// Degree-N solves see the points with |z| <= 1 - kappa/N: a degree-N
    /// basis resolves the disc only to that depth, and deeper points make the
    /// finite section ill-posed regardless of density.
    double kappa = 1.2;
    QuadConfig quad;
};

/// Interpolation-constant trace: max over random unit-data trials of the
/// minimal interpolant norm, per degree. Growth along the schedule signals a
/// non-interpolating sequence; a plateau signals stability.
ConstantTrace interpolation_constant(const PointSequence& gamma, const SpaceParams& sp,
                                     int trials, std::span<const int> degree_schedule,
                                     std::uint64_t seed,
                                     const ConstantTraceOptions& opts = {});

/// Random data with unit l^{p,q} norm (complex Gaussian before scaling).
std::vector<complexd> random_unit_data(const PointSequence& gamma, const SpaceParams& sp,
                                       std::uint64_t seed);

/// Triple-norm monomial weights at p = 2: mean of |z|^{2n} over annulus j.
double annulus_monomial_mean(const Partition& part, int level, int n);

} // namespace apq
