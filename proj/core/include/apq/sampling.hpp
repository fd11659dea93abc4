#pragma once

#include <cstdint>
#include <span>

#include "apq/norms.hpp"

namespace apq {

/// Frame-bound traces K1 <= ||R f|| / ||f|| <= K2 over polynomial test spaces.
/// Finite sections cannot certify the frame inequality, so the report carries
/// degree-indexed traces, never a verdict.
struct FrameReport {
    double K1_estimate = 0.0;
    double K2_estimate = 0.0;
    std::vector<int> degree_schedule;
    std::vector<double> K1_trace;
    std::vector<double> K2_trace;
    int test_corpus_size = 0;
};

/// Exact maximum cell occupancy of the sequence against a partition
/// (bounded density / Carleson diagnostic).
int bounded_density_check(const PointSequence& gamma, const Partition& part);

FrameReport frame_bounds(const PointSequence& gamma, const SpaceParams& sp,
                         std::span<const int> degree_schedule, int trials,
                         std::uint64_t seed, const QuadConfig& cfg = {});

struct MinRestriction {
    AnalyticFunction f;
    double ratio = 0.0;  // ||R f||_{l^{p,q}} / ||f||_{A(p,q)}
};

/// Adversarial direction for K1: minimizes the restriction ratio over
/// degree-N polynomials. Exact smallest-singular-direction solve at p = q = 2;
/// elsewhere that direction seeds a projected descent on a smooth relaxation.
MinRestriction min_restriction_function(const PointSequence& gamma, int degree,
                                        const SpaceParams& sp, const QuadConfig& cfg = {});

struct KernelParams {
    double alpha = 0.0;  // > -1
    double r_exp = 1.0;  // the averaging exponent r
};

/// Berezin-type kernel (1-|z|^2)^{2+alpha} (1-|w|^2)^alpha / |1 - conj(w) z|^{4+2 alpha}.
double berezin_kernel(complexd z, complexd w, double alpha);

/// Pointwise mean-dominance check: |f(z)|^r <= ((alpha+1)/pi) * integral of
/// |f|^r K_alpha dA. Returns the worst relative violation (LHS-RHS)/LHS over
/// the grid; the inequality holds exactly, so positive values beyond
/// quadrature error indicate a defect.
double berezin_check(const AnalyticFunction& f, const KernelParams& kp,
                     std::span<const DiscPoint> grid, const QuadConfig& cfg = {});

struct GoodBadSplit {
    double eps = 0.0;
    double bad_fraction_norm = 0.0;  // ||f chi_B|| / ||f||
    double good_norm_ratio = 0.0;    // ||f chi_G|| / ||f||
};

/// Splits the disc into the eps-bad set (points whose value is dominated by
/// eps times its Berezin average) and its complement, and reports the masked
/// mixed-norm fractions.
GoodBadSplit good_bad_split(const AnalyticFunction& f, const KernelParams& kp, double eps,
                            const SpaceParams& sp, const QuadConfig& cfg = {});

struct SchurReport {
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool feasible = false;
    double eps = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double bound = 0.0;           // C1^{1/q'} C2^{1/q}
    double empirical_norm = 0.0;  // discretized-operator lower bound
};

/// Schur boundedness test for the radial kernel
/// (1-r^2)^{2+alpha} (1-rho^2)^alpha / (1-r rho)^{3+2 alpha} on L^q(2r dr),
/// with test functions h = (1-rho^2)^{-eps}. Throws InfeasibleWindow when the
/// admissible eps-window is empty (alpha <= 1/q - 1).
SchurReport schur_test(double alpha, double q, double eps_exponent);

} // namespace apq
