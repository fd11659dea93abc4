#pragma once

#include <functional>
#include <span>

#include "apq/function.hpp"
#include "apq/partition.hpp"
#include "apq/sequence.hpp"
#include "apq/space.hpp"

namespace apq {

/// Norm value plus a divergence flag. `diverged` means the radial tail failed
/// its Cauchy test at working precision, i.e. the function falls outside the
/// space as far as the quadrature can tell.
struct NormResult {
    double value = 0.0;
    bool diverged = false;
};

/// M_p(r, f): L^p mean of |f| over the circle of radius r.
double integral_mean(const AnalyticFunction& f, double r, double p, const QuadConfig& cfg = {});

/// Mixed norm of A(p,q): radial L^q (weight 2r dr) of the circle means M_p.
NormResult mixed_norm(const AnalyticFunction& f, const SpaceParams& sp, const QuadConfig& cfg = {});

/// Cell-averaged discrete norm against a partition. Equivalent to mixed_norm
/// within a constant depending only on beta; the equivalence is a test target,
/// not an assumption.
double triple_norm(const AnalyticFunction& f, const SpaceParams& sp, const Partition& part,
                   const QuadConfig& cfg = {});

/// Same discrete norm applied to |f| * mask; the mask sees quadrature nodes.
double triple_norm_masked(const AnalyticFunction& f, const SpaceParams& sp,
                          const Partition& part,
                          const std::function<bool(complexd)>& mask,
                          const QuadConfig& cfg = {});

/// sup over the disc of (1-|z|^2)^n |f(z)|, approximated on a hyperbolic grid
/// with local refinement; a lower bound of the true supremum.
double growth_norm(const AnalyticFunction& f, double n, int grid_density = 256);

/// Weighted Bergman norm with area measure normalized to dA/pi (so ||1|| = 1
/// at alpha = 0; the raw-dA convention differs by pi^{1/p}).
NormResult weighted_bergman_norm(const AnalyticFunction& f, double p, double alpha,
                                 const QuadConfig& cfg = {});

/// R_Gamma f: values of f along the sequence in double-index order.
std::vector<complexd> restrict_to(const AnalyticFunction& f, const PointSequence& gamma);

/// Weighted sequence norm: ( sum_j (1-r_j)^{1+q/p} ( sum_k |a_{jk}|^p )^{q/p} )^{1/q}.
double lpq_norm(std::span<const complexd> values, const PointSequence& gamma,
                const SpaceParams& sp);

/// Closed-form mixed norm of a polynomial at p = 2 (circle means via Parseval,
/// radial panels as in mixed_norm). Matches mixed_norm to quadrature accuracy.
double mixed_norm_p2(std::span<const complexd> coeffs, double q, const QuadConfig& cfg = {});

} // namespace apq
