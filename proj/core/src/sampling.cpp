#include "apq/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "apq/interpolate.hpp"
#include "apq/parallel.hpp"
#include "apq/quadrature.hpp"

namespace apq {

int bounded_density_check(const PointSequence& gamma, const Partition& part) {
    std::map<std::pair<int, std::int64_t>, int> occupancy;
    int worst = 0;
    for (const auto& z : gamma.points()) {
        const CellIndex cell = cell_index(part, z);
        worst = std::max(worst, ++occupancy[{cell.level, cell.slot}]);
    }
    return worst;
}

namespace {

using Eigen::Index;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

MatrixXcd vandermonde(const PointSequence& gamma, int degree) {
    MatrixXcd V(static_cast<Index>(gamma.size()), degree + 1);
    for (Index m = 0; m < V.rows(); ++m) {
        complexd zp(1.0, 0.0);
        const complexd z = gamma[static_cast<std::size_t>(m)].value();
        for (Index n = 0; n <= degree; ++n) {
            V(m, n) = zp;
            zp *= z;
        }
    }
    return V;
}

// Exact p = q = 2 minimizer: smallest singular direction of
// diag(point weights)^(1/2) V diag(sqrt(n+1)).
MinRestriction min_restriction_p2q2(const PointSequence& gamma, int degree) {
    MatrixXcd A = vandermonde(gamma, degree);
    for (Index m = 0; m < A.rows(); ++m) {
        const double w = 1.0 - gamma.partition().ring_radius(
                                   gamma.index(static_cast<std::size_t>(m)).level);
        A.row(m) *= w;  // (1-r_j)^2 inside the square norm
    }
    for (Index n = 0; n <= degree; ++n) A.col(n) *= std::sqrt(n + 1.0);

    Eigen::BDCSVD<MatrixXcd> svd(A, Eigen::ComputeFullV);
    const Index k = std::min<Index>(A.rows(), A.cols()) - 1;
    const double sigma = (A.rows() <= degree) ? 0.0 : svd.singularValues()(k);
    // right singular vector in y-coordinates, mapped back to coefficients
    VectorXcd y = svd.matrixV().col(std::min<Index>(k, svd.matrixV().cols() - 1));
    std::vector<complexd> coeffs(static_cast<std::size_t>(degree) + 1);
    for (Index n = 0; n <= degree; ++n)
        coeffs[static_cast<std::size_t>(n)] = y(n) * std::sqrt(n + 1.0);
    MinRestriction out{AnalyticFunction::polynomial(std::move(coeffs)), sigma};

    if (A.rows() > degree) return out;
    // underdetermined: exact annihilation, recover a kernel direction
    VectorXcd null_dir = svd.matrixV().col(svd.matrixV().cols() - 1);
    std::vector<complexd> kc(static_cast<std::size_t>(degree) + 1);
    for (Index n = 0; n <= degree; ++n)
        kc[static_cast<std::size_t>(n)] = null_dir(n) * std::sqrt(n + 1.0);
    out.f = AnalyticFunction::polynomial(std::move(kc));
    out.ratio = 0.0;
    return out;
}

// Smooth-relaxation objective ||R f||_{l^{p,q}} with gradient, for the
// projected descent at general (p, q).
struct RestrictionObjective {
    const PointSequence& gamma;
    SpaceParams sp;
    MatrixXcd V;
    std::vector<double> level_weight;  // (1-r_j)^{1+q/p}
    double mu = 1e-18;                 // smoothing of |f|^p at zeros

    double value_and_grad(const VectorXcd& c, VectorXcd* grad) const {
        const Index rows = V.rows();
        const VectorXcd f = V * c;
        const int levels = gamma.max_level() + 1;
        std::vector<double> s(static_cast<std::size_t>(levels), 0.0);
        for (Index m = 0; m < rows; ++m)
            s[static_cast<std::size_t>(gamma.index(static_cast<std::size_t>(m)).level)] +=
                std::pow(std::norm(f(m)) + mu, 0.5 * sp.p);
        double total = 0.0;
        for (int j = 0; j < levels; ++j)
            total += level_weight[static_cast<std::size_t>(j)] *
                     std::pow(s[static_cast<std::size_t>(j)], sp.q / sp.p);
        if (grad) {
            // d total / d conj(f_m), then pull back through V
            VectorXcd df(rows);
            for (Index m = 0; m < rows; ++m) {
                const int j = gamma.index(static_cast<std::size_t>(m)).level;
                const double sj = std::max(s[static_cast<std::size_t>(j)], 1e-300);
                const double outer = level_weight[static_cast<std::size_t>(j)] *
                                     (sp.q / sp.p) * std::pow(sj, sp.q / sp.p - 1.0);
                const double inner =
                    0.5 * sp.p * std::pow(std::norm(f(m)) + mu, 0.5 * sp.p - 1.0);
                df(m) = outer * inner * f(m);
            }
            *grad = V.adjoint() * df;
        }
        return total;  // this is ||R f||^q
    }
};

// Mixed norm ||f||^q at p = 2 from coefficients, with gradient.
struct MixedNormP2 {
    std::vector<double> r;  // radial nodes
    std::vector<double> w;  // weights including the 2r factor
    double q;

    void build(const QuadConfig& cfg) {
        const RadialScheme scheme = radial_scheme(cfg.edge_refinement);
        std::vector<Panel> panels = scheme.shared;
        panels.push_back(scheme.last_dyadic);
        panels.push_back(scheme.closing);
        for (const auto& p : panels) {
            std::vector<double> nodes, weights;
            append_gauss_panel(p.a, p.b, cfg.radial_nodes, nodes, weights);
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                r.push_back(nodes[i]);
                w.push_back(weights[i] * 2.0 * nodes[i]);
            }
        }
    }

    double value_and_grad(const VectorXcd& c, VectorXcd* grad) const {
        double total = 0.0;
        if (grad) *grad = VectorXcd::Zero(c.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double r2 = r[i] * r[i];
            double p2 = 0.0;
            double rp = 1.0;
            for (Index n = 0; n < c.size(); ++n) {
                p2 += std::norm(c(n)) * rp;
                rp *= r2;
            }
            total += w[i] * std::pow(p2, 0.5 * q);
            if (grad) {
                const double outer = w[i] * 0.5 * q * std::pow(std::max(p2, 1e-300), 0.5 * q - 1.0);
                rp = 1.0;
                for (Index n = 0; n < c.size(); ++n) {
                    (*grad)(n) += outer * rp * c(n);
                    rp *= r2;
                }
            }
        }
        return total;
    }
};

} // namespace

MinRestriction min_restriction_function(const PointSequence& gamma, int degree,
                                        const SpaceParams& sp, const QuadConfig& cfg) {
    if (degree < 1) throw OutOfRange("min_restriction_function: degree must be >= 1");
    MinRestriction start = min_restriction_p2q2(gamma, degree);
    if (sp.p == 2.0 && sp.q == 2.0) return start;
    if (gamma.size() <= static_cast<std::size_t>(degree)) return start;  // exact annihilation
    if (sp.p != 2.0) {
        // Hilbert-space direction reported with the true-norm ratio.
        const auto values = restrict_to(start.f, gamma);
        start.ratio = lpq_norm(values, gamma, sp) / mixed_norm(start.f, sp, cfg).value;
        return start;
    }

    RestrictionObjective obj{gamma, sp, vandermonde(gamma, degree), {}, 1e-18};
    const int levels = gamma.max_level() + 1;
    obj.level_weight.resize(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j)
        obj.level_weight[static_cast<std::size_t>(j)] =
            std::pow(1.0 - gamma.partition().ring_radius(j), 1.0 + sp.q / sp.p);
    MixedNormP2 nrm{{}, {}, sp.q};
    nrm.build(cfg);

    const auto* start_poly = std::get_if<AnalyticFunction::Polynomial>(&start.f.repr());
    const std::vector<complexd>& start_coeffs = start_poly->coeffs;
    VectorXcd c(static_cast<Index>(start_coeffs.size()));
    for (Index n = 0; n < c.size(); ++n) c(n) = start_coeffs[static_cast<std::size_t>(n)];

    // minimize log J - log N by gradient descent with backtracking
    auto ratio_of = [&](const VectorXcd& cc, VectorXcd* grad) {
        VectorXcd gj, gn;
        const double J = obj.value_and_grad(cc, grad ? &gj : nullptr);
        const double N = nrm.value_and_grad(cc, grad ? &gn : nullptr);
        if (grad) *grad = gj / J - gn / N;
        return std::log(J) - std::log(N);
    };

    double value = ratio_of(c, nullptr);
    double step = 0.1;
    for (int it = 0; it < 200; ++it) {
        VectorXcd grad;
        ratio_of(c, &grad);
        const double gnorm = grad.norm() * c.norm();
        if (gnorm < 1e-6) break;  // relative first-order stationarity
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            VectorXcd trial = c - step * c.norm() * c.norm() * grad / std::max(grad.norm(), 1e-300);
            trial.normalize();
            const double v = ratio_of(trial, nullptr);
            if (v < value - 1e-12) {
                c = trial;
                value = v;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.4;
        }
        if (!moved) break;
    }

    std::vector<complexd> coeffs(static_cast<std::size_t>(c.size()));
    for (Index n = 0; n < c.size(); ++n) coeffs[static_cast<std::size_t>(n)] = c(n);
    MinRestriction out{AnalyticFunction::polynomial(std::move(coeffs)), 0.0};
    const auto values = restrict_to(out.f, gamma);
    out.ratio = lpq_norm(values, gamma, sp) /
                mixed_norm_p2(std::span<const complexd>(coeffs), sp.q, cfg);
    return out;
}

FrameReport frame_bounds(const PointSequence& gamma, const SpaceParams& sp,
                         std::span<const int> degree_schedule, int trials,
                         std::uint64_t seed, const QuadConfig& cfg) {
    if (degree_schedule.empty()) throw EmptySchedule("frame_bounds: empty degree schedule");
    if (trials < 1) throw OutOfRange("frame_bounds: trials must be >= 1");

    FrameReport rep;
    rep.test_corpus_size = trials * static_cast<int>(degree_schedule.size());
    rep.K1_estimate = std::numeric_limits<double>::infinity();

    for (const int degree : degree_schedule) {
        std::vector<double> ratios(static_cast<std::size_t>(trials));
        parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
            std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(degree) << 24) ^ t);
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<complexd> coeffs(static_cast<std::size_t>(degree) + 1);
            for (auto& x : coeffs) x = complexd(gauss(rng), gauss(rng));
            const AnalyticFunction f = AnalyticFunction::polynomial(coeffs);
            const double denom = (sp.p == 2.0)
                                     ? mixed_norm_p2(coeffs, sp.q, cfg)
                                     : mixed_norm(f, sp, cfg).value;
            ratios[t] = lpq_norm(restrict_to(f, gamma), gamma, sp) / denom;
        });
        double k2 = *std::max_element(ratios.begin(), ratios.end());
        double k1 = *std::min_element(ratios.begin(), ratios.end());
        k1 = std::min(k1, min_restriction_function(gamma, degree, sp, cfg).ratio);
        rep.degree_schedule.push_back(degree);
        rep.K1_trace.push_back(k1);
        rep.K2_trace.push_back(k2);
        rep.K1_estimate = std::min(rep.K1_estimate, k1);
        rep.K2_estimate = std::max(rep.K2_estimate, k2);
    }
    return rep;
}

double berezin_kernel(complexd z, complexd w, double alpha) {
    return std::pow(1.0 - std::norm(z), 2.0 + alpha) * std::pow(1.0 - std::norm(w), alpha) /
           std::pow(std::norm(1.0 - std::conj(w) * z), 2.0 + alpha);
}

namespace {

// ((alpha+1)/pi) * integral of |f(w)|^r K_alpha(z, w) dA(w); raw-dA measure so
// the paper-normalized constant is exact.
double berezin_average(const AnalyticFunction& f, complexd z, double alpha, double r_exp,
                       const QuadConfig& cfg) {
    auto g = [&](double rho) {
        double mean = 0.0;
        const int n = cfg.n_theta;
        for (int i = 0; i < n; ++i) {
            const complexd w = std::polar(rho, 2.0 * M_PI * i / n);
            mean += std::pow(std::abs(f(w)), r_exp) * berezin_kernel(z, w, alpha);
        }
        return (mean / n) * 2.0 * rho;
    };
    const RadialScheme scheme = radial_scheme(cfg.edge_refinement);
    double total = 0.0;
    for (const auto& p : scheme.shared) total += integrate_panel(g, p, cfg.radial_nodes);
    total += integrate_panel(g, scheme.last_dyadic, cfg.radial_nodes);
    total += integrate_panel(g, scheme.closing, cfg.radial_nodes);
    return (alpha + 1.0) * total;  // (alpha+1)/pi times raw dA = (alpha+1) times dA/pi
}

} // namespace

double berezin_check(const AnalyticFunction& f, const KernelParams& kp,
                     std::span<const DiscPoint> grid, const QuadConfig& cfg) {
    if (!(kp.alpha > -1.0)) throw ParameterViolation("berezin_check: alpha must exceed -1");
    if (!(kp.r_exp > 0.0)) throw ParameterViolation("berezin_check: r must be positive");
    std::vector<double> violation(grid.size(), -std::numeric_limits<double>::infinity());
    parallel_for(grid.size(), [&](std::size_t i) {
        const complexd z = grid[i].value();
        const double lhs = std::pow(std::abs(f(z)), kp.r_exp);
        const double rhs = berezin_average(f, z, kp.alpha, kp.r_exp, cfg);
        if (lhs > 0.0) violation[i] = (lhs - rhs) / lhs;
    });
    return *std::max_element(violation.begin(), violation.end());
}

GoodBadSplit good_bad_split(const AnalyticFunction& f, const KernelParams& kp, double eps,
                            const SpaceParams& sp, const QuadConfig& cfg) {
    if (!(kp.r_exp < std::min(sp.p, sp.q)))
        throw ParameterViolation("good_bad_split: r must stay below min(p, q)");
    if (!(kp.alpha > kp.r_exp / sp.q - 1.0))
        throw ParameterViolation("good_bad_split: alpha must exceed r/q - 1");
    if (eps < 0.0) throw ParameterViolation("good_bad_split: eps must be nonnegative");

    // Shared polar grid: the bad set is decided at the quadrature nodes and the
    // masked norms are read from the same nodes.
    QuadConfig outer = cfg;
    outer.edge_refinement = std::min(outer.edge_refinement, 6);
    outer.radial_nodes = std::min(outer.radial_nodes, 10);
    QuadConfig inner;
    inner.n_theta = 128;
    inner.radial_nodes = 10;
    inner.edge_refinement = 6;

    const RadialScheme scheme = radial_scheme(outer.edge_refinement);
    std::vector<double> radii, weights;
    for (const auto& p : scheme.shared)
        append_gauss_panel(p.a, p.b, outer.radial_nodes, radii, weights);
    append_gauss_panel(scheme.last_dyadic.a, scheme.last_dyadic.b, outer.radial_nodes, radii,
                       weights);
    append_gauss_panel(scheme.closing.a, scheme.closing.b, outer.radial_nodes, radii, weights);

    const int n_theta = 64;
    const std::size_t n_r = radii.size();
    std::vector<double> mp_all(n_r, 0.0), mp_bad(n_r, 0.0), mp_good(n_r, 0.0);
    parallel_for(n_r, [&](std::size_t i) {
        const double r = radii[i];
        double all = 0.0, bad = 0.0, good = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const complexd z = std::polar(r, 2.0 * M_PI * k / n_theta);
            const double fp = std::pow(std::abs(f(z)), sp.p);
            const double lhs = std::pow(std::abs(f(z)), kp.r_exp);
            const double rhs = berezin_average(f, z, kp.alpha, kp.r_exp, inner);
            all += fp;
            if (lhs <= eps * rhs)
                bad += fp;
            else
                good += fp;
        }
        mp_all[i] = all / n_theta;
        mp_bad[i] = bad / n_theta;
        mp_good[i] = good / n_theta;
    });

    auto norm_of = [&](const std::vector<double>& mp) {
        double total = 0.0;
        for (std::size_t i = 0; i < n_r; ++i)
            total += weights[i] * 2.0 * radii[i] * std::pow(mp[i], sp.q / sp.p);
        return std::pow(total, 1.0 / sp.q);
    };

    GoodBadSplit split;
    split.eps = eps;
    const double base = norm_of(mp_all);
    split.bad_fraction_norm = (base > 0.0) ? norm_of(mp_bad) / base : 0.0;
    split.good_norm_ratio = (base > 0.0) ? norm_of(mp_good) / base : 0.0;
    return split;
}

SchurReport schur_test(double alpha, double q, double eps_exponent) {
    if (!(q > 1.0)) throw ParameterViolation("schur_test: q must exceed 1");
    if (!(alpha > -1.0)) throw ParameterViolation("schur_test: alpha must exceed -1");
    const double qp = q / (q - 1.0);

    SchurReport rep;
    rep.window_lo = std::max(-(2.0 + alpha) / qp, -alpha / q);
    rep.window_hi = std::min((1.0 + alpha) / qp, (3.0 + alpha) / q);
    rep.feasible = rep.window_lo < rep.window_hi;
    if (!rep.feasible)
        throw InfeasibleWindow("schur_test: empty eps-window (alpha <= 1/q - 1)");
    rep.eps = eps_exponent;
    if (!(eps_exponent > rep.window_lo && eps_exponent < rep.window_hi))
        throw ParameterViolation("schur_test: eps outside the admissible window");

    auto kernel = [&](double r, double rho) {
        return std::pow(1.0 - r * r, 2.0 + alpha) * std::pow(1.0 - rho * rho, alpha) /
               std::pow(1.0 - r * rho, 3.0 + 2.0 * alpha);
    };

    const RadialScheme scheme = radial_scheme(14);
    std::vector<Panel> panels = scheme.shared;
    panels.push_back(scheme.last_dyadic);
    panels.push_back(scheme.closing);
    auto integrate = [&](const std::function<double(double)>& g) {
        double total = 0.0;
        for (const auto& p : panels) total += integrate_panel(g, p, 20);
        return total;
    };

    std::vector<double> grid;
    for (double u = 1.0; u >= 1e-4; u *= 0.5) grid.push_back(1.0 - u);

    for (double r : grid) {
        const double lhs = integrate([&](double rho) {
            return kernel(r, rho) * std::pow(1.0 - rho * rho, -eps_exponent * qp) * 2.0 * rho;
        });
        rep.C1 = std::max(rep.C1, lhs * std::pow(1.0 - r * r, eps_exponent * qp));
    }
    for (double rho : grid) {
        const double lhs = integrate([&](double r) {
            return kernel(r, rho) * std::pow(1.0 - r * r, -eps_exponent * q) * 2.0 * r;
        });
        rep.C2 = std::max(rep.C2, lhs * std::pow(1.0 - rho * rho, eps_exponent * q));
    }
    rep.bound = std::pow(rep.C1, 1.0 / qp) * std::pow(rep.C2, 1.0 / q);

    // Discretized-operator lower bound on the L^q(2r dr) norm: transported to
    // plain l^q and run through the nonnegative power iteration.
    const int n = 400;
    Eigen::MatrixXd M(n, n);
    const double h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double rho = (j + 0.5) * h;
            M(i, j) = std::pow(2.0 * r * h, 1.0 / q) * kernel(r, rho) *
                      std::pow(2.0 * rho * h, 1.0 - 1.0 / q);
        }
    }
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    auto lq_norm = [&](const Eigen::VectorXd& v, double e) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(std::fabs(v(i)), e);
        return std::pow(s, 1.0 / e);
    };
    double ratio = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd y = M * x;
        ratio = lq_norm(y, q) / lq_norm(x, q);
        // duality map iteration for the l^q -> l^q operator norm
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) z(i) = std::pow(std::fabs(y(i)), q - 1.0);
        Eigen::VectorXd xt = M.transpose() * z;
        for (int i = 0; i < n; ++i) x(i) = std::pow(std::fabs(xt(i)), qp - 1.0);
        x /= lq_norm(x, q);
    }
    rep.empirical_norm = ratio;
    return rep;
}

} // namespace apq
