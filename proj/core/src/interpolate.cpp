#include "apq/interpolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "apq/parallel.hpp"

namespace apq {

double annulus_monomial_mean(const Partition& part, int level, int n) {
    const double a = part.ring_radius(level);
    const double b = part.ring_radius(level + 1);
    const double a2 = a * a, b2 = b * b;
    return (std::pow(b2, n + 1) - std::pow(a2, n + 1)) / ((n + 1) * (b2 - a2));
}

GSystem build_g_system(const PointSequence& gamma, double n, double r_cut) {
    if (!(n > 0.0)) throw OutOfRange("build_g_system: n must be positive");
    if (!(r_cut > 0.0 && r_cut < 1.0)) throw OutOfRange("build_g_system: r_cut in (0,1)");
    if (gamma.size() == 0) throw TooFewPoints("build_g_system: empty sequence");
    if (gamma.size() >= 2 && separation(gamma) <= 0.0)
        throw NotSeparated("build_g_system: sequence is not uniformly discrete");

    GSystem gs{gamma, n, r_cut, {}, 0.0, 0.0};
    gs.functions.reserve(gamma.size());
    for (std::size_t m = 0; m < gamma.size(); ++m) {
        const complexd zm = gamma[m].value();
        std::vector<DiscPoint> nodes;
        complexd denom(1.0, 0.0);
        for (std::size_t mm = 0; mm < gamma.size(); ++mm) {
            if (mm == m) continue;
            if (pseudo_distance(gamma[mm], gamma[m]) < r_cut) {
                nodes.push_back(gamma[mm]);
                denom *= mobius(gamma[mm].value(), zm);
            }
        }
        const complexd scale =
            std::pow(1.0 - std::norm(zm), -n) / denom;
        gs.functions.push_back(AnalyticFunction::blaschke(std::move(nodes), scale));
    }

    for (std::size_t m = 0; m < gamma.size(); ++m) {
        for (std::size_t mm = 0; mm < gamma.size(); ++mm) {
            if (mm == m) continue;
            const double w = std::pow(1.0 - std::norm(gamma[mm].value()), n);
            gs.offdiag_residual =
                std::max(gs.offdiag_residual, std::abs(gs.functions[m](gamma[mm])) * w);
        }
    }
    for (const auto& g : gs.functions)
        gs.growth_bound = std::max(gs.growth_bound, growth_norm(g, n, 64));
    return gs;
}

double summability_margin(const PointSequence& gamma, std::span<const complexd> data,
                          double n, double s) {
    if (data.size() != gamma.size())
        throw LengthMismatch("summability_margin: data length mismatch");
    const int levels = gamma.max_level() + 1;
    std::vector<double> level_sum(static_cast<std::size_t>(levels), 0.0);
    for (std::size_t m = 0; m < gamma.size(); ++m) {
        const double u = 1.0 - std::norm(gamma[m].value());
        level_sum[static_cast<std::size_t>(gamma.index(m).level)] +=
            std::abs(data[m]) * std::pow(u, n + s);
    }
    std::vector<double> populated;
    for (double v : level_sum)
        if (v > 0.0) populated.push_back(v);
    if (populated.size() < 2) return 0.0;
    const std::size_t start = populated.size() / 2;
    double worst = 0.0;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < populated.size(); ++i)
        worst = std::max(worst, populated[i] / populated[i - 1]);
    return worst;
}

double choose_series_exponent(const PointSequence& gamma, std::span<const complexd> data,
                              double n) {
    for (double s : {2.0, 3.0, 4.0, 6.0, 8.0})
        if (summability_margin(gamma, data, n, s) <= 0.5) return s;
    throw SummabilityFailure("choose_series_exponent: no exponent up to 8 passes the certificate");
}

AnalyticFunction series_interpolant(const PointSequence& gamma, std::span<const complexd> data,
                                    const GSystem& gs, double s, double trunc_radius) {
    if (data.size() != gamma.size())
        throw LengthMismatch("series_interpolant: data length mismatch");
    if (gs.gamma.size() != gamma.size())
        throw LengthMismatch("series_interpolant: g-system built for another sequence");
    if (summability_margin(gamma, data, gs.n, s) > 0.5)
        throw SummabilityFailure("series_interpolant: tail-decay certificate failed; raise s");

    std::vector<AnalyticFunction> terms;
    for (std::size_t m = 0; m < gamma.size(); ++m) {
        if (gamma[m].abs() > trunc_radius) continue;
        if (data[m] == complexd(0.0, 0.0)) continue;
        terms.push_back(AnalyticFunction::product(
            {gs.functions[m],
             AnalyticFunction::kernel_term(gamma[m].value(), s, data[m], gs.n + s)}));
    }
    return AnalyticFunction::sum(std::move(terms));
}

InterpolationResult iterative_interpolant(const PointSequence& gamma,
                                          std::span<const complexd> data,
                                          const BaseSolver& base, const SpaceParams& sp,
                                          double tol, int max_iter,
                                          const QuadConfig& cfg) {
    if (data.size() != gamma.size())
        throw LengthMismatch("iterative_interpolant: data length mismatch");

    InterpolationResult result;
    const double data_norm = lpq_norm(data, gamma, sp);
    if (data_norm == 0.0) {
        result.f = AnalyticFunction::constant(0.0);
        return result;
    }

    std::vector<complexd> v(data.begin(), data.end());
    std::vector<AnalyticFunction> parts;
    double prev_res = data_norm;
    int stall = 0;
    for (int it = 0; it < max_iter; ++it) {
        parts.push_back(base(v));
        const auto values = restrict_to(parts.back(), gamma);
        for (std::size_t m = 0; m < v.size(); ++m) v[m] -= values[m];
        const double res = lpq_norm(v, gamma, sp);
        result.iterations = it + 1;
        const double ratio = res / prev_res;
        result.gamma_contraction = std::max(result.gamma_contraction, ratio);
        if (ratio >= 1.0) {
            if (++stall >= 3)
                throw NoContraction("iterative_interpolant: residual ratio >= 1 for 3 steps");
        } else {
            stall = 0;
        }
        prev_res = res;
        if (res <= tol * data_norm) {
            result.residual = res;
            result.f = AnalyticFunction::sum(std::move(parts));
            result.norm_f = mixed_norm(result.f, sp, cfg).value;
            return result;
        }
    }
    throw NoConvergence("iterative_interpolant: step budget exhausted");
}

namespace {

using Eigen::Index;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

struct TripleNormWeights {
    std::vector<double> ring_weight;           // (1 - r_j) per level
    std::vector<std::vector<double>> mono;     // mono[j][n] = annulus mean of |z|^{2n}
    std::vector<double> diag;                  // diag[n] = sum_j ring * mono (q = 2 form)
};

TripleNormWeights triple_weights(const Partition& part, int degree) {
    TripleNormWeights w;
    const int levels = part.levels();
    w.ring_weight.resize(static_cast<std::size_t>(levels));
    w.mono.resize(static_cast<std::size_t>(levels));
    w.diag.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 0; j < levels; ++j) {
        w.ring_weight[static_cast<std::size_t>(j)] = 1.0 - part.ring_radius(j);
        auto& row = w.mono[static_cast<std::size_t>(j)];
        row.resize(static_cast<std::size_t>(degree) + 1);
        for (int n = 0; n <= degree; ++n) {
            row[static_cast<std::size_t>(n)] = annulus_monomial_mean(part, j, n);
            w.diag[static_cast<std::size_t>(n)] +=
                w.ring_weight[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(n)];
        }
    }
    return w;
}

// Convex descent on the null space for the p = 2, q > 2 triple-norm objective.
VectorXcd refine_q(const TripleNormWeights& w, double q, const MatrixXcd& null_basis,
                   VectorXcd y, const VectorXd& inv_sqrt_diag) {
    if (null_basis.cols() == 0) return y;
    const Index levels = static_cast<Index>(w.mono.size());
    const Index dim = y.size();

    auto coeffs_of = [&](const VectorXcd& yy) {
        VectorXcd c(dim);
        for (Index n = 0; n < dim; ++n) c(n) = yy(n) * inv_sqrt_diag(n);
        return c;
    };
    auto objective = [&](const VectorXcd& yy) {
        const VectorXcd c = coeffs_of(yy);
        double total = 0.0;
        for (Index j = 0; j < levels; ++j) {
            double s = 0.0;
            for (Index n = 0; n < dim; ++n)
                s += w.mono[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                     std::norm(c(n));
            total += w.ring_weight[static_cast<std::size_t>(j)] * std::pow(s, 0.5 * q);
        }
        return total;
    };
    auto gradient_y = [&](const VectorXcd& yy) {
        const VectorXcd c = coeffs_of(yy);
        std::vector<double> s(static_cast<std::size_t>(levels), 0.0);
        for (Index j = 0; j < levels; ++j)
            for (Index n = 0; n < dim; ++n)
                s[static_cast<std::size_t>(j)] +=
                    w.mono[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                    std::norm(c(n));
        VectorXcd g = VectorXcd::Zero(dim);
        for (Index j = 0; j < levels; ++j) {
            const double factor = w.ring_weight[static_cast<std::size_t>(j)] * 0.5 * q *
                                  std::pow(std::max(s[static_cast<std::size_t>(j)], 1e-300),
                                           0.5 * q - 1.0);
            for (Index n = 0; n < dim; ++n)
                g(n) += factor *
                        w.mono[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                        c(n) * inv_sqrt_diag(n);
        }
        return g;
    };

    double phi = objective(y);
    double step = 1.0;
    for (int it = 0; it < 400; ++it) {
        const VectorXcd gu = null_basis.adjoint() * gradient_y(y);
        const double gnorm = gu.norm();
        if (gnorm <= 1e-12 * std::max(phi, 1e-300)) break;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt) {
            const VectorXcd trial = y - step * (null_basis * gu);
            const double phi_trial = objective(trial);
            if (phi_trial < phi - 1e-12 * std::fabs(phi)) {
                y = trial;
                if (phi - phi_trial < 1e-11 * std::max(phi, 1e-300)) {
                    phi = phi_trial;
                    return y;
                }
                phi = phi_trial;
                step *= 1.6;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return y;
}

} // namespace

InterpolationResult least_squares_interpolant(const PointSequence& gamma,
                                              std::span<const complexd> data, int degree,
                                              const SpaceParams& sp,
                                              const QuadConfig& cfg) {
    if (data.size() != gamma.size())
        throw LengthMismatch("least_squares_interpolant: data length mismatch");
    if (degree < 0) throw OutOfRange("least_squares_interpolant: degree must be >= 0");
    const auto rows = static_cast<Index>(gamma.size());
    const Index cols = degree + 1;
    if (rows > cols)
        throw RankDeficient("least_squares_interpolant: more points than basis functions");

    InterpolationResult result;
    const double data_norm = lpq_norm(data, gamma, sp);
    if (data_norm == 0.0) {
        result.f = AnalyticFunction::constant(0.0);
        return result;
    }

    const TripleNormWeights w = triple_weights(gamma.partition(), degree);
    VectorXd inv_sqrt(cols);
    for (Index n = 0; n < cols; ++n)
        inv_sqrt(n) = 1.0 / std::sqrt(w.diag[static_cast<std::size_t>(n)]);

    // scaled Vandermonde: row m, column n is z_m^n / sqrt(diag_n)
    MatrixXcd B(rows, cols);
    for (Index m = 0; m < rows; ++m) {
        complexd zp(1.0, 0.0);
        const complexd z = gamma[static_cast<std::size_t>(m)].value();
        for (Index n = 0; n < cols; ++n) {
            B(m, n) = zp * inv_sqrt(n);
            zp *= z;
        }
    }
    VectorXcd rhs(rows);
    for (Index m = 0; m < rows; ++m) rhs(m) = data[static_cast<std::size_t>(m)];

    Eigen::BDCSVD<MatrixXcd> svd(B, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd.setThreshold(1e-13);
    if (svd.rank() < rows)
        throw RankDeficient("least_squares_interpolant: constraint matrix lost row rank");
    VectorXcd y = svd.solve(rhs);

    if (sp.p == 2.0 && sp.q > 2.0 && cols > rows) {
        const MatrixXcd null_basis = svd.matrixV().rightCols(cols - svd.rank());
        y = refine_q(w, sp.q, null_basis, y, inv_sqrt);
    }

    std::vector<complexd> coeffs(static_cast<std::size_t>(cols));
    for (Index n = 0; n < cols; ++n)
        coeffs[static_cast<std::size_t>(n)] = y(n) * inv_sqrt(n);
    result.f = AnalyticFunction::polynomial(coeffs);

    const auto values = restrict_to(result.f, gamma);
    std::vector<complexd> err(values.size());
    for (std::size_t m = 0; m < values.size(); ++m) err[m] = data[m] - values[m];
    result.residual = lpq_norm(err, gamma, sp);
    result.norm_f = (sp.p == 2.0) ? mixed_norm_p2(coeffs, sp.q, cfg)
                                  : mixed_norm(result.f, sp, cfg).value;
    return result;
}

std::vector<complexd> random_unit_data(const PointSequence& gamma, const SpaceParams& sp,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complexd> data(gamma.size());
    for (auto& a : data) a = complexd(gauss(rng), gauss(rng));
    const double norm = lpq_norm(data, gamma, sp);
    for (auto& a : data) a /= norm;
    return data;
}

ConstantTrace interpolation_constant(const PointSequence& gamma, const SpaceParams& sp,
                                     int trials, std::span<const int> degree_schedule,
                                     std::uint64_t seed,
                                     const ConstantTraceOptions& opts) {
    if (degree_schedule.empty()) throw EmptySchedule("interpolation_constant: empty schedule");
    if (trials < 1) throw OutOfRange("interpolation_constant: trials must be >= 1");

    ConstantTrace trace;
    for (const int degree : degree_schedule) {
        PointSequence section = gamma.truncated(1.0 - opts.kappa / degree);
        if (section.size() == 0) section = gamma.head(1);
        if (section.size() > static_cast<std::size_t>(degree) + 1)
            section = section.head(static_cast<std::size_t>(degree) + 1);

        std::vector<double> norms(static_cast<std::size_t>(trials), 0.0);
        parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
            const auto data = random_unit_data(
                section, sp, seed ^ (static_cast<std::uint64_t>(degree) << 32) ^ t);
            norms[t] = least_squares_interpolant(section, data, degree, sp, opts.quad).norm_f;
        });
        trace.degrees.push_back(degree);
        trace.M.push_back(*std::max_element(norms.begin(), norms.end()));
        trace.points_used.push_back(section.size());
    }
    trace.estimate = trace.M.back();
    return trace;
}

} // namespace apq
