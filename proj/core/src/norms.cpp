#include "apq/norms.hpp"

#include <algorithm>
#include <cmath>

#include "apq/quadrature.hpp"

namespace apq {

namespace {

constexpr double kDivergedTol = 1e-3;  // Cauchy test on the last two refinements

int angular_nodes(const AnalyticFunction& f, const QuadConfig& cfg) {
    // keep p = 2 circle means exact for polynomials via trigonometric exactness
    if (const auto deg = f.degree())
        return std::max(cfg.n_theta, 4 * (*deg + 1));
    return cfg.n_theta;
}

double circle_mean_abs_pow(const AnalyticFunction& f, double r, double p, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        sum += std::pow(std::abs(f(std::polar(r, t))), p);
    }
    return sum / n;
}

// Flattens polynomial-valued representations to coefficients (ascending).
std::optional<std::vector<complexd>> poly_coeffs(const AnalyticFunction& f) {
    using AF = AnalyticFunction;
    if (!f.degree()) return std::nullopt;
    struct Visitor {
        std::optional<std::vector<complexd>> operator()(const AF::Polynomial& p) const {
            return p.coeffs;
        }
        std::optional<std::vector<complexd>> operator()(const AF::KernelTerm&) const {
            return std::nullopt;
        }
        std::optional<std::vector<complexd>> operator()(const AF::BlaschkeProduct&) const {
            return std::nullopt;
        }
        std::optional<std::vector<complexd>> operator()(const AF::Sum& s) const {
            std::vector<complexd> acc;
            for (const auto& part : s.parts) {
                auto c = poly_coeffs(part);
                if (!c) return std::nullopt;
                if (c->size() > acc.size()) acc.resize(c->size(), complexd(0.0, 0.0));
                for (std::size_t i = 0; i < c->size(); ++i) acc[i] += (*c)[i];
            }
            if (acc.empty()) acc.push_back(complexd(0.0, 0.0));
            return acc;
        }
        std::optional<std::vector<complexd>> operator()(const AF::Product& p) const {
            std::vector<complexd> acc{complexd(1.0, 0.0)};
            for (const auto& part : p.parts) {
                auto c = poly_coeffs(part);
                if (!c) return std::nullopt;
                std::vector<complexd> next(acc.size() + c->size() - 1, complexd(0.0, 0.0));
                for (std::size_t i = 0; i < acc.size(); ++i)
                    for (std::size_t j = 0; j < c->size(); ++j)
                        next[i + j] += acc[i] * (*c)[j];
                acc = std::move(next);
            }
            return acc;
        }
    };
    return std::visit(Visitor{}, f.repr());
}

struct TailSums {
    double shared = 0.0;
    double last_dyadic = 0.0;
    double closing = 0.0;
    double closing_prev = 0.0;
};

TailSums radial_sums(const std::function<double(double)>& g, const QuadConfig& cfg) {
    const RadialScheme scheme = radial_scheme(cfg.edge_refinement);
    TailSums sums;
    for (const auto& panel : scheme.shared)
        sums.shared += integrate_panel(g, panel, cfg.radial_nodes);
    sums.last_dyadic = integrate_panel(g, scheme.last_dyadic, cfg.radial_nodes);
    sums.closing = integrate_panel(g, scheme.closing, cfg.radial_nodes);
    sums.closing_prev = integrate_panel(g, scheme.closing_prev, cfg.radial_nodes);
    return sums;
}

NormResult norm_from_sums(const TailSums& sums, double root_exponent) {
    const double full = sums.shared + sums.last_dyadic + sums.closing;
    const double prev = sums.shared + sums.closing_prev;
    NormResult res;
    res.value = std::pow(std::max(full, 0.0), 1.0 / root_exponent);
    if (res.value > 0.0) {
        const double prev_value = std::pow(std::max(prev, 0.0), 1.0 / root_exponent);
        res.diverged = std::fabs(res.value - prev_value) > kDivergedTol * res.value;
    }
    return res;
}

} // namespace

double integral_mean(const AnalyticFunction& f, double r, double p, const QuadConfig& cfg) {
    cfg.validate();
    if (!(r >= 0.0 && r < 1.0)) throw OutOfRange("integral_mean: r must lie in [0,1)");
    if (!(p > 0.0)) throw OutOfRange("integral_mean: p must be positive");
    return std::pow(circle_mean_abs_pow(f, r, p, angular_nodes(f, cfg)), 1.0 / p);
}

NormResult mixed_norm(const AnalyticFunction& f, const SpaceParams& sp, const QuadConfig& cfg) {
    cfg.validate();
    if (sp.p == 2.0) {
        if (const auto coeffs = poly_coeffs(f)) {
            NormResult res;
            res.value = mixed_norm_p2(*coeffs, sp.q, cfg);
            return res;
        }
    }
    const int n = angular_nodes(f, cfg);
    auto g = [&](double r) {
        return std::pow(circle_mean_abs_pow(f, r, sp.p, n), sp.q / sp.p) * 2.0 * r;
    };
    return norm_from_sums(radial_sums(g, cfg), sp.q);
}

double mixed_norm_p2(std::span<const complexd> coeffs, double q, const QuadConfig& cfg) {
    cfg.validate();
    auto g = [&](double r) {
        double m2 = 0.0;
        double rp = 1.0;
        const double r2 = r * r;
        for (const auto& c : coeffs) {
            m2 += std::norm(c) * rp;
            rp *= r2;
        }
        return std::pow(m2, 0.5 * q) * 2.0 * r;
    };
    const TailSums sums = radial_sums(g, cfg);
    return std::pow(std::max(sums.shared + sums.last_dyadic + sums.closing, 0.0), 1.0 / q);
}

namespace {

// (1/|A_j|) * integral over A_j of |f|^p (mask optional), via Gauss panels in r
// and the trapezoidal circle rule. The per-cell sum of the discrete norm
// collapses to this annulus average because cells within an annulus have equal
// area and (1 - r_j) L^j = 1.
double annulus_mean(const AnalyticFunction& f, double p, const Partition& part, int j,
                    int n_theta, int radial_nodes,
                    const std::function<bool(complexd)>* mask) {
    const double a = part.ring_radius(j);
    const double b = part.ring_radius(j + 1);
    auto mean_at = [&](double r) {
        if (!mask) return circle_mean_abs_pow(f, r, p, n_theta);
        double sum = 0.0;
        for (int i = 0; i < n_theta; ++i) {
            const complexd z = std::polar(r, 2.0 * M_PI * i / n_theta);
            if ((*mask)(z)) sum += std::pow(std::abs(f(z)), p);
        }
        return sum / n_theta;
    };
    auto g = [&](double r) { return mean_at(r) * 2.0 * r; };

    double integral = 0.0;
    if (j == 0) {
        // fractional powers of r can kink at the origin; refine toward 0
        double hi = b;
        for (int s = 0; s < 4; ++s) {
            const double lo = hi / 2.0;
            integral += integrate_panel(g, Panel{lo, hi}, radial_nodes);
            hi = lo;
        }
        integral += integrate_panel(g, Panel{0.0, hi}, radial_nodes);
    } else {
        integral += integrate_panel(g, Panel{a, b}, radial_nodes);
    }
    return integral / (b * b - a * a);
}

double triple_norm_impl(const AnalyticFunction& f, const SpaceParams& sp, const Partition& part,
                        const QuadConfig& cfg, const std::function<bool(complexd)>* mask) {
    cfg.validate();
    const int n = angular_nodes(f, cfg);
    double total = 0.0;
    for (int j = 0; j < part.levels(); ++j) {
        const double mean = annulus_mean(f, sp.p, part, j, n, cfg.radial_nodes, mask);
        total += (1.0 - part.ring_radius(j)) * std::pow(mean, sp.q / sp.p);
    }
    return std::pow(total, 1.0 / sp.q);
}

} // namespace

double triple_norm(const AnalyticFunction& f, const SpaceParams& sp, const Partition& part,
                   const QuadConfig& cfg) {
    return triple_norm_impl(f, sp, part, cfg, nullptr);
}

double triple_norm_masked(const AnalyticFunction& f, const SpaceParams& sp,
                          const Partition& part,
                          const std::function<bool(complexd)>& mask,
                          const QuadConfig& cfg) {
    return triple_norm_impl(f, sp, part, cfg, &mask);
}

double growth_norm(const AnalyticFunction& f, double n, int grid_density) {
    if (!(n > 0.0)) throw OutOfRange("growth_norm: n must be positive");
    constexpr double kEdgeCap = 1.0 - 1e-4;  // double-precision reliability cap
    const int angles = std::max(32, grid_density);

    auto objective = [&](double r, double t) {
        const complexd z = std::polar(r, t);
        return std::pow(1.0 - r * r, n) * std::abs(f(z));
    };

    double best = std::abs(f(complexd(0.0, 0.0)));
    double best_r = 0.0, best_t = 0.0;
    double ring_gap = 0.3;
    for (double u = 1.0; u >= 1e-4; u *= 0.7) {
        const double r = std::min(kEdgeCap, 1.0 - u);
        if (r <= 0.0) continue;
        for (int k = 0; k < angles; ++k) {
            const double t = 2.0 * M_PI * k / angles;
            const double v = objective(r, t);
            if (v > best) {
                best = v;
                best_r = r;
                best_t = t;
            }
        }
    }

    // local refinement around the grid argmax
    double dr = ring_gap * (1.0 - best_r);
    double dt = 2.0 * M_PI / angles;
    for (int round = 0; round < 10; ++round) {
        double local_best = best, local_r = best_r, local_t = best_t;
        for (int a = -4; a <= 4; ++a) {
            const double r = std::clamp(best_r + dr * a / 4.0, 0.0, kEdgeCap);
            for (int b = -4; b <= 4; ++b) {
                const double t = best_t + dt * b / 4.0;
                const double v = objective(r, t);
                if (v > local_best) {
                    local_best = v;
                    local_r = r;
                    local_t = t;
                }
            }
        }
        best = local_best;
        best_r = local_r;
        best_t = local_t;
        dr *= 0.4;
        dt *= 0.4;
    }
    return best;
}

NormResult weighted_bergman_norm(const AnalyticFunction& f, double p, double alpha,
                                 const QuadConfig& cfg) {
    cfg.validate();
    if (!(alpha > -1.0)) throw OutOfRange("weighted_bergman_norm: alpha must exceed -1");
    if (!(p > 0.0)) throw OutOfRange("weighted_bergman_norm: p must be positive");
    const int n = angular_nodes(f, cfg);
    auto g = [&](double r) {
        return circle_mean_abs_pow(f, r, p, n) * std::pow(1.0 - r * r, alpha) * 2.0 * r;
    };
    return norm_from_sums(radial_sums(g, cfg), p);
}

std::vector<complexd> restrict_to(const AnalyticFunction& f, const PointSequence& gamma) {
    std::vector<complexd> values;
    values.reserve(gamma.size());
    for (const auto& z : gamma.points()) values.push_back(f(z.value()));
    return values;
}

double lpq_norm(std::span<const complexd> values, const PointSequence& gamma,
                const SpaceParams& sp) {
    if (values.size() != gamma.size())
        throw LengthMismatch("lpq_norm: values and sequence lengths differ");
    if (values.empty()) return 0.0;
    const int levels = gamma.max_level() + 1;
    std::vector<double> level_sum(static_cast<std::size_t>(levels), 0.0);
    for (std::size_t m = 0; m < values.size(); ++m)
        level_sum[static_cast<std::size_t>(gamma.index(m).level)] +=
            std::pow(std::abs(values[m]), sp.p);
    double total = 0.0;
    for (int j = 0; j < levels; ++j) {
        if (level_sum[static_cast<std::size_t>(j)] == 0.0) continue;
        const double w = std::pow(1.0 - gamma.partition().ring_radius(j), 1.0 + sp.q / sp.p);
        total += w * std::pow(level_sum[static_cast<std::size_t>(j)], sp.q / sp.p);
    }
    return std::pow(total, 1.0 / sp.q);
}

} // namespace apq
