#include "apq/density.hpp"

#include <algorithm>
#include <cmath>

#include "apq/parallel.hpp"

namespace apq {

namespace {

// For one center: quotient values for every r in the (increasing) schedule.
// Reformulated form: sum of log(1/rho) over 1/2 < rho < r, divided by
// log(1/(1-r)). Integral form: sum of (r - rho)^+ over the hyperbolic
// area normalization 2*pi*(atanh r - r).
void quotients_at(const PointSequence& gamma, complexd zeta,
                  const std::vector<double>& schedule, bool integral_form,
                  std::vector<double>& out) {
    const double r_max = schedule.back();
    std::vector<double> rho;
    rho.reserve(gamma.size());
    for (const auto& z : gamma.points()) {
        const double d = pseudo_distance(zeta, z.value());
        if (d < r_max && d > 0.0) rho.push_back(d);
    }
    std::sort(rho.begin(), rho.end());

    out.assign(schedule.size(), 0.0);
    if (integral_form) {
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            const double r = schedule[i];
            double num = 0.0;
            for (double d : rho) {
                if (d >= r) break;
                num += r - d;
            }
            out[i] = num / (2.0 * M_PI * (std::atanh(r) - r));
        }
        return;
    }

    // prefix sums of log(1/rho) above the 1/2 cutoff
    std::vector<double> prefix(rho.size() + 1, 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i)
        prefix[i + 1] = prefix[i] + ((rho[i] > 0.5) ? std::log(1.0 / rho[i]) : 0.0);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double r = schedule[i];
        const auto hi = static_cast<std::size_t>(
            std::lower_bound(rho.begin(), rho.end(), r) - rho.begin());
        out[i] = prefix[hi] / std::log(1.0 / (1.0 - r));
    }
}

} // namespace

DensityReport density(const PointSequence& gamma, DensityKind kind,
                      const DensityOptions& opts) {
    if (opts.r_schedule.empty()) throw EmptySchedule("density: empty r schedule");
    if (gamma.size() == 0) throw TooFewPoints("density: empty sequence");
    std::vector<double> schedule = opts.r_schedule;
    std::sort(schedule.begin(), schedule.end());
    if (!(schedule.front() > 0.5 && schedule.back() < 1.0))
        throw OutOfRange("density: schedule must lie in (1/2, 1)");

    const double r_cap = schedule.back();
    std::vector<complexd> centers;
    if (opts.use_gamma_candidates)
        for (const auto& z : gamma.points())
            if (z.abs() <= r_cap) centers.push_back(z.value());
    if (opts.use_grid_candidates)
        for (const auto& z : hyperbolic_grid(opts.grid_radius, opts.grid_target))
            centers.push_back(z.value());
    if (centers.empty()) centers.push_back(complexd(0.0, 0.0));

    std::vector<std::vector<double>> table(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        quotients_at(gamma, centers[i], schedule, opts.integral_form, table[i]);
    });

    DensityReport rep;
    rep.kind = kind;
    rep.r_schedule = schedule;
    rep.zeta_candidates_used = static_cast<int>(centers.size());
    rep.values.resize(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        double v = table[0][i];
        for (std::size_t c = 1; c < centers.size(); ++c)
            v = (kind == DensityKind::upper) ? std::max(v, table[c][i])
                                             : std::min(v, table[c][i]);
        rep.values[i] = v;
    }

    // affine fit D(r) = a + b * x in x = 1/log(1/(1-r)); the finite-r error
    // terms are O(1)/log(1/(1-r)), so the intercept isolates the limit
    const std::size_t n = schedule.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 1.0 / std::log(1.0 / (1.0 - schedule[i]));
        sx += x;
        sy += rep.values[i];
        sxx += x * x;
        sxy += x * rep.values[i];
    }
    const double denom = n * sxx - sx * sx;
    double a = sy / n, b = 0.0;
    if (std::fabs(denom) > 1e-15) {
        b = (n * sxy - sx * sy) / denom;
        a = (sy - b * sx) / n;
    }
    rep.extrapolated = a;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 1.0 / std::log(1.0 / (1.0 - schedule[i]));
        const double e = rep.values[i] - (a + b * x);
        ss += e * e;
    }
    rep.fit_residual = std::sqrt(ss / n);
    return rep;
}

CalibrationResult calibrate_lattice(double target, DensityKind kind, double tol,
                                    const CalibrationOptions& opts) {
    if (!(target > 0.02 && target < 2.0))
        throw ParameterViolation("calibrate_lattice: target outside the trustworthy band (0.02, 2)");
    if (!(tol > 0.0)) throw ParameterViolation("calibrate_lattice: tol must be positive");

    std::vector<std::pair<double, double>> trace;
    auto measure = [&](double c) {
        PointSequence seq = generate_lattice(opts.sigma, c, opts.r_max, opts.L);
        const double d = density(seq, kind, opts.density).extrapolated;
        trace.emplace_back(c, d);
        return d;
    };

    // heuristic start: for the ring construction, density scales like
    // c / log(1/sigma)
    double c_mid = std::max(1e-3, target * std::log(1.0 / opts.sigma));
    double c_lo = c_mid / 4.0, c_hi = c_mid * 4.0;
    int steps = 0;
    double d_lo = measure(c_lo);
    while (d_lo > target && steps < opts.max_steps) {
        c_lo /= 2.0;
        d_lo = measure(c_lo);
        ++steps;
    }
    double d_hi = measure(c_hi);
    while (d_hi < target && steps < opts.max_steps) {
        c_hi *= 2.0;
        d_hi = measure(c_hi);
        ++steps;
    }
    if (d_lo > target || d_hi < target)
        throw NoConvergence("calibrate_lattice: failed to bracket the target");

    double c_best = c_hi, d_best = d_hi;
    for (; steps < opts.max_steps; ++steps) {
        const double c = std::sqrt(c_lo * c_hi);  // geometric bisection
        const double d = measure(c);
        if (std::fabs(d - target) < std::fabs(d_best - target)) {
            c_best = c;
            d_best = d;
        }
        if (std::fabs(d_best - target) <= tol) break;
        if (d < target)
            c_lo = c;
        else
            c_hi = c;
    }
    if (std::fabs(d_best - target) > tol)
        throw NoConvergence("calibrate_lattice: tolerance not met within the step budget");

    CalibrationResult res{generate_lattice(opts.sigma, c_best, opts.r_max, opts.L),
                          d_best, c_best, std::move(trace)};
    return res;
}

} // namespace apq
