#include "apq/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace apq {

namespace {

std::string trace_verdict(const std::vector<double>& trace) {
    const double first = trace.front();
    const double last = trace.back();
    const double lo = *std::min_element(trace.begin(), trace.end());
    const double hi = *std::max_element(trace.begin(), trace.end());
    if (last >= 2.0 * first) return "growth";
    if (hi <= 1.5 * lo) return "plateau";
    return "mixed";
}

std::string k1_verdict(const std::vector<double>& trace) {
    const double lo = *std::min_element(trace.begin(), trace.end());
    const double hi = *std::max_element(trace.begin(), trace.end());
    if (lo > 0.0 && hi <= 2.0 * lo) return "floor";
    bool decreasing = true;
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] >= trace[i - 1]) decreasing = false;
    if (decreasing && trace.front() >= 3.0 * trace.back()) return "decay";
    return "mixed";
}

} // namespace

ExperimentReport cmd_interpolation_dichotomy(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.name = "interpolation_dichotomy";
    rep.p = cfg.p;
    rep.q = cfg.q;
    const SpaceParams sp(cfg.p, cfg.q);
    for (double multiple : cfg.target_multiples) {
        TargetResult tr;
        tr.multiple = multiple;
        tr.target_density = multiple / cfg.q;
        CalibrationOptions copts;
        copts.L = cfg.L;
        const auto cal =
            calibrate_lattice(tr.target_density, DensityKind::upper, cfg.tol, copts);
        tr.measured_density = cal.measured;
        tr.lattice_c = cal.c;
        tr.lattice_points = cal.sequence.size();
        const auto trace = interpolation_constant(cal.sequence, sp, cfg.trials,
                                                  cfg.degree_schedule, cfg.seed);
        tr.degrees = trace.degrees;
        tr.trace = trace.M;
        tr.verdict = trace_verdict(trace.M);
        rep.targets.push_back(std::move(tr));
    }
    return rep;
}

ExperimentReport cmd_sampling_dichotomy(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.name = "sampling_dichotomy";
    rep.p = cfg.p;
    rep.q = cfg.q;
    const SpaceParams sp(cfg.p, cfg.q);
    for (double multiple : cfg.target_multiples) {
        TargetResult tr;
        tr.multiple = multiple;
        tr.target_density = multiple / cfg.q;
        CalibrationOptions copts;
        copts.L = cfg.L;
        const auto cal =
            calibrate_lattice(tr.target_density, DensityKind::lower, cfg.tol, copts);
        tr.measured_density = cal.measured;
        tr.lattice_c = cal.c;
        tr.lattice_points = cal.sequence.size();
        const auto frame = frame_bounds(cal.sequence, sp, cfg.degree_schedule,
                                        std::max(cfg.trials, 50), cfg.seed);
        tr.degrees = frame.degree_schedule;
        tr.trace = frame.K1_trace;
        tr.k2_trace = frame.K2_trace;
        tr.verdict = k1_verdict(frame.K1_trace);
        rep.targets.push_back(std::move(tr));
    }
    return rep;
}

ExperimentReport cmd_separation_necessity(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.name = "separation_necessity";
    rep.p = cfg.p;
    rep.q = cfg.q;
    const SpaceParams sp(cfg.p, cfg.q);

    // sub-threshold lattice by construction: density ~ c / log(1/sigma)
    const double sub_density = 0.35 / cfg.q;
    const double c = sub_density * std::log(2.0);
    const PointSequence base = generate_lattice(0.5, c, 0.9995, cfg.L);

    const int degree =
        cfg.degree_schedule[cfg.degree_schedule.size() / 2];
    PointSequence section = base.truncated(1.0 - 1.2 / degree);

    // anchor: the section point nearest modulus 1/2
    std::size_t anchor = 0;
    for (std::size_t m = 1; m < section.size(); ++m)
        if (std::fabs(section[m].abs() - 0.5) < std::fabs(section[anchor].abs() - 0.5))
            anchor = m;
    const complexd za = section[anchor].value();

    auto with_partner = [&](double eps) {
        const double r = std::abs(za);
        const double r2 = (r + eps) / (1.0 + eps * r);
        std::vector<DiscPoint> pts(section.points().begin(), section.points().end());
        pts.emplace_back(za * (r2 / r));
        return PointSequence(std::move(pts), section.partition());
    };

    for (double eps : {0.1, 0.01, 0.001}) {
        const PointSequence seq = with_partner(eps);
        // identify anchor and partner positions in the sorted sequence
        std::vector<complexd> sep_data(seq.size(), complexd(0.0, 0.0));
        std::vector<complexd> eq_data(seq.size(), complexd(0.0, 0.0));
        const double r2 = (std::abs(za) + eps) / (1.0 + eps * std::abs(za));
        for (std::size_t m = 0; m < seq.size(); ++m) {
            if (std::abs(seq[m].value() - za) < 1e-15) {
                sep_data[m] = complexd(1.0, 0.0);
                eq_data[m] = complexd(1.0, 0.0);
            } else if (std::fabs(seq[m].abs() - r2) < 1e-15 &&
                       std::abs(std::arg(seq[m].value()) - std::arg(za)) < 1e-12) {
                sep_data[m] = complexd(-1.0, 0.0);
                eq_data[m] = complexd(1.0, 0.0);
            }
        }
        const double sep_norm = lpq_norm(sep_data, seq, sp);
        const double eq_norm = lpq_norm(eq_data, seq, sp);
        for (auto& a : sep_data) a /= sep_norm;
        for (auto& a : eq_data) a /= eq_norm;
        rep.pair_distances.push_back(eps);
        rep.pair_constants.push_back(
            least_squares_interpolant(seq, sep_data, degree, sp).norm_f);
        rep.control_constants.push_back(
            least_squares_interpolant(seq, eq_data, degree, sp).norm_f);
    }

    // collision at machine resolution: rows coincide numerically
    try {
        const PointSequence seq = with_partner(1e-16);
        std::vector<complexd> data(seq.size(), complexd(0.0, 0.0));
        data[0] = complexd(1.0, 0.0);
        least_squares_interpolant(seq, data, degree, sp);
    } catch (const RankDeficient&) {
        rep.rank_deficient_at_collision = true;
    } catch (const NotSeparated&) {
        rep.rank_deficient_at_collision = true;  // duplicate detected at construction
    }
    return rep;
}

} // namespace apq
