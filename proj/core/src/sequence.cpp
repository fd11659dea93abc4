#include "apq/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apq {

namespace {

bool modulus_angle_less(const DiscPoint& a, const DiscPoint& b) {
    const double ra = a.abs(), rb = b.abs();
    if (ra != rb) return ra < rb;
    return a.theta() < b.theta();
}

} // namespace

PointSequence::PointSequence(std::vector<DiscPoint> points, Partition part)
    : part_(std::move(part)), points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(), modulus_angle_less);
    for (std::size_t m = 1; m < points_.size(); ++m)
        if (points_[m] == points_[m - 1])
            throw NotSeparated("PointSequence: repeated point");
    index_.reserve(points_.size());
    std::vector<std::int64_t> next_rank(static_cast<std::size_t>(part_.levels()), 1);
    for (const auto& z : points_) {
        const int j = part_.level_of(z.abs());
        index_.push_back(SeqIndex{j, next_rank[static_cast<std::size_t>(j)]++});
    }
}

std::size_t PointSequence::points_in_level(int j) const {
    std::size_t n = 0;
    for (const auto& ix : index_)
        if (ix.level == j) ++n;
    return n;
}

int PointSequence::max_level() const {
    int j = 0;
    for (const auto& ix : index_) j = std::max(j, ix.level);
    return j;
}

PointSequence PointSequence::truncated(double r_max) const {
    std::vector<DiscPoint> pts;
    for (const auto& z : points_)
        if (z.abs() <= r_max) pts.push_back(z);
    return PointSequence(std::move(pts), part_);
}

PointSequence PointSequence::head(std::size_t n) const {
    std::vector<DiscPoint> pts(points_.begin(), points_.begin() + std::min(n, points_.size()));
    return PointSequence(std::move(pts), part_);
}

PointSequence PointSequence::rotated(double phi) const {
    const complexd rot = std::polar(1.0, phi);
    std::vector<DiscPoint> pts;
    pts.reserve(points_.size());
    for (const auto& z : points_) pts.emplace_back(z.value() * rot);
    return PointSequence(std::move(pts), part_);
}

namespace {

// Polar bounding box of the pseudohyperbolic disk E(z, r).
struct PolarBox {
    double mod_lo, mod_hi;
    double ang_center, ang_half;  // ang_half >= pi means the full circle
};

PolarBox polar_box(const DiscPoint& z, double r) {
    const double zz = std::norm(z.value());
    const double denom = 1.0 - r * r * zz;
    const double c = (1.0 - r * r) * z.abs() / denom;
    const double R = r * (1.0 - zz) / denom;
    PolarBox box;
    box.mod_lo = std::max(0.0, c - R);
    box.mod_hi = c + R;
    box.ang_center = z.theta();
    box.ang_half = (c > R) ? std::asin(std::min(1.0, R / c)) : 4.0;
    return box;
}

double angle_gap(double a, double b) {
    double d = std::fabs(a - b);
    if (d > M_PI) d = 2.0 * M_PI - d;
    return d;
}

// Per-annulus buckets of point indices sorted by angle.
struct LevelBuckets {
    std::vector<std::vector<std::size_t>> by_level;
    std::vector<std::vector<double>> angles;
};

LevelBuckets make_buckets(const PointSequence& seq) {
    LevelBuckets b;
    const int levels = seq.partition().levels();
    b.by_level.resize(static_cast<std::size_t>(levels));
    b.angles.resize(static_cast<std::size_t>(levels));
    for (std::size_t m = 0; m < seq.size(); ++m)
        b.by_level[static_cast<std::size_t>(seq.index(m).level)].push_back(m);
    for (std::size_t j = 0; j < b.by_level.size(); ++j) {
        auto& idx = b.by_level[j];
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) {
            return seq[a].theta() < seq[c].theta();
        });
        b.angles[j].reserve(idx.size());
        for (auto m : idx) b.angles[j].push_back(seq[m].theta());
    }
    return b;
}

} // namespace

double separation_brute_force(const PointSequence& gamma) {
    if (gamma.size() < 2) throw TooFewPoints("separation: need at least two points");
    double best = 1.0;
    for (std::size_t a = 0; a < gamma.size(); ++a)
        for (std::size_t b = a + 1; b < gamma.size(); ++b)
            best = std::min(best, pseudo_distance(gamma[a], gamma[b]));
    return best;
}

double separation(const PointSequence& gamma) {
    const std::size_t n = gamma.size();
    if (n < 2) throw TooFewPoints("separation: need at least two points");
    if (n <= 64) return separation_brute_force(gamma);

    const auto buckets = make_buckets(gamma);

    // Cheap upper bound: consecutive points in modulus order and consecutive
    // points in angle order within each annulus.
    double best = 1.0;
    for (std::size_t m = 1; m < n; ++m)
        best = std::min(best, pseudo_distance(gamma[m - 1], gamma[m]));
    for (std::size_t j = 0; j < buckets.by_level.size(); ++j) {
        const auto& idx = buckets.by_level[j];
        for (std::size_t i = 1; i < idx.size(); ++i)
            best = std::min(best, pseudo_distance(gamma[idx[i - 1]], gamma[idx[i]]));
        if (idx.size() > 2)
            best = std::min(best, pseudo_distance(gamma[idx.front()], gamma[idx.back()]));
    }

    // Exact pass: any pair beating `best` lies inside E(z, best), so only
    // cells intersecting its polar bounding box need checking.
    const auto& part = gamma.partition();
    for (std::size_t m = 0; m < n; ++m) {
        const auto box = polar_box(gamma[m], best);
        const int j_lo = (box.mod_lo <= 0.0) ? 0 : part.level_of(box.mod_lo);
        const int j_hi = part.level_of(std::min(box.mod_hi, std::nextafter(part.max_radius(), 0.0)));
        for (int j = j_lo; j <= j_hi; ++j) {
            const auto& idx = buckets.by_level[static_cast<std::size_t>(j)];
            const auto& ang = buckets.angles[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx[i] <= m) continue;
                if (box.ang_half < M_PI && angle_gap(ang[i], box.ang_center) > box.ang_half)
                    continue;
                best = std::min(best, pseudo_distance(gamma[m], gamma[idx[i]]));
            }
        }
    }
    return best;
}

int counting(const PointSequence& gamma, const DiscPoint& z, double r) {
    if (!(r > 0.0 && r < 1.0)) throw OutOfRange("counting: radius must lie in (0,1)");
    int count = 0;
    for (const auto& w : gamma.points())
        if (pseudo_distance(z, w) < r) ++count;
    return count;
}

DiscretenessReport discreteness_report(const PointSequence& gamma, std::uint64_t seed) {
    DiscretenessReport rep;
    for (const auto& z : gamma.points()) {
        const double u = 1.0 - std::norm(z.value());
        rep.mass_sum += u * u;
    }
    if (gamma.size() < 2) {
        rep.delta = std::numeric_limits<double>::quiet_NaN();
        rep.mass_bound = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.delta = separation(gamma);
    if (rep.delta == 0.0) throw NotSeparated("discreteness_report: separation constant is zero");
    rep.mass_bound = 4.0 / (rep.delta * rep.delta);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    rep.probes = 200;
    const double cap = (2.0 / rep.delta + 1.0) * (2.0 / rep.delta + 1.0);
    for (int t = 0; t < rep.probes; ++t) {
        const double rad = std::sqrt(unit(rng)) * 0.995;
        const DiscPoint z(std::polar(rad, 2.0 * M_PI * unit(rng)));
        const double r = 0.05 + 0.90 * unit(rng);
        if (counting(gamma, z, r) > cap / (1.0 - r * r) + 1e-9) ++rep.counting_violations;
    }
    return rep;
}

PointSequence generate_lattice(double sigma, double c, double r_max, int L) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw OutOfRange("generate_lattice: sigma in (0,1)");
    if (!(c > 0.0)) throw OutOfRange("generate_lattice: c > 0");
    if (!(r_max > 0.0 && r_max < 1.0)) throw OutOfRange("generate_lattice: r_max in (0,1)");

    std::vector<DiscPoint> pts;
    double s = sigma;
    for (int i = 1; 1.0 - s <= r_max; ++i, s *= sigma) {
        const double radius = 1.0 - s;
        if (radius <= 0.0) continue;
        const auto count = static_cast<std::int64_t>(std::ceil(c / s));
        const double step = 2.0 * M_PI / static_cast<double>(count);
        const double offset = (i % 2 == 0) ? 0.5 * step : 0.0;
        for (std::int64_t k = 0; k < count; ++k)
            pts.emplace_back(std::polar(radius, offset + step * static_cast<double>(k)));
    }
    if (pts.empty()) throw OutOfRange("generate_lattice: no rings below r_max");

    double max_mod = 0.0;
    for (const auto& z : pts) max_mod = std::max(max_mod, z.abs());
    Partition part(L, Partition::levels_covering(L, max_mod));
    PointSequence seq(std::move(pts), std::move(part));
    if (seq.size() >= 2 && separation(seq) < 1e-3)
        throw TooDense("generate_lattice: separation constant below 1e-3");
    return seq;
}

std::vector<DiscPoint> perturbed_points(const PointSequence& gamma, double delta,
                                        PerturbMode mode, std::uint64_t seed) {
    const double beta = gamma.partition().beta();
    if (delta < 0.0 || (delta > 0.0 && delta >= std::min(1.0 / 20.0, beta / 2.0)))
        throw OutOfRange("perturb: delta must lie in [0, min(1/20, beta/2))");
    std::vector<DiscPoint> pts;
    pts.reserve(gamma.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const auto& z : gamma.points()) {
        complexd moved = z.value();
        if (delta > 0.0) {
            switch (mode) {
            case PerturbMode::radial_out: {
                const double r = z.abs();
                const double r2 = (r + delta) / (1.0 + delta * r);
                moved = (r > 0.0) ? z.value() * (r2 / r) : complexd(delta, 0.0);
                break;
            }
            case PerturbMode::random_jitter: {
                // uniform draw from the Euclidean delta-disc, mapped by the
                // involution M_z which carries E(0, delta) onto E(z, delta)
                complexd xi;
                do {
                    xi = complexd(unit(rng), unit(rng)) * delta;
                } while (std::abs(xi) > delta);
                moved = mobius(z.value(), xi);
                break;
            }
            }
        }
        pts.emplace_back(moved);
    }
    return pts;
}

PointSequence perturb(const PointSequence& gamma, double delta, PerturbMode mode,
                      std::uint64_t seed) {
    auto pts = perturbed_points(gamma, delta, mode, seed);
    double max_mod = 0.0;
    for (const auto& z : pts) max_mod = std::max(max_mod, z.abs());
    const auto& old = gamma.partition();
    const int levels =
        std::max(old.levels(), Partition::levels_covering(old.L(), max_mod));
    return PointSequence(std::move(pts), Partition(old.L(), levels));
}

std::vector<DiscPoint> hyperbolic_grid(double r_max, int target) {
    // Bisect the rho step until the ring construction lands near `target`.
    auto build = [&](double h) {
        std::vector<DiscPoint> pts;
        pts.emplace_back(0.0, 0.0);
        double r = h;
        while (r <= r_max && static_cast<int>(pts.size()) < 8 * target + 64) {
            const int m = std::max(6, static_cast<int>(std::ceil(
                                          2.0 * M_PI * r / (h * (1.0 - r * r)))));
            for (int k = 0; k < m; ++k)
                pts.emplace_back(std::polar(r, 2.0 * M_PI * k / m));
            r = (r + h) / (1.0 + r * h);
        }
        return pts;
    };
    double lo = 0.02, hi = 1.5;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (static_cast<int>(build(mid).size()) > target)
            lo = mid;
        else
            hi = mid;
    }
    return build(0.5 * (lo + hi));
}

} // namespace apq
