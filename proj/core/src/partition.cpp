#include "apq/partition.hpp"

#include <algorithm>
#include <cmath>

namespace apq {

Partition::Partition(int L, int levels) : L_(L), levels_(levels), beta_(1.0 / L) {
    if (L < 2)
        throw OutOfRange("Partition: L must be >= 2");
    if (levels < 1)
        throw OutOfRange("Partition: levels must be >= 1");
    radii_.resize(static_cast<std::size_t>(levels) + 1);
    double b = 1.0;
    for (int j = 0; j <= levels; ++j) {
        radii_[static_cast<std::size_t>(j)] = 1.0 - b;
        b *= beta_;
    }
}

std::int64_t Partition::cells_in_level(int j) const {
    if (j < 0 || j >= levels_)
        throw OutOfRange("cells_in_level: level outside partition");
    std::int64_t n = 2;
    for (int i = 0; i < j; ++i) n *= L_;
    return n;
}

double Partition::cell_angle(int j) const {
    return M_PI * std::pow(beta_, j);
}

int Partition::level_of(double modulus) const {
    if (!(modulus < radii_.back()))
        throw OutOfRange("Partition: point beyond r_J, increase levels");
    // r_j = 1 - beta^j <= m  <=>  j >= log(1-m)/log(beta)
    const double u = 1.0 - modulus;
    int j = static_cast<int>(std::floor(std::log(u) / std::log(beta_)));
    j = std::clamp(j, 0, levels_ - 1);
    // floating-point guard around the annulus edges
    while (j > 0 && modulus < radii_[static_cast<std::size_t>(j)]) --j;
    while (j + 1 < levels_ && modulus >= radii_[static_cast<std::size_t>(j) + 1]) ++j;
    return j;
}

int Partition::levels_covering(int L, double modulus) {
    const double beta = 1.0 / L;
    int j = 1;
    double b = beta;
    while (1.0 - b <= modulus && j < 1024) {
        b *= beta;
        ++j;
    }
    return j;
}

CellIndex cell_index(const Partition& part, const DiscPoint& z) {
    const int j = part.level_of(z.abs());
    const double width = part.cell_angle(j);
    const std::int64_t cells = part.cells_in_level(j);
    std::int64_t k = static_cast<std::int64_t>(std::floor(z.theta() / width));
    if (k >= cells) k = 0;  // theta == 2*pi wraps to the first slot
    return CellIndex{j, k + 1};
}

namespace {

// Boundary samples of the cell [r_lo, r_hi] x [0, width]: n per edge.
std::vector<complexd> cell_boundary(double r_lo, double r_hi, double width, int n) {
    std::vector<complexd> pts;
    pts.reserve(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double r = r_lo + t * (r_hi - r_lo);
        const double a = t * width;
        pts.push_back(std::polar(r_lo, a));
        pts.push_back(std::polar(r_hi, a));
        pts.push_back(std::polar(r, 0.0));
        pts.push_back(std::polar(r, width));
    }
    return pts;
}

} // namespace

CellRadiusEstimate cell_pseudo_radii(const Partition& part) {
    // Cells within an annulus are rotations of each other and rho is rotation
    // invariant, so the first cell of each sampled level represents all of them.
    constexpr int kGrid = 65;
    CellRadiusEstimate est;
    const int j_max = std::min(part.levels() - 1, 6);
    for (int j = 0; j <= j_max; ++j) {
        const double r_lo = part.ring_radius(j);
        const double r_hi = part.ring_radius(j + 1);
        const double width = part.cell_angle(j);
        const auto boundary = cell_boundary(r_lo, r_hi, width, kGrid);

        double best_in = 0.0;
        complexd best_center(0.5 * (r_lo + r_hi), 0.0);
        for (int a = 1; a + 1 < kGrid; ++a) {
            const double r = r_lo + (r_hi - r_lo) * a / (kGrid - 1);
            for (int b = 1; b + 1 < kGrid; ++b) {
                const complexd c = std::polar(r, width * b / (kGrid - 1));
                double d = 1.0;
                for (const auto& w : boundary) d = std::min(d, pseudo_distance(c, w));
                if (d > best_in) {
                    best_in = d;
                    best_center = c;
                }
            }
        }

        double diam = 0.0;
        for (std::size_t a = 0; a < boundary.size(); ++a)
            for (std::size_t b = a + 1; b < boundary.size(); ++b)
                diam = std::max(diam, pseudo_distance(boundary[a], boundary[b]));

        est.levels.push_back(j);
        est.inradius_by_level.push_back(best_in);
        est.circumradius_by_level.push_back(diam);
        est.witnesses.emplace_back(best_center);
    }
    est.inradius = *std::min_element(est.inradius_by_level.begin(), est.inradius_by_level.end());
    est.circumradius =
        *std::max_element(est.circumradius_by_level.begin(), est.circumradius_by_level.end());
    return est;
}

int annuli_overlapped(const Partition& part, const DiscPoint& z, double R) {
    const EuclideanDisk disk = hyperbolic_disk(z, R);
    const double lo = std::max(0.0, disk.center.abs() - disk.radius);
    const double hi = disk.center.abs() + disk.radius;
    int count = 0;
    for (int j = 0; j < part.levels(); ++j) {
        const double a = part.ring_radius(j);
        const double b = part.ring_radius(j + 1);
        if (hi >= a && lo < b) ++count;
    }
    if (hi >= part.max_radius()) ++count;  // spills beyond the built levels
    return count;
}

} // namespace apq
