#pragma once

#include <cstdint>
#include <vector>

#include "apq/disc.hpp"

namespace apq {

/// Index of a polar rectangle: annulus level j >= 0 and angular slot
/// k in [1, 2 L^j].
struct CellIndex {
    int level = 0;
    std::int64_t slot = 1;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Decomposition of the disc into annuli A_j = { r_j <= |z| < r_{j+1} } with
/// r_j = 1 - beta^j, beta = 1/L, each annulus split by equally spaced radii
/// into 2 L^j polar rectangles of angular width beta^j * pi.
class Partition {
public:
    Partition(int L, int levels);

    int L() const { return L_; }
    double beta() const { return beta_; }
    int levels() const { return levels_; }

    /// r_j = 1 - beta^j for j = 0..levels.
    double ring_radius(int j) const { return radii_.at(static_cast<std::size_t>(j)); }
    const std::vector<double>& ring_radii() const { return radii_; }
    /// Outermost covered radius r_J.
    double max_radius() const { return radii_.back(); }

    /// Number of cells in annulus j: 2 L^j.
    std::int64_t cells_in_level(int j) const;
    /// Angular width of the cells of annulus j: beta^j * pi.
    double cell_angle(int j) const;

    /// Annulus index with r_j <= |z| < r_{j+1}; throws OutOfRange beyond r_J.
    int level_of(double modulus) const;

    /// Smallest number of levels such that r_J > modulus.
    static int levels_covering(int L, double modulus);

private:
    int L_;
    int levels_;
    double beta_;
    std::vector<double> radii_;
};

/// Locates z in its half-open cell: r_j <= |z| < r_{j+1},
/// (k-1) beta^j pi <= theta < k beta^j pi. Ties at theta = 2 pi wrap to k = 1.
CellIndex cell_index(const Partition& part, const DiscPoint& z);

/// Grid-search estimates of the cell geometry constants: the largest rho-radius
/// r with E(ztilde, r) inside some cell, and the smallest R with every cell
/// inside closure E(z, R) for every z in the cell (the rho-diameter).
struct CellRadiusEstimate {
    double inradius = 0.0;       // r_beta, min over sampled levels
    double circumradius = 0.0;   // R_beta, max over sampled levels
    std::vector<int> levels;
    std::vector<double> inradius_by_level;
    std::vector<double> circumradius_by_level;
    std::vector<DiscPoint> witnesses;  // inradius center per sampled level
};

CellRadiusEstimate cell_pseudo_radii(const Partition& part);

/// Number of annuli of `part` that the pseudohyperbolic disk E(z, R) meets.
int annuli_overlapped(const Partition& part, const DiscPoint& z, double R);

} // namespace apq
