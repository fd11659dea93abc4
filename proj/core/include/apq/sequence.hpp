#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "apq/partition.hpp"

namespace apq {

/// Double index of a sequence point: annulus level j and rank k = 1..L_j
/// within the annulus, following the global modulus order.
struct SeqIndex {
    int level = 0;
    std::int64_t rank = 1;

    friend bool operator==(const SeqIndex&, const SeqIndex&) = default;
};

/// A finite point sequence in the disc, sorted by modulus and doubly indexed
/// against a partition. Immutable after construction.
class PointSequence {
public:
    PointSequence(std::vector<DiscPoint> points, Partition part);

    std::size_t size() const { return points_.size(); }
    const DiscPoint& operator[](std::size_t m) const { return points_[m]; }
    std::span<const DiscPoint> points() const { return points_; }
    const Partition& partition() const { return part_; }

    SeqIndex index(std::size_t m) const { return index_[m]; }
    std::size_t points_in_level(int j) const;
    int max_level() const;

    /// Points with modulus <= r_max, reindexed against the same partition.
    PointSequence truncated(double r_max) const;
    /// The innermost n points.
    PointSequence head(std::size_t n) const;
    /// Sequence rotated by angle phi.
    PointSequence rotated(double phi) const;

private:
    Partition part_;
    std::vector<DiscPoint> points_;
    std::vector<SeqIndex> index_;
};

/// Exact separation constant delta = min over pairs of rho, found with a
/// bucketed neighbor search; throws TooFewPoints below two points.
double separation(const PointSequence& gamma);

/// Brute-force all-pairs minimum; reference oracle for separation.
double separation_brute_force(const PointSequence& gamma);

/// Number of points of gamma inside E(z, r) (strict inequality).
int counting(const PointSequence& gamma, const DiscPoint& z, double r);

struct DiscretenessReport {
    double delta = 0.0;           // NaN for a single-point sequence
    double mass_sum = 0.0;        // sum of (1 - |z_m|^2)^2
    double mass_bound = 0.0;      // 4 / delta^2, +inf when delta undefined
    int counting_violations = 0;  // probes violating (2/delta+1)^2 / (1-r^2)
    int probes = 0;
};

DiscretenessReport discreteness_report(const PointSequence& gamma, std::uint64_t seed = 7);

/// Rings at 1 - sigma^i (i >= 1) up to r_max; ring i carries ceil(c / sigma^i)
/// equally spaced points, consecutive rings offset by half an angular cell.
PointSequence generate_lattice(double sigma, double c, double r_max, int L = 2);

enum class PerturbMode { radial_out, random_jitter };

/// Moves every point at most delta in rho. radial_out pushes points outward;
/// random_jitter draws a uniform point of E(z_m, delta) per point.
PointSequence perturb(const PointSequence& gamma, double delta, PerturbMode mode,
                      std::uint64_t seed = 1);

/// The raw image list of perturb, index-aligned with gamma (PointSequence
/// construction re-sorts, losing the point correspondence).
std::vector<DiscPoint> perturbed_points(const PointSequence& gamma, double delta,
                                        PerturbMode mode, std::uint64_t seed = 1);

/// Roughly `target` points spread hyperbolically-uniformly up to modulus r_max.
std::vector<DiscPoint> hyperbolic_grid(double r_max, int target);

} // namespace apq
