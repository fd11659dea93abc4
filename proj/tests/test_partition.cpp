#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apq/partition.hpp"

using namespace apq;

TEST_CASE("ring radii follow the geometric law") {
    const Partition part(2, 6);
    CHECK(part.ring_radius(0) == 0.0);
    CHECK(part.ring_radius(1) == doctest::Approx(0.5));
    CHECK(part.ring_radius(2) == doctest::Approx(0.75));
    CHECK(part.ring_radius(3) == doctest::Approx(0.875));
    for (int j = 0; j < 6; ++j) CHECK(part.ring_radius(j) < part.ring_radius(j + 1));
    CHECK(part.max_radius() < 1.0);
    CHECK_THROWS_AS(Partition(1, 4), OutOfRange);
}

TEST_CASE("cell counts and widths per annulus") {
    const Partition part(2, 5);
    CHECK(part.cells_in_level(0) == 2);
    CHECK(part.cells_in_level(1) == 4);
    CHECK(part.cells_in_level(2) == 8);
    for (int j = 0; j < 5; ++j)
        CHECK(part.cells_in_level(j) * part.cell_angle(j) == doctest::Approx(2.0 * M_PI));

    const Partition p3(3, 4);
    CHECK(p3.cells_in_level(2) == 18);
}

TEST_CASE("cell index locates points") {
    const Partition part(2, 8);
    const CellIndex first = cell_index(part, DiscPoint(0.1, 0.0));
    CHECK(first.level == 0);
    CHECK(first.slot == 1);

    // 0.75 = r_2 belongs to annulus 2 by the half-open convention
    CHECK(cell_index(part, DiscPoint(0.75, 0.0)).level == 2);
    CHECK(cell_index(part, DiscPoint(0.74999, 0.0)).level == 1);

    CHECK_THROWS_AS(cell_index(part, DiscPoint(0.9999, 0.0)), OutOfRange);
}

TEST_CASE("every covered point lands in exactly one valid cell") {
    const Partition part(2, 10);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double r = std::sqrt(unit(rng)) * (part.max_radius() - 1e-12);
        const DiscPoint z(std::polar(r, 2.0 * M_PI * unit(rng)));
        const CellIndex cell = cell_index(part, z);
        CHECK(cell.level >= 0);
        CHECK(cell.level < part.levels());
        CHECK(cell.slot >= 1);
        CHECK(cell.slot <= part.cells_in_level(cell.level));
        // the half-open cell really contains the point
        CHECK(z.abs() >= part.ring_radius(cell.level));
        CHECK(z.abs() < part.ring_radius(cell.level + 1));
        const double width = part.cell_angle(cell.level);
        CHECK(z.theta() >= (cell.slot - 1) * width - 1e-12);
        CHECK(z.theta() < cell.slot * width + 1e-12);
    }
}

TEST_CASE("cell areas within an annulus are equal") {
    const Partition part(3, 6);
    for (int j = 0; j < 5; ++j) {
        const double a = part.ring_radius(j), b = part.ring_radius(j + 1);
        const double width = part.cell_angle(j);
        const double reference = 0.5 * width * (b * b - a * a);
        for (std::int64_t k = 1; k <= part.cells_in_level(j); ++k) {
            const double lo = (k - 1) * width, hi = k * width;
            const double area = 0.5 * (hi - lo) * (b * b - a * a);
            CHECK(std::fabs(area - reference) <= 1e-12 * reference);
        }
    }
}

TEST_CASE("cell pseudo radii are stable across levels") {
    const Partition part(2, 8);
    const auto est = cell_pseudo_radii(part);
    CHECK(est.inradius > 0.0);
    CHECK(est.inradius <= est.circumradius);
    CHECK(est.circumradius < 1.0);

    // scale invariance: deep annuli give nearly the same constants
    const auto at = [&](int level) {
        for (std::size_t i = 0; i < est.levels.size(); ++i)
            if (est.levels[i] == level)
                return std::pair{est.inradius_by_level[i], est.circumradius_by_level[i]};
        FAIL("level missing");
        return std::pair{0.0, 0.0};
    };
    const auto [in1, out1] = at(1);
    const auto [in5, out5] = at(5);
    CHECK(std::fabs(in1 - in5) / in5 < 0.05);
    CHECK(std::fabs(out1 - out5) / out5 < 0.05);

    // the witness disk fits inside its cell
    for (std::size_t i = 0; i < est.levels.size(); ++i) {
        const CellIndex cell = cell_index(part, est.witnesses[i]);
        CHECK(cell.level == est.levels[i]);
    }
}

TEST_CASE("overlap count of the 4/5 disk") {
    // the proof-step disk D' spans a u-range factor of ((1+R)/(1-R))^2 = 81,
    // so only very coarse partitions (L >= 81) can keep it inside two annuli
    const DiscPoint z(0.95, 0.0);
    CHECK(annuli_overlapped(Partition(2, 24), z, 0.8) > 2);
    CHECK(annuli_overlapped(Partition(81, 4), z, 0.8) <= 2);
}
