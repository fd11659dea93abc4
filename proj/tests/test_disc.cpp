#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apq/disc.hpp"

using namespace apq;

namespace {

DiscPoint random_point(std::mt19937_64& rng, double r_max = 0.97) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = std::sqrt(unit(rng)) * r_max;
    return DiscPoint(std::polar(r, 2.0 * M_PI * unit(rng)));
}

} // namespace

TEST_CASE("disc point invariant") {
    CHECK_THROWS_AS(DiscPoint(1.0, 0.0), OutOfRange);
    CHECK_THROWS_AS(DiscPoint(0.8, 0.7), OutOfRange);
    CHECK(DiscPoint(0.3, -0.4).abs() == doctest::Approx(0.5));
}

TEST_CASE("pseudo distance collapses at the origin") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const DiscPoint w = random_point(rng);
        CHECK(pseudo_distance(DiscPoint(0.0, 0.0), w) == doctest::Approx(w.abs()).epsilon(1e-14));
    }
}

TEST_CASE("pseudo distance of two real points") {
    // |0.5 - (-0.5)| / |1 + 0.25| = 0.8
    CHECK(pseudo_distance(DiscPoint(0.5, 0.0), DiscPoint(-0.5, 0.0)) ==
          doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("pseudo distance is Moebius invariant") {
    const DiscPoint a(0.3, 0.0), z(0.1, 0.0), w(0.0, 0.2);
    const double before = pseudo_distance(z, w);
    const double after = pseudo_distance(mobius(a, z), mobius(a, w));
    CHECK(std::fabs(before - after) < 1e-12);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const DiscPoint aa = random_point(rng), zz = random_point(rng), ww = random_point(rng);
        CHECK(std::fabs(pseudo_distance(zz, ww) -
                        pseudo_distance(mobius(aa, zz), mobius(aa, ww))) < 1e-12);
    }
}

TEST_CASE("mobius special values and involution") {
    const DiscPoint a(0.4, -0.2);
    CHECK(std::abs(mobius(a, a).value()) < 1e-15);
    CHECK(std::abs(mobius(a, DiscPoint(0.0, 0.0)).value() - a.value()) < 1e-15);
    const DiscPoint z(0.3, 0.5);
    CHECK(std::abs(mobius(DiscPoint(0.0, 0.0), z).value() + z.value()) < 1e-15);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const DiscPoint aa = random_point(rng), zz = random_point(rng);
        CHECK(std::abs(mobius(aa, mobius(aa, zz)).value() - zz.value()) < 1e-12);
    }
}

TEST_CASE("hyperbolic disk: Euclidean parameters") {
    const auto centered = hyperbolic_disk(DiscPoint(0.0, 0.0), 0.37);
    CHECK(centered.center.abs() < 1e-15);
    CHECK(centered.radius == doctest::Approx(0.37));

    // 0.5 * 0.75 / 0.9375 = 0.4 for both center and radius
    const auto shifted = hyperbolic_disk(DiscPoint(0.5, 0.0), 0.5);
    CHECK(shifted.center.re() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(shifted.radius == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("hyperbolic disk boundary sits at constant rho") {
    const DiscPoint z(0.3, 0.2);
    const double r = 0.6;
    const auto disk = hyperbolic_disk(z, r);
    for (int k = 0; k < 20; ++k) {
        const double t = 2.0 * M_PI * k / 20;
        const complexd boundary = disk.center.value() + std::polar(disk.radius, t);
        CHECK(std::fabs(pseudo_distance(z.value(), boundary) - r) < 1e-10);
    }
}

TEST_CASE("triangle-like composition bound") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        const DiscPoint z = random_point(rng), u = random_point(rng), w = random_point(rng);
        const double zu = pseudo_distance(z, u), uw = pseudo_distance(u, w);
        CHECK(pseudo_distance(z, w) <= pseudo_compose(zu, uw) + 1e-12);
    }
    // half-radius disks compose to radius 4/5
    CHECK(pseudo_compose(0.5, 0.5) == doctest::Approx(0.8));
}
