#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "apq/norms.hpp"
#include "apq/sequence.hpp"

using namespace apq;

TEST_CASE("double indexing follows modulus order") {
    const Partition part(2, 8);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<DiscPoint> pts;
    for (int i = 0; i < 200; ++i)
        pts.emplace_back(std::polar(0.98 * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)));
    const PointSequence seq(pts, part);

    for (std::size_t m = 1; m < seq.size(); ++m) {
        CHECK(seq[m - 1].abs() <= seq[m].abs() + 1e-15);
        const SeqIndex a = seq.index(m - 1), b = seq.index(m);
        CHECK((a.level < b.level || (a.level == b.level && a.rank + 1 == b.rank)));
    }
    // ranks run 1..L_j within each annulus
    for (int j = 0; j <= seq.max_level(); ++j) {
        const auto count = static_cast<std::int64_t>(seq.points_in_level(j));
        std::int64_t seen = 0;
        for (std::size_t m = 0; m < seq.size(); ++m)
            if (seq.index(m).level == j) CHECK(seq.index(m).rank == ++seen);
        CHECK(seen == count);
    }
}

TEST_CASE("duplicate points are rejected") {
    const Partition part(2, 6);
    CHECK_THROWS_AS(PointSequence({DiscPoint(0.3, 0.1), DiscPoint(0.3, 0.1)}, part),
                    NotSeparated);
}

TEST_CASE("separation of small explicit sequences") {
    const Partition part(2, 8);
    CHECK(separation(PointSequence({DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)}, part)) ==
          doctest::Approx(0.5));
    // pairwise distances 0.5, 0.5, 0.8
    CHECK(separation(PointSequence(
              {DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0), DiscPoint(-0.5, 0.0)}, part)) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(separation(PointSequence({DiscPoint(0.1, 0.0)}, part)), TooFewPoints);
}

TEST_CASE("bucketed separation matches brute force") {
    for (double c : {0.3, 0.8, 1.7}) {
        const PointSequence gamma = generate_lattice(0.5, c, 0.98);
        REQUIRE(gamma.size() <= 500);
        CHECK(separation(gamma) == separation_brute_force(gamma));
    }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<DiscPoint> pts;
    for (int i = 0; i < 400; ++i)
        pts.emplace_back(std::polar(0.99 * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)));
    const PointSequence random_seq(pts, Partition(2, 12));
    CHECK(separation(random_seq) == separation_brute_force(random_seq));
}

TEST_CASE("counting function") {
    const Partition part(2, 8);
    const PointSequence single({DiscPoint(0.0, 0.0)}, part);
    for (double r : {0.1, 0.5, 0.9})
        CHECK(counting(single, DiscPoint(0.0, 0.0), r) == 1);

    const PointSequence pair({DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)}, part);
    CHECK(counting(pair, DiscPoint(0.0, 0.0), 0.4) == 1);  // rho(0, 0.5) = 0.5 >= 0.4
    CHECK(counting(pair, DiscPoint(0.0, 0.0), 0.51) == 2);
}

TEST_CASE("counting bound for uniformly discrete sequences") {
    const PointSequence gamma = generate_lattice(0.5, 1.0, 0.99);
    const double delta = separation(gamma);
    const double cap = (2.0 / delta + 1.0) * (2.0 / delta + 1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const DiscPoint z(std::polar(0.995 * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)));
        const double r = 0.05 + 0.9 * unit(rng);
        CHECK(counting(gamma, z, r) <= cap / (1.0 - r * r) + 1e-9);
    }
}

TEST_CASE("discreteness report") {
    const Partition part(2, 8);
    const PointSequence single({DiscPoint(0.0, 0.0)}, part);
    const auto solo = discreteness_report(single);
    CHECK(solo.mass_sum == doctest::Approx(1.0));
    CHECK(std::isnan(solo.delta));
    CHECK(std::isinf(solo.mass_bound));
    CHECK(solo.counting_violations == 0);

    const PointSequence pair({DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)}, part);
    const auto rep = discreteness_report(pair);
    CHECK(rep.delta == doctest::Approx(0.5));
    CHECK(rep.mass_sum == doctest::Approx(1.5625));
    CHECK(rep.mass_bound == doctest::Approx(16.0));
    CHECK(rep.mass_sum <= rep.mass_bound);
    CHECK(rep.counting_violations == 0);

    const auto lattice = discreteness_report(generate_lattice(0.5, 1.0, 0.99));
    CHECK(lattice.counting_violations == 0);
    CHECK(lattice.mass_sum <= lattice.mass_bound);
}

TEST_CASE("lattice construction arithmetic") {
    const PointSequence gamma = generate_lattice(0.5, 1.0, 0.9);
    // rings 0.5, 0.75, 0.875 with 2, 4, 8 points
    CHECK(gamma.size() == 14);
    std::map<double, int> rings;
    for (const auto& z : gamma.points()) rings[std::round(z.abs() * 1e12) / 1e12]++;
    REQUIRE(rings.size() == 3);
    auto it = rings.begin();
    CHECK(it->first == doctest::Approx(0.5));
    CHECK(it->second == 2);
    ++it;
    CHECK(it->first == doctest::Approx(0.75));
    CHECK(it->second == 4);
    ++it;
    CHECK(it->first == doctest::Approx(0.875));
    CHECK(it->second == 8);
}

TEST_CASE("lattice separation is stable under extension") {
    const double d1 = separation(generate_lattice(0.5, 1.0, 0.9));
    const double d2 = separation(generate_lattice(0.5, 1.0, 0.99));
    CHECK(std::fabs(d1 - d2) / d1 < 0.10);
    CHECK_THROWS_AS(generate_lattice(0.5, 20000.0, 0.9), TooDense);
}

TEST_CASE("perturbation identities and bounds") {
    const PointSequence gamma = generate_lattice(0.5, 1.0, 0.99);

    const PointSequence same = perturb(gamma, 0.0, PerturbMode::radial_out);
    for (std::size_t m = 0; m < gamma.size(); ++m)
        CHECK(std::abs(same[m].value() - gamma[m].value()) == 0.0);

    const double delta = 0.04;
    for (auto mode : {PerturbMode::radial_out, PerturbMode::random_jitter}) {
        // the raw image list keeps point correspondence
        const auto moved = perturbed_points(gamma, delta, mode, 9);
        REQUIRE(moved.size() == gamma.size());
        for (std::size_t m = 0; m < gamma.size(); ++m) {
            const double rho = pseudo_distance(gamma[m], moved[m]);
            CHECK(rho <= delta + 1e-12);
            // Euclidean displacement bound from the hyperbolic disk radius
            const double cap = 4.0 * delta / (1.0 - delta * delta) * (1.0 - gamma[m].abs());
            CHECK(std::abs(moved[m].value() - gamma[m].value()) < cap);
        }
    }
    CHECK_THROWS_AS(perturb(gamma, 0.3, PerturbMode::radial_out), OutOfRange);
}

TEST_CASE("sequence-space comparability under small perturbations") {
    // ratio of q-powers bounded by 3 beta^{-(1+q/p)} max(1, 3^{q/p-1}) = 12
    // for p = q = 2, L = 2
    const PointSequence gamma = generate_lattice(0.5, 1.0, 0.99);
    const SpaceParams sp(2.0, 2.0);
    const double bound = 3.0 * std::pow(0.5, -2.0) * 1.0;

    const auto moved = perturbed_points(gamma, 0.04, PerturbMode::radial_out, 3);
    const PointSequence gamma2(moved, Partition(2, gamma.partition().levels() + 1));

    std::mt19937_64 rng(10);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<complexd> data(gamma.size());
        for (auto& a : data) a = complexd(gauss(rng), gauss(rng));
        // radial_out preserves the modulus order, so values transport index-wise
        const double before = lpq_norm(data, gamma, sp);
        const double after = lpq_norm(data, gamma2, sp);
        CHECK(std::pow(after / before, sp.q) <= bound + 1e-9);
    }
}

TEST_CASE("hyperbolic grid size tracks the target") {
    for (int target : {100, 400, 1500}) {
        const auto grid = hyperbolic_grid(0.95, target);
        CHECK(static_cast<int>(grid.size()) > target / 2);
        CHECK(static_cast<int>(grid.size()) < 3 * target);
        for (const auto& z : grid) CHECK(z.abs() < 0.96);
    }
}
