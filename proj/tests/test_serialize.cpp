#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apq/serialize.hpp"

using namespace apq;
using nlohmann::json;

TEST_CASE("partition round-trip") {
    const Partition part(3, 7);
    const json j = partition_to_json(part);
    CHECK(j.at("L") == 3);
    CHECK(j.at("levels") == 7);
    const Partition back = partition_from_json(j);
    CHECK(back.L() == 3);
    CHECK(back.levels() == 7);
    CHECK(back.ring_radius(4) == part.ring_radius(4));
}

TEST_CASE("sequence round-trip preserves points and indexing") {
    const PointSequence seq = generate_lattice(0.5, 0.8, 0.97);
    const json j = sequence_to_json(seq);
    const PointSequence back = sequence_from_json(j);
    REQUIRE(back.size() == seq.size());
    for (std::size_t m = 0; m < seq.size(); ++m) {
        CHECK(back[m].value() == seq[m].value());
        CHECK(back.index(m) == seq.index(m));
    }
}

TEST_CASE("function round-trips evaluate identically") {
    std::mt19937_64 rng(55);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<AnalyticFunction> zoo;
    zoo.push_back(AnalyticFunction::polynomial(
        {complexd(gauss(rng), gauss(rng)), complexd(gauss(rng), gauss(rng))}));
    zoo.push_back(AnalyticFunction::kernel_term(complexd(0.4, -0.2), 1.7,
                                                complexd(0.3, 0.8), 2.1));
    zoo.push_back(AnalyticFunction::blaschke({DiscPoint(0.3, 0.1), DiscPoint(-0.2, 0.6)},
                                             complexd(1.5, 0.0)));
    zoo.push_back(AnalyticFunction::sum({zoo[0], zoo[1]}));
    zoo.push_back(AnalyticFunction::product({zoo[2], zoo[0], zoo[3]}));

    std::uniform_real_distribution<double> unit(-0.6, 0.6);
    for (const auto& f : zoo) {
        const AnalyticFunction back = function_from_json(function_to_json(f));
        for (int t = 0; t < 25; ++t) {
            const complexd z(unit(rng), unit(rng));
            CHECK(std::abs(back(z) - f(z)) <= 1e-12 * (1.0 + std::abs(f(z))));
        }
    }
}

TEST_CASE("function json carries the documented tags") {
    const json j = function_to_json(AnalyticFunction::polynomial({complexd(1.0, 2.0)}));
    CHECK(j.at("kind") == "polynomial");
    CHECK(j.at("coeffs")[0][0] == 1.0);
    CHECK(j.at("coeffs")[0][1] == 2.0);
    CHECK_THROWS_AS(function_from_json(json{{"kind", "mystery"}}), Error);
}

TEST_CASE("csv emitters") {
    DensityReport rep;
    rep.kind = DensityKind::upper;
    rep.r_schedule = {0.99, 0.995};
    rep.values = {0.41, 0.43};
    const std::string csv = density_csv(rep);
    CHECK(csv.find("r,D_r,kind") == 0);
    CHECK(csv.find("0.99,0.41,upper") != std::string::npos);

    FrameReport frame;
    frame.degree_schedule = {30, 60};
    frame.K1_trace = {0.5, 0.45};
    frame.K2_trace = {1.2, 1.25};
    const std::string fcsv = frame_csv(frame);
    CHECK(fcsv.find("degree,K1,K2") == 0);
    CHECK(fcsv.find("60,0.45,1.25") != std::string::npos);
}

TEST_CASE("hashes are stable and content sensitive") {
    const json a{{"x", 1}, {"y", 2}};
    const json b{{"x", 1}, {"y", 3}};
    CHECK(json_hash(a) == json_hash(a));
    CHECK(json_hash(a) != json_hash(b));
    CHECK(json_hash(a).size() == 16);
    CHECK(fnv1a64("") == 14695981039346656037ull);
}
