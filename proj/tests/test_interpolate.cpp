#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "apq/interpolate.hpp"
#include "apq/quadrature.hpp"

using namespace apq;

namespace {

PointSequence small_lattice() { return generate_lattice(0.5, 0.35, 0.99); }

std::vector<complexd> gaussian_data(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complexd> data(n);
    for (auto& a : data) a = complexd(gauss(rng), gauss(rng));
    return data;
}

} // namespace

TEST_CASE("g-system of a single point is constant") {
    const Partition part(2, 8);
    const PointSequence gamma({DiscPoint(0.5, 0.0)}, part);
    const auto gs = build_g_system(gamma, 1.0, 0.5);
    CHECK(gs.offdiag_residual == 0.0);
    const double expect = 1.0 / (1.0 - 0.25);
    CHECK(std::abs(gs.functions[0](complexd(0.0, 0.0)) - complexd(expect, 0.0)) < 1e-12);
    CHECK(std::abs(gs.functions[0](complexd(0.3, 0.3)) - complexd(expect, 0.0)) < 1e-12);
}

TEST_CASE("g-system of two points matches the explicit quotient") {
    const Partition part(2, 8);
    const PointSequence gamma({DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)}, part);
    const auto gs = build_g_system(gamma, 1.0, 0.9);
    // g for the point at 0: M_{0.5}(z) / M_{0.5}(0) = (0.5 - z)/(0.5 (1 - 0.5 z))
    auto expect = [](complexd z) { return (0.5 - z) / (0.5 * (1.0 - 0.5 * z)); };
    for (const complexd z : {complexd(0.2, 0.1), complexd(-0.4, 0.0), complexd(0.0, 0.6)})
        CHECK(std::abs(gs.functions[0](z) - expect(z)) < 1e-12);
    CHECK(std::abs(gs.functions[0](complexd(0.5, 0.0))) < 1e-15);

    // diagonal normalization g_m(z_m) (1-|z_m|^2)^n = 1
    for (std::size_t m = 0; m < gamma.size(); ++m) {
        const double w = 1.0 - std::norm(gamma[m].value());
        CHECK(std::abs(gs.functions[m](gamma[m]) * w - complexd(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("offdiagonal residual decreases as the cutoff grows") {
    const PointSequence gamma = small_lattice();
    double prev = std::numeric_limits<double>::infinity();
    for (double cut : {0.5, 0.8, 0.95}) {
        const auto gs = build_g_system(gamma, 0.5, cut);
        CHECK(gs.offdiag_residual <= prev + 1e-12);
        prev = gs.offdiag_residual;
    }
}

TEST_CASE("series interpolant reproduces a single point") {
    const Partition part(2, 8);
    const PointSequence gamma({DiscPoint(0.0, 0.0)}, part);
    const auto gs = build_g_system(gamma, 1.0, 0.5);
    const std::vector<complexd> data{complexd(1.0, 0.0)};
    for (double s : {2.0, 4.0}) {
        const auto f = series_interpolant(gamma, data, gs, s);
        CHECK(std::abs(f(complexd(0.0, 0.0)) - complexd(1.0, 0.0)) < 1e-14);
    }
}

TEST_CASE("series interpolant with full cutoff reproduces the data exactly") {
    const PointSequence gamma = small_lattice();
    // R_cut beyond the pseudohyperbolic diameter: every pair carries a zero
    const auto gs = build_g_system(gamma, 0.5, 0.9999);
    CHECK(gs.offdiag_residual < 1e-12);
    const auto data = gaussian_data(gamma.size(), 21);
    const double s = choose_series_exponent(gamma, data, gs.n);
    const auto f = series_interpolant(gamma, data, gs, s);
    const auto values = restrict_to(f, gamma);
    for (std::size_t m = 0; m < gamma.size(); ++m)
        CHECK(std::abs(values[m] - data[m]) < 1e-8);
}

TEST_CASE("series residual obeys the triangle-inequality budget") {
    const PointSequence gamma = small_lattice();
    const auto gs = build_g_system(gamma, 0.5, 0.6);
    auto data = gaussian_data(gamma.size(), 22);
    const double s = choose_series_exponent(gamma, data, gs.n);
    const auto f = series_interpolant(gamma, data, gs, s);
    const auto values = restrict_to(f, gamma);

    double r_max = 0.0;
    for (const auto& z : gamma.points()) r_max = std::max(r_max, z.abs());
    for (std::size_t m2 = 0; m2 < gamma.size(); ++m2) {
        // |f(z_m') - a_m'| <= offdiag * (1-|z_m'|^2)^{-n} *
        //      sum_{m != m'} |a_m| (1-|z_m|^2)^{n+s} / |1 - conj(z_m) z_m'|^s
        double budget = 0.0;
        for (std::size_t m = 0; m < gamma.size(); ++m) {
            if (m == m2) continue;
            budget += std::abs(data[m]) * std::pow(1.0 - std::norm(gamma[m].value()), gs.n + s) /
                      std::pow(std::abs(1.0 - std::conj(gamma[m].value()) * gamma[m2].value()), s);
        }
        budget *= gs.offdiag_residual * std::pow(1.0 - std::norm(gamma[m2].value()), -gs.n);
        CHECK(std::abs(values[m2] - data[m2]) <= budget + 1e-12);
    }
}

TEST_CASE("summability certificate rejects hopeless exponents") {
    // dense lattice, slowly decaying weights: s = 0.1 fails the decay test
    const PointSequence gamma = generate_lattice(0.5, 2.0, 0.999);
    std::vector<complexd> data(gamma.size(), complexd(1.0, 0.0));
    CHECK(summability_margin(gamma, data, 0.1, 0.1) > 0.5);
    CHECK(summability_margin(gamma, data, 0.5, 4.0) <= 0.5);
}

TEST_CASE("iterative interpolation with an exact base stops after one step") {
    const PointSequence gamma = small_lattice();
    const SpaceParams sp(2.0, 2.0);
    const int degree = static_cast<int>(gamma.size()) + 10;
    BaseSolver exact = [&](std::span<const complexd> v) {
        return least_squares_interpolant(gamma, v, degree, sp).f;
    };
    const auto data = gaussian_data(gamma.size(), 23);
    const auto res = iterative_interpolant(gamma, data, exact, sp, 1e-8, 20);
    CHECK(res.iterations == 1);
    CHECK(res.gamma_contraction < 1e-6);
    CHECK(res.residual <= 1e-8 * lpq_norm(data, gamma, sp));
}

TEST_CASE("iterative interpolation of zero data returns zero") {
    const PointSequence gamma = small_lattice();
    const SpaceParams sp(2.0, 2.0);
    BaseSolver base = [&](std::span<const complexd> v) {
        return least_squares_interpolant(gamma, v, 40, sp).f;
    };
    const std::vector<complexd> zeros(gamma.size(), complexd(0.0, 0.0));
    const auto res = iterative_interpolant(gamma, zeros, base, sp, 1e-8, 20);
    CHECK(res.iterations == 0);
    CHECK(res.residual == 0.0);
    CHECK(res.norm_f == 0.0);
}

TEST_CASE("iterative interpolation contracts geometrically with a series base") {
    const PointSequence gamma = small_lattice();
    const SpaceParams sp(2.0, 2.0);
    const auto gs = build_g_system(gamma, 0.5, 0.6);
    const auto data = gaussian_data(gamma.size(), 24);
    const double s = choose_series_exponent(gamma, data, gs.n);
    BaseSolver base = [&](std::span<const complexd> v) {
        return series_interpolant(gamma, v, gs, s);
    };
    const double tol = 1e-6;
    const auto res = iterative_interpolant(gamma, data, base, sp, tol, 200);
    CHECK(res.gamma_contraction < 1.0);
    CHECK(res.residual <= tol * lpq_norm(data, gamma, sp));
    // geometric-series prediction for the step count
    if (res.gamma_contraction > 0.0) {
        const int predicted =
            static_cast<int>(std::ceil(std::log(tol) / std::log(res.gamma_contraction)));
        CHECK(res.iterations <= predicted + 2);
    }
}

TEST_CASE("minimal-norm interpolation at a single point is the constant") {
    const Partition part(2, 18);
    const PointSequence gamma({DiscPoint(0.0, 0.0)}, part);
    const SpaceParams sp(2.0, 2.0);
    const std::vector<complexd> data{complexd(1.0, 0.0)};
    const auto res = least_squares_interpolant(gamma, data, 10, sp);
    CHECK(res.residual < 1e-10);
    CHECK(res.norm_f == doctest::Approx(1.0).epsilon(1e-8));
    for (const complexd z : {complexd(0.3, 0.2), complexd(-0.7, 0.1)})
        CHECK(std::abs(res.f(z) - complexd(1.0, 0.0)) < 1e-9);
}

TEST_CASE("least squares returns zero for zero data") {
    const PointSequence gamma = small_lattice();
    const std::vector<complexd> zeros(gamma.size(), complexd(0.0, 0.0));
    const auto res = least_squares_interpolant(gamma, zeros, 30, SpaceParams(2.0, 2.0));
    CHECK(res.norm_f == 0.0);
    CHECK(res.residual == 0.0);
}

TEST_CASE("square systems match a dense LU oracle") {
    const Partition part(2, 12);
    const PointSequence gamma({DiscPoint(0.1, 0.2), DiscPoint(-0.4, 0.1), DiscPoint(0.3, -0.5),
                               DiscPoint(0.6, 0.3)},
                              part);
    const auto data = gaussian_data(gamma.size(), 25);
    const auto res = least_squares_interpolant(gamma, data, 3, SpaceParams(2.0, 2.0));
    CHECK(res.residual < 1e-9);

    // independent route: direct dense solve of the Vandermonde system
    Eigen::MatrixXcd V(4, 4);
    Eigen::VectorXcd rhs(4);
    for (int m = 0; m < 4; ++m) {
        complexd zp(1.0, 0.0);
        for (int n = 0; n < 4; ++n) {
            V(m, n) = zp;
            zp *= gamma[static_cast<std::size_t>(m)].value();
        }
        rhs(m) = data[static_cast<std::size_t>(m)];
    }
    const Eigen::VectorXcd c = V.fullPivLu().solve(rhs);
    for (int n = 0; n < 4; ++n) {
        const complexd got = std::get<AnalyticFunction::Polynomial>(res.f.repr()).coeffs
                                 [static_cast<std::size_t>(n)];
        CHECK(std::abs(got - c(n)) < 1e-9);
    }
}

TEST_CASE("solver is linear in the data") {
    const PointSequence gamma = small_lattice();
    const SpaceParams sp(2.0, 2.0);
    const auto a = gaussian_data(gamma.size(), 26);
    const auto b = gaussian_data(gamma.size(), 27);
    const complexd alpha(0.7, -0.3);
    std::vector<complexd> combo(gamma.size());
    for (std::size_t m = 0; m < gamma.size(); ++m) combo[m] = alpha * a[m] + b[m];

    const int degree = 30;
    const auto fa = least_squares_interpolant(gamma, a, degree, sp);
    const auto fb = least_squares_interpolant(gamma, b, degree, sp);
    const auto fc = least_squares_interpolant(gamma, combo, degree, sp);
    std::mt19937_64 rng(28);
    std::uniform_real_distribution<double> unit(-0.6, 0.6);
    for (int t = 0; t < 20; ++t) {
        const complexd z(unit(rng), unit(rng));
        CHECK(std::abs(fc.f(z) - (alpha * fa.f(z) + fb.f(z))) < 1e-9);
    }
}

TEST_CASE("rank deficiency is detected") {
    const Partition part(2, 12);
    // more points than basis functions
    const PointSequence gamma = small_lattice();
    const auto data = gaussian_data(gamma.size(), 29);
    CHECK_THROWS_AS(
        least_squares_interpolant(gamma, data, static_cast<int>(gamma.size()) - 2,
                                  SpaceParams(2.0, 2.0)),
        RankDeficient);

    // numerically coincident points
    const double base = 0.5;
    const double twin = 0.5 + 5e-17;
    const PointSequence collide(
        {DiscPoint(base, 0.0), DiscPoint(twin, 1e-17), DiscPoint(-0.3, 0.2)}, part);
    const auto d3 = gaussian_data(3, 30);
    CHECK_THROWS_AS(least_squares_interpolant(collide, d3, 10, SpaceParams(2.0, 2.0)),
                    RankDeficient);
}

TEST_CASE("interpolation constant of the singleton is one") {
    const Partition part(2, 18);
    const PointSequence gamma({DiscPoint(0.0, 0.0)}, part);
    const std::vector<int> degrees{10, 20};
    const auto trace = interpolation_constant(gamma, SpaceParams(2.0, 2.0), 20, degrees, 5);
    for (double m : trace.M) CHECK(m == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("refined q > 2 objective never exceeds the Hilbert solution") {
    const PointSequence gamma = small_lattice();
    const auto data = gaussian_data(gamma.size(), 31);
    const SpaceParams sp24(2.0, 4.0);
    const auto refined = least_squares_interpolant(gamma, data, 40, sp24);
    const auto hilbert = least_squares_interpolant(gamma, data, 40, SpaceParams(2.0, 2.0));
    CHECK(refined.residual < 1e-8);
    // both interpolate; the refined one is at least as good in its own norm
    const double refined_obj = std::pow(triple_norm(refined.f, sp24, gamma.partition()), 1.0);
    const double hilbert_obj = std::pow(triple_norm(hilbert.f, sp24, gamma.partition()), 1.0);
    CHECK(refined_obj <= hilbert_obj * (1.0 + 1e-6));
}

TEST_CASE("oscillation estimate carries a stable constant") {
    // |f(z)-f(w)|^p <= C rho(z,w)^p integral over E(w, r) of |f|^p (1-|x|^2)^{-2}
    const double p = 2.0, r = 0.5;
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto fit_constant = [&](int samples) {
        double worst = 0.0;
        for (int t = 0; t < samples; ++t) {
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<complexd> coeffs(6);
            for (auto& cc : coeffs) cc = complexd(gauss(rng), gauss(rng));
            const auto f = AnalyticFunction::polynomial(coeffs);

            const DiscPoint w(std::polar(0.8 * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)));
            const EuclideanDisk disk = hyperbolic_disk(w, r);
            // z within rho r/2 of w
            const DiscPoint z(mobius(w.value(), std::polar(0.4 * r * unit(rng),
                                                           2.0 * M_PI * unit(rng))));
            const double rho = pseudo_distance(z, w);
            if (rho < 1e-3) continue;
            const double lhs = std::pow(std::abs(f(z.value()) - f(w.value())), p);
            const double integral = integrate_disk(
                [&](complexd x) {
                    return std::abs(x) < 1.0
                               ? std::pow(std::abs(f(x)), p) /
                                     std::pow(1.0 - std::norm(x), 2.0)
                               : 0.0;
                },
                disk.center.value(), disk.radius, 24, 64);
            worst = std::max(worst, lhs / (std::pow(rho, p) * integral));
        }
        return worst;
    };
    const double c1 = fit_constant(60);
    const double c2 = fit_constant(60);
    CHECK(c1 > 0.0);
    CHECK(std::max(c1, c2) / std::min(c1, c2) < 2.0);
}
