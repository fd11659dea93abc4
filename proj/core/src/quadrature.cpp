#include "apq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace apq {

namespace {

GaussRule build_gauss(int n) {
    GaussRule rule;
    rule.x.resize(static_cast<std::size_t>(n));
    rule.w.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > 1e-15);
        rule.x[static_cast<std::size_t>(i - 1)] = -z;
        rule.x[static_cast<std::size_t>(n - i)] = z;
        rule.w[static_cast<std::size_t>(i - 1)] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[static_cast<std::size_t>(n - i)] = rule.w[static_cast<std::size_t>(i - 1)];
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

void append_gauss_panel(double a, double b, int n,
                        std::vector<double>& nodes, std::vector<double>& weights) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        nodes.push_back(mid + half * rule.x[static_cast<std::size_t>(i)]);
        weights.push_back(half * rule.w[static_cast<std::size_t>(i)]);
    }
}

RadialScheme radial_scheme(int edge_refinement) {
    if (edge_refinement < 2)
        throw OutOfRange("radial_scheme: edge_refinement must be >= 2");
    RadialScheme s;
    // geometric panels toward 0: [0,1/32], [1/32,1/16], ..., [1/4,1/2]
    double lo = 0.0, hi = 1.0 / 32.0;
    while (hi <= 0.5 + 1e-15) {
        s.shared.push_back({lo, hi});
        lo = hi;
        hi *= 2.0;
    }
    // dyadic panels toward 1: [1 - 2^-(i+1), 1 - 2^-(i+2)], i = 0..E-1
    for (int i = 0; i + 1 < edge_refinement; ++i)
        s.shared.push_back({1.0 - std::ldexp(1.0, -(i + 1)), 1.0 - std::ldexp(1.0, -(i + 2))});
    const int e = edge_refinement;
    s.last_dyadic = {1.0 - std::ldexp(1.0, -e), 1.0 - std::ldexp(1.0, -(e + 1))};
    s.closing = {1.0 - std::ldexp(1.0, -(e + 1)), 1.0};
    s.closing_prev = {1.0 - std::ldexp(1.0, -e), 1.0};
    return s;
}

double integrate_panel(const std::function<double(double)>& g, const Panel& p, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += rule.w[static_cast<std::size_t>(i)] * g(mid + half * rule.x[static_cast<std::size_t>(i)]);
    return half * sum;
}

double circle_mean(const std::function<double(complexd)>& F, double r, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        sum += F(std::polar(r, t));
    }
    return sum / n;
}

double integrate_disk(const std::function<double(complexd)>& F,
                      complexd center, double radius, int n_r, int n_theta) {
    const GaussRule& rule = gauss_legendre(n_r);
    double sum = 0.0;
    for (int i = 0; i < n_r; ++i) {
        const double s = 0.5 * (rule.x[static_cast<std::size_t>(i)] + 1.0);  // (0,1)
        const double rho = radius * s;
        double ring = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const double t = 2.0 * M_PI * j / n_theta;
            ring += F(center + std::polar(rho, t));
        }
        ring *= 2.0 * M_PI / n_theta;
        sum += 0.5 * rule.w[static_cast<std::size_t>(i)] * radius * rho * ring;
    }
    return sum;
}

} // namespace apq
