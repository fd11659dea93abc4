#include "apq/function.hpp"

#include <cmath>

namespace apq {

AnalyticFunction AnalyticFunction::polynomial(std::vector<complexd> coeffs) {
    if (coeffs.empty()) coeffs.push_back(complexd(0.0, 0.0));
    return AnalyticFunction(Polynomial{std::move(coeffs)});
}

AnalyticFunction AnalyticFunction::constant(complexd c) {
    return polynomial({c});
}

AnalyticFunction AnalyticFunction::monomial(int n, complexd c) {
    std::vector<complexd> coeffs(static_cast<std::size_t>(n) + 1, complexd(0.0, 0.0));
    coeffs.back() = c;
    return polynomial(std::move(coeffs));
}

AnalyticFunction AnalyticFunction::kernel_term(complexd node, double exponent,
                                               complexd scale, double growth_power) {
    if (std::abs(node) > 1.0 + 1e-14)
        throw OutOfRange("kernel_term: node outside the closed disc");
    if (!(exponent > 0.0))
        throw OutOfRange("kernel_term: exponent must be positive");
    if (growth_power < 0.0)
        throw OutOfRange("kernel_term: growth power must be nonnegative");
    return AnalyticFunction(KernelTerm{node, exponent, scale, growth_power});
}

AnalyticFunction AnalyticFunction::blaschke(std::vector<DiscPoint> nodes, complexd scale) {
    return AnalyticFunction(BlaschkeProduct{std::move(nodes), scale});
}

AnalyticFunction AnalyticFunction::sum(std::vector<AnalyticFunction> parts) {
    return AnalyticFunction(Sum{std::move(parts)});
}

AnalyticFunction AnalyticFunction::product(std::vector<AnalyticFunction> parts) {
    return AnalyticFunction(Product{std::move(parts)});
}

namespace {

struct Evaluator {
    complexd z;

    complexd operator()(const AnalyticFunction::Polynomial& p) const {
        complexd acc(0.0, 0.0);
        for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    complexd operator()(const AnalyticFunction::KernelTerm& k) const {
        // principal branch; 1 - conj(w) z has positive real part for |w|,|z| < 1
        const complexd base = 1.0 - std::conj(k.node) * z;
        complexd value = k.scale * std::pow(base, complexd(-k.exponent, 0.0));
        if (k.growth_power > 0.0)
            value *= std::pow(1.0 - std::norm(k.node), k.growth_power);
        return value;
    }

    complexd operator()(const AnalyticFunction::BlaschkeProduct& b) const {
        complexd acc = b.scale;
        for (const auto& w : b.nodes) acc *= mobius(w.value(), z);
        return acc;
    }

    complexd operator()(const AnalyticFunction::Sum& s) const {
        complexd acc(0.0, 0.0);
        for (const auto& part : s.parts) acc += part(z);
        return acc;
    }

    complexd operator()(const AnalyticFunction::Product& p) const {
        complexd acc(1.0, 0.0);
        for (const auto& part : p.parts) acc *= part(z);
        return acc;
    }
};

} // namespace

complexd AnalyticFunction::operator()(complexd z) const {
    return std::visit(Evaluator{z}, repr_);
}

std::optional<int> AnalyticFunction::degree() const {
    struct Visitor {
        std::optional<int> operator()(const Polynomial& p) const {
            return static_cast<int>(p.coeffs.size()) - 1;
        }
        std::optional<int> operator()(const KernelTerm&) const { return std::nullopt; }
        std::optional<int> operator()(const BlaschkeProduct&) const { return std::nullopt; }
        std::optional<int> operator()(const Sum& s) const {
            int deg = 0;
            for (const auto& part : s.parts) {
                const auto d = part.degree();
                if (!d) return std::nullopt;
                deg = std::max(deg, *d);
            }
            return deg;
        }
        std::optional<int> operator()(const Product& p) const {
            int deg = 0;
            for (const auto& part : p.parts) {
                const auto d = part.degree();
                if (!d) return std::nullopt;
                deg += *d;
            }
            return deg;
        }
    };
    return std::visit(Visitor{}, repr_);
}

} // namespace apq
