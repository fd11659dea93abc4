#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "apq/disc.hpp"

namespace apq {

/// Evaluable analytic function on the disc: polynomials, kernel terms
/// scale * (1-|w|^2)^t / (1 - conj(w) z)^s, finite Blaschke-type products,
/// and sums and products of these.
///
/// Kernel nodes may sit on the closed disc; a unit-modulus node gives the
/// rational boundary kernels such as (1 - z)^-s. Blaschke nodes stay strictly
/// inside.
class AnalyticFunction {
public:
    struct Polynomial {
        std::vector<complexd> coeffs;  // ascending degree
    };
    struct KernelTerm {
        complexd node;        // w, |w| <= 1
        double exponent;      // s > 0
        complexd scale;
        double growth_power;  // t >= 0
    };
    struct BlaschkeProduct {
        std::vector<DiscPoint> nodes;
        complexd scale;
    };
    struct Sum {
        std::vector<AnalyticFunction> parts;
    };
    struct Product {
        std::vector<AnalyticFunction> parts;
    };

    AnalyticFunction() : repr_(Polynomial{{complexd(0.0, 0.0)}}) {}

    static AnalyticFunction polynomial(std::vector<complexd> coeffs);
    static AnalyticFunction constant(complexd c);
    static AnalyticFunction monomial(int n, complexd c = 1.0);
    static AnalyticFunction kernel_term(complexd node, double exponent,
                                        complexd scale = 1.0, double growth_power = 0.0);
    static AnalyticFunction blaschke(std::vector<DiscPoint> nodes, complexd scale = 1.0);
    static AnalyticFunction sum(std::vector<AnalyticFunction> parts);
    static AnalyticFunction product(std::vector<AnalyticFunction> parts);

    complexd operator()(complexd z) const;
    complexd operator()(const DiscPoint& z) const { return (*this)(z.value()); }

    /// Exact degree bound when the function is a polynomial, otherwise empty.
    std::optional<int> degree() const;

    using Repr = std::variant<Polynomial, KernelTerm, BlaschkeProduct, Sum, Product>;
    const Repr& repr() const { return repr_; }

private:
    explicit AnalyticFunction(Repr r) : repr_(std::move(r)) {}
    Repr repr_;
};

} // namespace apq
