#pragma once

#include "apq/errors.hpp"

namespace apq {

/// Exponent pair (p, q) of the mixed-norm space.
struct SpaceParams {
    double p = 2.0;
    double q = 2.0;

    SpaceParams() = default;
    SpaceParams(double p_, double q_) : p(p_), q(q_) {
        if (!(p > 0.0) || !(q > 0.0))
            throw OutOfRange("SpaceParams: p and q must be positive");
    }
};

/// Quadrature configuration shared by the norm integrals.
struct QuadConfig {
    int n_theta = 512;        // angular nodes on each circle
    int radial_nodes = 16;    // Gauss nodes per radial panel
    int edge_refinement = 9;  // dyadic halvings of the panel grid toward r = 1

    void validate() const {
        if (n_theta < 8) throw OutOfRange("QuadConfig: n_theta must be >= 8");
        if (radial_nodes < 8) throw OutOfRange("QuadConfig: radial_nodes must be >= 8");
        if (edge_refinement < 2) throw OutOfRange("QuadConfig: edge_refinement must be >= 2");
    }
};

} // namespace apq
