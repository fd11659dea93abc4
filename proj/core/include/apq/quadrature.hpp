#pragma once

#include <functional>
#include <vector>

#include "apq/disc.hpp"

namespace apq {

/// Gauss-Legendre rule on [-1, 1]; cached per node count.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);

/// Nodes and weights for integrating over [a, b] with an n-point rule.
void append_gauss_panel(double a, double b, int n,
                        std::vector<double>& nodes, std::vector<double>& weights);

struct Panel {
    double a;
    double b;
};

/// Panel scheme for radial integrals over [0, 1): a fixed geometric refinement
/// toward 0 (fractional powers of r), dyadic halving toward 1, and a closing
/// panel [1 - 2^-(E+1), 1]. Integrands blow up polynomially at r = 1, so the
/// refinement concentrates there.
struct RadialScheme {
    std::vector<Panel> shared;   // origin panels plus dyadic panels 0..E-2
    Panel last_dyadic;           // dyadic panel E-1
    Panel closing;               // [1 - 2^-(E+1), 1]
    Panel closing_prev;          // [1 - 2^-E, 1], the coarser closing panel
};

RadialScheme radial_scheme(int edge_refinement);

/// Sum of w_i * g(r_i) over an n-point Gauss panel on [a, b].
double integrate_panel(const std::function<double(double)>& g, const Panel& p, int n);

/// Mean of F over the circle of radius r with n equally spaced nodes
/// (trapezoidal rule; exact for trigonometric polynomials of degree < n).
double circle_mean(const std::function<double(complexd)>& F, double r, int n);

/// Integral of F over a Euclidean disk, polar tensor rule (n_r x n_theta).
double integrate_disk(const std::function<double(complexd)>& F,
                      complexd center, double radius, int n_r, int n_theta);

} // namespace apq
