#pragma once

#include <string>

#include "apq/density.hpp"
#include "apq/interpolate.hpp"
#include "apq/sampling.hpp"

namespace apq {

struct ExperimentConfig {
    double p = 2.0;
    double q = 2.0;
    int L = 2;
    std::vector<double> target_multiples = {0.35, 0.7, 1.4};  // of the 1/q threshold
    std::vector<int> degree_schedule = {30, 60, 90};
    int trials = 20;
    std::uint64_t seed = 1;
    double tol = 0.05;  // density calibration tolerance
};

struct TargetResult {
    double multiple = 0.0;
    double target_density = 0.0;
    double measured_density = 0.0;
    double lattice_c = 0.0;
    std::size_t lattice_points = 0;
    std::vector<int> degrees;
    std::vector<double> trace;     // interpolation constants or K1 values
    std::vector<double> k2_trace;  // sampling only
    std::string verdict;
};

struct ExperimentReport {
    std::string name;
    double p = 2.0;
    double q = 2.0;
    std::vector<TargetResult> targets;

    // separation-necessity extras
    std::vector<double> pair_distances;
    std::vector<double> pair_constants;     // data separating the pair
    std::vector<double> control_constants;  // data equal on the pair
    bool rank_deficient_at_collision = false;
};

/// Threshold sweep for interpolation: calibrated lattices below and above the
/// critical density, each with its interpolation-constant trace.
ExperimentReport cmd_interpolation_dichotomy(const ExperimentConfig& cfg);

/// Threshold sweep for sampling: calibrated lattices with frame-bound traces.
ExperimentReport cmd_sampling_dichotomy(const ExperimentConfig& cfg);

/// Colliding-pair experiment: the interpolation constant grows like the
/// reciprocal pair distance when the data separates the pair.
ExperimentReport cmd_separation_necessity(const ExperimentConfig& cfg);

} // namespace apq
