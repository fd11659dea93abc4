// apqlab: command-line laboratory for mixed-norm disc function spaces.
// Subcommands: gen, density, separation, norm, interpolate, sample, verify,
// experiment {interp|sampling|separation}.
// Exit codes: 0 = ran, 1 = invariant violation detected, 2 = usage error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "apq/experiments.hpp"
#include "apq/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw apq::Error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

json config_stamp(const json& config) {
    return json{{"config_hash", apq::json_hash(config)}, {"version", apq::kToolVersion}};
}

json experiment_to_json(const apq::ExperimentReport& rep) {
    json targets = json::array();
    for (const auto& t : rep.targets) {
        targets.push_back(json{{"multiple", t.multiple},
                               {"target_density", t.target_density},
                               {"measured_density", t.measured_density},
                               {"lattice_c", t.lattice_c},
                               {"lattice_points", t.lattice_points},
                               {"degrees", t.degrees},
                               {"trace", t.trace},
                               {"k2_trace", t.k2_trace},
                               {"verdict", t.verdict}});
    }
    json j{{"name", rep.name}, {"p", rep.p}, {"q", rep.q}, {"targets", targets}};
    if (!rep.pair_distances.empty()) {
        j["pair_distances"] = rep.pair_distances;
        j["pair_constants"] = rep.pair_constants;
        j["control_constants"] = rep.control_constants;
        j["rank_deficient_at_collision"] = rep.rank_deficient_at_collision;
    }
    return j;
}

std::string experiment_csv(const apq::ExperimentReport& rep) {
    std::ostringstream out;
    out << "multiple,measured_density,degree,trace,k2\n";
    for (const auto& t : rep.targets)
        for (std::size_t i = 0; i < t.degrees.size(); ++i)
            out << t.multiple << ',' << t.measured_density << ',' << t.degrees[i] << ','
                << t.trace[i] << ',' << (i < t.k2_trace.size() ? t.k2_trace[i] : 0.0) << '\n';
    return out.str();
}

struct CommonOpts {
    double p = 2.0, q = 2.0;
    int L = 2, levels = 18;
    std::uint64_t seed = 1;
    std::string out = ".";
    std::string schedule;
    std::string target;
    double tol = 0.05;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--p", opts.p, "first exponent of the space");
    cmd->add_option("--q", opts.q, "second exponent of the space");
    cmd->add_option("--L", opts.L, "partition parameter (beta = 1/L)");
    cmd->add_option("--levels", opts.levels, "partition depth");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--schedule", opts.schedule, "comma-separated schedule");
    cmd->add_option("--target", opts.target, "comma-separated targets");
    cmd->add_option("--tol", opts.tol, "tolerance");
}

int run_gen(const CommonOpts& opts, double sigma, double c, double r_max,
            const std::string& kind) {
    apq::PointSequence seq = [&] {
        if (c > 0.0) return apq::generate_lattice(sigma, c, r_max, opts.L);
        const auto targets = parse_doubles(opts.target);
        if (targets.empty())
            throw apq::ParameterViolation("gen: provide --target or an explicit --c");
        apq::CalibrationOptions copts;
        copts.sigma = sigma;
        copts.r_max = r_max;
        copts.L = opts.L;
        const auto kd = (kind == "lower") ? apq::DensityKind::lower : apq::DensityKind::upper;
        auto cal = apq::calibrate_lattice(targets.front(), kd, opts.tol, copts);
        std::ostringstream trace;
        trace << "c,measured\n";
        for (const auto& [cc, dd] : cal.trace) trace << cc << ',' << dd << '\n';
        write_text(fs::path(opts.out) / "calibration.csv", trace.str());
        return std::move(cal.sequence);
    }();
    json j = apq::sequence_to_json(seq);
    j["content_hash"] = apq::json_hash(j);
    j["version"] = apq::kToolVersion;
    write_json(fs::path(opts.out) / "sequence.json", j);
    std::cout << "gen: " << seq.size() << " points written to "
              << (fs::path(opts.out) / "sequence.json") << "\n";
    return 0;
}

int run_density(const CommonOpts& opts, const std::string& seq_path, const std::string& kind,
                bool integral_form, int grid_target) {
    const auto seq = apq::sequence_from_json(read_json(seq_path));
    apq::DensityOptions dopts;
    if (!opts.schedule.empty()) dopts.r_schedule = parse_doubles(opts.schedule);
    dopts.integral_form = integral_form;
    dopts.grid_target = grid_target;
    const auto kd = (kind == "lower") ? apq::DensityKind::lower : apq::DensityKind::upper;
    const auto rep = apq::density(seq, kd, dopts);
    json j = apq::density_report_to_json(rep);
    j["content_hash"] = apq::json_hash(apq::sequence_to_json(seq));
    j["version"] = apq::kToolVersion;
    write_json(fs::path(opts.out) / ("density_" + kind + ".json"), j);
    write_text(fs::path(opts.out) / ("density_" + kind + ".csv"), apq::density_csv(rep));
    std::cout << "density(" << kind << "): extrapolated " << rep.extrapolated
              << " (fit residual " << rep.fit_residual << ")\n";
    return 0;
}

int run_separation(const CommonOpts& opts, const std::string& seq_path) {
    const auto seq = apq::sequence_from_json(read_json(seq_path));
    const auto rep = apq::discreteness_report(seq, opts.seed);
    json j = apq::discreteness_to_json(rep);
    j["content_hash"] = apq::json_hash(apq::sequence_to_json(seq));
    j["version"] = apq::kToolVersion;
    write_json(fs::path(opts.out) / "separation.json", j);
    std::cout << "separation: delta = " << rep.delta << ", mass " << rep.mass_sum << " <= "
              << rep.mass_bound << ", counting violations " << rep.counting_violations << "\n";
    return rep.counting_violations == 0 && rep.mass_sum <= rep.mass_bound ? 0 : 1;
}

int run_norm(const CommonOpts& opts, const std::string& func_path, double alpha,
             double growth_n) {
    const auto f = apq::function_from_json(read_json(func_path));
    const apq::SpaceParams sp(opts.p, opts.q);
    const apq::Partition part(opts.L, opts.levels);
    const apq::QuadConfig cfg;
    const json config{{"p", opts.p}, {"q", opts.q},       {"L", opts.L},
                      {"levels", opts.levels}, {"n_theta", cfg.n_theta},
                      {"radial_nodes", cfg.radial_nodes}, {"edge_refinement", cfg.edge_refinement}};
    const std::string hash = apq::json_hash(config);

    const auto mixed = apq::mixed_norm(f, sp, cfg);
    const double triple = apq::triple_norm(f, sp, part, cfg);
    const auto bergman = apq::weighted_bergman_norm(f, opts.p, alpha, cfg);
    const double growth = apq::growth_norm(f, growth_n);

    std::ostringstream csv;
    csv << "norm_kind,p,q,value,config_hash\n";
    csv << "mixed," << opts.p << ',' << opts.q << ',' << mixed.value << ',' << hash << '\n';
    csv << "triple," << opts.p << ',' << opts.q << ',' << triple << ',' << hash << '\n';
    csv << "weighted_bergman_alpha" << alpha << ',' << opts.p << ",," << bergman.value << ','
        << hash << '\n';
    csv << "growth_n" << growth_n << ",,," << growth << ',' << hash << '\n';
    write_text(fs::path(opts.out) / "norms.csv", csv.str());
    std::cout << "mixed " << mixed.value << (mixed.diverged ? " (diverged)" : "") << ", triple "
              << triple << ", bergman " << bergman.value << ", growth " << growth << "\n";
    return (mixed.diverged || bergman.diverged) ? 1 : 0;
}

int run_interpolate(const CommonOpts& opts, const std::string& seq_path,
                    const std::string& data_path, const std::string& method, int degree,
                    double n, double s, double r_cut, bool emit_function) {
    const auto seq = apq::sequence_from_json(read_json(seq_path));
    const json jdata = read_json(data_path);
    std::vector<apq::complexd> data;
    for (const auto& v : jdata.at("values"))
        data.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    const apq::SpaceParams sp(opts.p, opts.q);

    apq::InterpolationResult result;
    double used_s = 0.0;
    if (method == "least_squares") {
        const int deg = degree > 0 ? degree : static_cast<int>(seq.size()) - 1;
        result = apq::least_squares_interpolant(seq, data, deg, sp);
    } else {
        const auto gs = apq::build_g_system(seq, n, r_cut);
        used_s = (s > 0.0) ? s : apq::choose_series_exponent(seq, data, n);
        if (method == "series") {
            result.f = apq::series_interpolant(seq, data, gs, used_s);
            const auto values = apq::restrict_to(result.f, seq);
            std::vector<apq::complexd> err(values.size());
            for (std::size_t m = 0; m < values.size(); ++m) err[m] = data[m] - values[m];
            result.residual = apq::lpq_norm(err, seq, sp);
            result.norm_f = apq::mixed_norm(result.f, sp).value;
        } else if (method == "iterative") {
            auto base = [&](std::span<const apq::complexd> v) {
                return apq::series_interpolant(seq, v, gs, used_s);
            };
            result = apq::iterative_interpolant(seq, data, base, sp, opts.tol, 64);
        } else {
            throw apq::ParameterViolation("interpolate: unknown method " + method);
        }
    }
    json j = apq::interpolation_result_to_json(result, used_s, n);
    j["content_hash"] = apq::json_hash(apq::sequence_to_json(seq));
    j["version"] = apq::kToolVersion;
    write_json(fs::path(opts.out) / "interpolation.json", j);
    if (emit_function)
        write_json(fs::path(opts.out) / "function.json", apq::function_to_json(result.f));
    std::cout << "interpolate(" << method << "): norm " << result.norm_f << ", residual "
              << result.residual << ", iterations " << result.iterations << "\n";
    return 0;
}

int run_sample(const CommonOpts& opts, const std::string& seq_path, int trials) {
    const auto seq = apq::sequence_from_json(read_json(seq_path));
    const apq::SpaceParams sp(opts.p, opts.q);
    std::vector<int> degrees = opts.schedule.empty() ? std::vector<int>{30, 60, 90}
                                                     : parse_ints(opts.schedule);
    const auto rep = apq::frame_bounds(seq, sp, degrees, trials, opts.seed);
    json j = apq::frame_report_to_json(rep);
    j["content_hash"] = apq::json_hash(apq::sequence_to_json(seq));
    j["version"] = apq::kToolVersion;
    write_json(fs::path(opts.out) / "frame_report.json", j);
    write_text(fs::path(opts.out) / "frame_trace.csv", apq::frame_csv(rep));
    std::cout << "sample: K1 " << rep.K1_estimate << ", K2 " << rep.K2_estimate << "\n";
    return 0;
}

int run_verify(const CommonOpts& opts, const std::string& checks_csv) {
    std::vector<std::string> wanted;
    if (!checks_csv.empty()) {
        std::stringstream ss(checks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) wanted.push_back(item);
    }
    auto selected = [&](const std::string& name) {
        return wanted.empty() || std::find(wanted.begin(), wanted.end(), name) != wanted.end();
    };

    std::vector<apq::InequalityReport> reports;
    const std::vector<double> rho_grid = {0.5, 0.75, 0.9, 0.96, 0.99, 0.997, 0.999};
    if (selected("power_subadditivity"))
        reports.push_back(apq::check_power_subadditivity(0.5, 10000, opts.seed));
    if (selected("circle_integral"))
        reports.push_back(apq::check_circle_integral(2.0, rho_grid));
    if (selected("radial_integral"))
        reports.push_back(apq::check_radial_integral(0.0, 2.0, rho_grid));
    if (selected("disc_integral"))
        reports.push_back(apq::check_disc_integral(0.0, 4.0, rho_grid));
    if (selected("lattice_sum")) {
        const auto lattice = apq::generate_lattice(0.5, 1.0, 0.999, opts.L);
        std::vector<apq::DiscPoint> zg;
        for (double r : rho_grid) zg.emplace_back(r, 0.0);
        reports.push_back(apq::check_lattice_sum(lattice, 1.5, 3.0, zg));
    }
    if (selected("pointwise_growth") || selected("disk_domination")) {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<apq::AnalyticFunction> corpus;
        for (int i = 0; i < 30; ++i) {
            std::vector<apq::complexd> coeffs(11);
            for (auto& c : coeffs) c = apq::complexd(gauss(rng), gauss(rng));
            corpus.push_back(apq::AnalyticFunction::polynomial(coeffs));
        }
        const apq::SpaceParams sp(opts.p, opts.q);
        if (selected("pointwise_growth")) {
            std::vector<apq::AnalyticFunction> normalized;
            for (const auto& f : corpus) {
                const double nf = apq::mixed_norm(f, sp).value;
                normalized.push_back(
                    apq::AnalyticFunction::product({f, apq::AnalyticFunction::constant(1.0 / nf)}));
            }
            const auto grid = apq::hyperbolic_grid(0.995, 300);
            reports.push_back(apq::check_pointwise_growth(normalized, sp, grid));
        }
        if (selected("disk_domination")) {
            const apq::Partition part(opts.L, opts.levels);
            std::vector<apq::DiscPoint> centers = {
                {0.0, 0.0}, {0.5, 0.0}, {0.0, 0.9}, {-0.99, 0.0}};
            reports.push_back(apq::check_disk_domination(
                std::span(corpus.data(), 10), centers, sp, part));
        }
    }

    std::ostringstream csv;
    csv << "name,grid,worst_ratio,C_fitted,violations\n";
    int total_violations = 0;
    for (const auto& rep : reports) {
        write_json(fs::path(opts.out) / ("verify_" + rep.name + ".json"),
                   apq::inequality_to_json(rep));
        csv << rep.name << ',' << rep.parameter_grid_size << ',' << rep.worst_ratio << ','
            << rep.C_fitted << ',' << rep.violations << '\n';
        total_violations += rep.violations;
        std::cout << rep.name << ": C = " << rep.C_fitted << ", violations " << rep.violations
                  << "\n";
    }
    write_text(fs::path(opts.out) / "verify_summary.csv", csv.str());
    return total_violations == 0 ? 0 : 1;
}

int run_experiment(const CommonOpts& opts, const std::string& which, int trials) {
    apq::ExperimentConfig cfg;
    cfg.p = opts.p;
    cfg.q = opts.q;
    cfg.L = opts.L;
    cfg.trials = trials;
    cfg.seed = opts.seed;
    cfg.tol = opts.tol;
    if (!opts.target.empty()) cfg.target_multiples = parse_doubles(opts.target);
    if (!opts.schedule.empty()) cfg.degree_schedule = parse_ints(opts.schedule);

    apq::ExperimentReport rep;
    if (which == "interp")
        rep = apq::cmd_interpolation_dichotomy(cfg);
    else if (which == "sampling")
        rep = apq::cmd_sampling_dichotomy(cfg);
    else if (which == "separation")
        rep = apq::cmd_separation_necessity(cfg);
    else
        throw apq::ParameterViolation("experiment: unknown kind " + which);

    const json config{{"p", cfg.p},       {"q", cfg.q},
                      {"L", cfg.L},       {"targets", cfg.target_multiples},
                      {"degrees", cfg.degree_schedule}, {"trials", cfg.trials},
                      {"seed", cfg.seed}, {"tol", cfg.tol}};
    json j = experiment_to_json(rep);
    j.update(config_stamp(config));
    write_json(fs::path(opts.out) / ("experiment_" + which + ".json"), j);
    write_text(fs::path(opts.out) / ("experiment_" + which + ".csv"), experiment_csv(rep));

    for (const auto& t : rep.targets)
        std::cout << "target " << t.multiple << "/q: measured " << t.measured_density
                  << ", verdict " << t.verdict << "\n";
    if (!rep.pair_distances.empty())
        for (std::size_t i = 0; i < rep.pair_distances.size(); ++i)
            std::cout << "pair distance " << rep.pair_distances[i] << ": M = "
                      << rep.pair_constants[i] << " (control " << rep.control_constants[i]
                      << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for mixed-norm spaces on the unit disc"};
    app.require_subcommand(1);

    CommonOpts opts;
    double sigma = 0.5, c = 0.0, r_max = 0.9995, alpha = 0.0, growth_n = 1.0;
    double n_exp = 0.4, s_exp = 0.0, r_cut = 0.6;
    int degree = 0, trials = 50, grid_target = 400;
    bool integral_form = false, emit_function = false;
    std::string seq_path, data_path, func_path, kind = "upper", method = "least_squares";
    std::string checks;

    auto* gen = app.add_subcommand("gen", "generate or calibrate a lattice");
    add_common(gen, opts);
    gen->add_option("--sigma", sigma, "ring ratio");
    gen->add_option("--c", c, "ring weight (skips calibration)");
    gen->add_option("--r-max", r_max, "outermost ring radius");
    gen->add_option("--kind", kind, "density kind for calibration (upper|lower)");

    auto* dens = app.add_subcommand("density", "estimate uniform densities");
    add_common(dens, opts);
    dens->add_option("--seq", seq_path, "sequence JSON")->required();
    dens->add_option("--kind", kind, "upper|lower");
    dens->add_flag("--integral-form", integral_form, "use the integral quotient form");
    dens->add_option("--grid", grid_target, "candidate grid size");

    auto* sep = app.add_subcommand("separation", "separation and discreteness diagnostics");
    add_common(sep, opts);
    sep->add_option("--seq", seq_path, "sequence JSON")->required();

    auto* nrm = app.add_subcommand("norm", "evaluate norms of a function");
    add_common(nrm, opts);
    nrm->add_option("--func", func_path, "function JSON")->required();
    nrm->add_option("--alpha", alpha, "weighted Bergman exponent");
    nrm->add_option("--growth-n", growth_n, "growth-space exponent");

    auto* interp = app.add_subcommand("interpolate", "solve an interpolation problem");
    add_common(interp, opts);
    interp->add_option("--seq", seq_path, "sequence JSON")->required();
    interp->add_option("--data", data_path, "data JSON {\"values\": [[re,im],...]}")->required();
    interp->add_option("--method", method, "least_squares|series|iterative");
    interp->add_option("--degree", degree, "polynomial degree (least_squares)");
    interp->add_option("--n", n_exp, "growth exponent of the g-system");
    interp->add_option("--s", s_exp, "kernel exponent (0 = auto)");
    interp->add_option("--r-cut", r_cut, "neighbor cutoff of the g-system");
    interp->add_flag("--emit-function", emit_function, "write the interpolant JSON");

    auto* sample = app.add_subcommand("sample", "frame-bound traces");
    add_common(sample, opts);
    sample->add_option("--seq", seq_path, "sequence JSON")->required();
    sample->add_option("--trials", trials, "random corpus size per degree");

    auto* verify = app.add_subcommand("verify", "run the inequality suite");
    add_common(verify, opts);
    verify->add_option("--checks", checks, "comma-separated check names (default: all)");

    auto* exp = app.add_subcommand("experiment", "density dichotomy experiments");
    add_common(exp, opts);
    std::string which;
    exp->add_option("kind", which, "interp|sampling|separation")->required();
    exp->add_option("--trials", trials, "trials per degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_gen(opts, sigma, c, r_max, kind);
        if (dens->parsed()) return run_density(opts, seq_path, kind, integral_form, grid_target);
        if (sep->parsed()) return run_separation(opts, seq_path);
        if (nrm->parsed()) return run_norm(opts, func_path, alpha, growth_n);
        if (interp->parsed())
            return run_interpolate(opts, seq_path, data_path, method, degree, n_exp, s_exp,
                                   r_cut, emit_function);
        if (sample->parsed()) return run_sample(opts, seq_path, trials);
        if (verify->parsed()) return run_verify(opts, checks);
        if (exp->parsed()) return run_experiment(opts, which, trials);
    } catch (const apq::ParameterViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const apq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
