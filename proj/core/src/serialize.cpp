#include "apq/serialize.hpp"

#include <sstream>

namespace apq {

using nlohmann::json;

namespace {

json complex_to_json(complexd z) { return json::array({z.real(), z.imag()}); }

complexd complex_from_json(const json& j) {
    return complexd(j.at(0).get<double>(), j.at(1).get<double>());
}

} // namespace

json partition_to_json(const Partition& part) {
    return json{{"L", part.L()}, {"levels", part.levels()}};
}

Partition partition_from_json(const json& j) {
    return Partition(j.at("L").get<int>(), j.at("levels").get<int>());
}

json sequence_to_json(const PointSequence& seq) {
    json points = json::array();
    for (const auto& z : seq.points()) points.push_back(complex_to_json(z.value()));
    return json{{"partition", partition_to_json(seq.partition())}, {"points", points}};
}

PointSequence sequence_from_json(const json& j) {
    Partition part = partition_from_json(j.at("partition"));
    std::vector<DiscPoint> pts;
    for (const auto& p : j.at("points")) pts.emplace_back(complex_from_json(p));
    return PointSequence(std::move(pts), std::move(part));
}

json function_to_json(const AnalyticFunction& f) {
    using AF = AnalyticFunction;
    struct Visitor {
        json operator()(const AF::Polynomial& p) const {
            json coeffs = json::array();
            for (const auto& c : p.coeffs) coeffs.push_back(complex_to_json(c));
            return json{{"kind", "polynomial"}, {"coeffs", coeffs}};
        }
        json operator()(const AF::KernelTerm& k) const {
            return json{{"kind", "kernel"},
                        {"node", complex_to_json(k.node)},
                        {"exponent", k.exponent},
                        {"scale", complex_to_json(k.scale)},
                        {"growth_power", k.growth_power}};
        }
        json operator()(const AF::BlaschkeProduct& b) const {
            json nodes = json::array();
            for (const auto& w : b.nodes) nodes.push_back(complex_to_json(w.value()));
            return json{{"kind", "blaschke"}, {"nodes", nodes},
                        {"scale", complex_to_json(b.scale)}};
        }
        json operator()(const AF::Sum& s) const {
            json parts = json::array();
            for (const auto& part : s.parts) parts.push_back(function_to_json(part));
            return json{{"kind", "sum"}, {"parts", parts}};
        }
        json operator()(const AF::Product& p) const {
            json parts = json::array();
            for (const auto& part : p.parts) parts.push_back(function_to_json(part));
            return json{{"kind", "product"}, {"parts", parts}};
        }
    };
    return std::visit(Visitor{}, f.repr());
}

AnalyticFunction function_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "polynomial") {
        std::vector<complexd> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
        return AnalyticFunction::polynomial(std::move(coeffs));
    }
    if (kind == "kernel") {
        return AnalyticFunction::kernel_term(
            complex_from_json(j.at("node")), j.at("exponent").get<double>(),
            complex_from_json(j.at("scale")), j.at("growth_power").get<double>());
    }
    if (kind == "blaschke") {
        std::vector<DiscPoint> nodes;
        for (const auto& w : j.at("nodes")) nodes.emplace_back(complex_from_json(w));
        return AnalyticFunction::blaschke(std::move(nodes), complex_from_json(j.at("scale")));
    }
    if (kind == "sum" || kind == "product") {
        std::vector<AnalyticFunction> parts;
        for (const auto& part : j.at("parts")) parts.push_back(function_from_json(part));
        return (kind == "sum") ? AnalyticFunction::sum(std::move(parts))
                               : AnalyticFunction::product(std::move(parts));
    }
    throw Error("function_from_json: unknown kind '" + kind + "'");
}

json density_report_to_json(const DensityReport& rep) {
    return json{{"kind", rep.kind == DensityKind::upper ? "upper" : "lower"},
                {"r_schedule", rep.r_schedule},
                {"values", rep.values},
                {"extrapolated", rep.extrapolated},
                {"fit_residual", rep.fit_residual},
                {"zeta_candidates_used", rep.zeta_candidates_used}};
}

json discreteness_to_json(const DiscretenessReport& rep) {
    json j{{"mass_sum", rep.mass_sum},
           {"counting_violations", rep.counting_violations},
           {"probes", rep.probes}};
    if (std::isfinite(rep.delta)) j["delta"] = rep.delta;
    if (std::isfinite(rep.mass_bound)) j["mass_bound"] = rep.mass_bound;
    return j;
}

json frame_report_to_json(const FrameReport& rep) {
    return json{{"K1_estimate", rep.K1_estimate},
                {"K2_estimate", rep.K2_estimate},
                {"degree_schedule", rep.degree_schedule},
                {"K1_trace", rep.K1_trace},
                {"K2_trace", rep.K2_trace},
                {"test_corpus_size", rep.test_corpus_size}};
}

json inequality_to_json(const InequalityReport& rep) {
    return json{{"name", rep.name},
                {"parameter_grid_size", rep.parameter_grid_size},
                {"worst_ratio", rep.worst_ratio},
                {"C_fitted", rep.C_fitted},
                {"violations", rep.violations}};
}

json interpolation_result_to_json(const InterpolationResult& res, double s, double n) {
    return json{{"norm_f", res.norm_f},  {"residual", res.residual},
                {"iterations", res.iterations}, {"gamma", res.gamma_contraction},
                {"s", s},                {"n", n}};
}

std::string density_csv(const DensityReport& rep) {
    std::ostringstream out;
    out << "r,D_r,kind\n";
    const char* kind = rep.kind == DensityKind::upper ? "upper" : "lower";
    for (std::size_t i = 0; i < rep.r_schedule.size(); ++i)
        out << rep.r_schedule[i] << ',' << rep.values[i] << ',' << kind << '\n';
    return out.str();
}

std::string frame_csv(const FrameReport& rep) {
    std::ostringstream out;
    out << "degree,K1,K2\n";
    for (std::size_t i = 0; i < rep.degree_schedule.size(); ++i)
        out << rep.degree_schedule[i] << ',' << rep.K1_trace[i] << ',' << rep.K2_trace[i]
            << '\n';
    return out.str();
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::string json_hash(const nlohmann::json& j) { return hex64(fnv1a64(j.dump())); }

} // namespace apq
