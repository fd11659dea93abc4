#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "apq/density.hpp"
#include "apq/function.hpp"
#include "apq/inequalities.hpp"
#include "apq/interpolate.hpp"
#include "apq/sampling.hpp"
#include "apq/sequence.hpp"

namespace apq {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json partition_to_json(const Partition& part);
Partition partition_from_json(const nlohmann::json& j);

nlohmann::json sequence_to_json(const PointSequence& seq);
PointSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json function_to_json(const AnalyticFunction& f);
AnalyticFunction function_from_json(const nlohmann::json& j);

nlohmann::json density_report_to_json(const DensityReport& rep);
nlohmann::json discreteness_to_json(const DiscretenessReport& rep);
nlohmann::json frame_report_to_json(const FrameReport& rep);
nlohmann::json inequality_to_json(const InequalityReport& rep);
nlohmann::json interpolation_result_to_json(const InterpolationResult& res, double s, double n);

std::string density_csv(const DensityReport& rep);
std::string frame_csv(const FrameReport& rep);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);
/// FNV-1a hash of the compact JSON dump; stable content fingerprint.
std::string json_hash(const nlohmann::json& j);

} // namespace apq
