#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "realid/elliptic.hpp"
#include "realid/monodromy.hpp"
#include "realid/realcert.hpp"
#include "realid/segre.hpp"

namespace realid {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaId = "realid.report/v1";

// Complex numbers serialize as [re, im].
Json to_json(Complex z);
Json to_json(const CVector& v);
Json to_json(const Decomposition& dec);
Json to_json(const LoopRecord& rec);
Json to_json(const SolutionRegistry& registry);
Json to_json(const ClassifiedSet& set);
Json to_json(const TrackSettings& settings);
Json to_json(const StopPolicy& policy);

Json to_json(const PlaneSignature& sig);
Json to_json(const PlaneIntersection& section);
Json to_json(const PencilRecord& rec);
Json to_json(const SecantLine& line);
Json point_record(const RPoint3& p, PointType type, const std::vector<SecantLine>& lines);

Json to_json(const SectionSignature& sig);
Json section_record(const SegreSpec& spec, const LinearSpace& space, const SectionResult& section);

}  // namespace realid
