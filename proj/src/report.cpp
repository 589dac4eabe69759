#include "realid/report.hpp"

namespace realid {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

Json to_json(const Decomposition& dec) {
  Json summands = Json::array();
  for (const Summand& s : dec.summands) {
    summands.push_back({{"l", to_json(s.l)}, {"lambda", to_json(s.lambda)}});
  }
  return {{"summands", summands}};
}

Json to_json(const LoopRecord& rec) {
  return {{"loop", rec.loop_index},
          {"new", rec.new_solutions},
          {"total", rec.total_after},
          {"tracked", rec.paths_tracked},
          {"failed", rec.paths_failed}};
}

Json to_json(const SolutionRegistry& registry) {
  Json solutions = Json::array();
  for (const Decomposition& dec : registry.solutions()) solutions.push_back(to_json(dec));
  Json history = Json::array();
  for (const LoopRecord& rec : registry.history()) history.push_back(to_json(rec));
  return {{"r", registry.spec().r},
          {"n", registry.spec().n},
          {"d", registry.spec().d},
          {"stabilized", registry.stabilized},
          {"exhausted", registry.exhausted},
          {"solutions", solutions},
          {"history", history}};
}

Json to_json(const ClassifiedSet& set) {
  Json classes = Json::array();
  for (const DecompositionClass& c : set.classes) {
    Json entry = {{"tag", to_string(c.tag)}};
    if (c.partner) entry["partner"] = *c.partner;
    classes.push_back(entry);
  }
  return {{"total", set.total()},
          {"real", set.count(ClassTag::Real)},
          {"autoconjugate", set.count(ClassTag::Autoconjugate)},
          {"conjugate_pairs", set.conjugate_pairs()},
          {"identifiable_over_R", set.identifiable_over_R},
          {"identifiable_over_C", set.identifiable_over_C},
          {"real_tolerance", set.real_tolerance},
          {"classes", classes}};
}

Json to_json(const TrackSettings& s) {
  return {{"initial_step", s.initial_step},
          {"min_step", s.min_step},
          {"max_step", s.max_step},
          {"corrector_tol", s.corrector_tol},
          {"max_corrector_iters", s.max_corrector_iters},
          {"max_steps", s.max_steps},
          {"divergence_norm", s.divergence_norm}};
}

Json to_json(const StopPolicy& p) {
  Json out = {{"stable_loops", p.stable_loops}, {"max_loops", p.max_loops}};
  out["target_count"] = p.target_count ? Json(*p.target_count) : Json(nullptr);
  return out;
}

Json to_json(const PlaneSignature& sig) { return Json::array({sig.real_count, sig.nonreal_count}); }

Json to_json(const PlaneIntersection& section) {
  Json points = Json::array();
  for (const CPoint3& x : section.points) points.push_back(to_json(CVector(x)));
  return {{"signature", to_json(section.signature)}, {"points", points}};
}

Json to_json(const PencilRecord& rec) {
  Json out = {{"k", rec.k}};
  if (rec.signature) {
    out["signature"] = to_json(*rec.signature);
  } else if (rec.tangent_point) {
    out["tangent"] = to_json(CVector(*rec.tangent_point));
  } else {
    out["error"] = rec.error;
  }
  return out;
}

Json to_json(const SecantLine& line) {
  return {{"direction", to_json(CVector(line.direction))},
          {"t", Json::array({to_json(line.t1), to_json(line.t2)})},
          {"real_line", line.is_real_line},
          {"points_real", Json::array({line.points_real[0], line.points_real[1]})},
          {"points", Json::array({to_json(CVector(line.points[0])), to_json(CVector(line.points[1]))})}};
}

Json point_record(const RPoint3& p, PointType type, const std::vector<SecantLine>& lines) {
  Json out = {{"P", Json::array({p[0], p[1], p[2], p[3]})}, {"type", to_string(type)}};
  Json arr = Json::array();
  for (const SecantLine& line : lines) arr.push_back(to_json(line));
  out["lines"] = arr;
  return out;
}

Json to_json(const SectionSignature& sig) { return Json::array({sig.real_count, sig.nonreal_count}); }

Json section_record(const SegreSpec& spec, const LinearSpace& space, const SectionResult& section) {
  Json rows = Json::array();
  for (Eigen::Index m = 0; m < space.equations.rows(); ++m) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < space.equations.cols(); ++c) row.push_back(space.equations(m, c));
    rows.push_back(row);
  }
  Json points = Json::array();
  for (const CVector& x : section.points) points.push_back(to_json(x));
  return {{"spec", Json::array({spec.dims[0], spec.dims[1]})},
          {"degree", section.degree_expected},
          {"signature", to_json(section.signature)},
          {"L", rows},
          {"points", points}};
}

}  // namespace realid
