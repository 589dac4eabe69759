#include "realid/realcert.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "realid/linalg.hpp"

namespace realid {

bool is_real_point(const CVector& v, double real_tol) {
  if (v.size() == 0) return true;
  return v.imag().cwiseAbs().maxCoeff() < real_tol * (1.0 + max_abs(v));
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::Real: return "real";
    case ClassTag::Autoconjugate: return "autoconjugate";
    case ClassTag::ConjugatePairMember: return "conjugate_pair";
  }
  return "unknown";
}

std::size_t ClassifiedSet::count(ClassTag tag) const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [tag](const auto& c) { return c.tag == tag; }));
}

UnpairedDecomposition::UnpairedDecomposition(std::size_t index, double nearest_distance)
    : std::runtime_error("decomposition " + std::to_string(index) +
                         " has no conjugate partner in the set (nearest at distance " +
                         std::to_string(nearest_distance) + "); the solve is incomplete"),
      index_(index),
      nearest_(nearest_distance) {}

ClassifiedSet classify(const std::vector<Decomposition>& decompositions, double real_tol,
                       double dedup_tol) {
  ClassifiedSet out;
  out.decompositions = decompositions;
  out.real_tolerance = real_tol;
  out.classes.resize(decompositions.size());

  std::vector<char> resolved(decompositions.size(), 0);
  for (std::size_t i = 0; i < decompositions.size(); ++i) {
    if (is_real_point(to_unknowns(decompositions[i]), real_tol)) {
      out.classes[i].tag = ClassTag::Real;
      resolved[i] = 1;
    }
  }
  for (std::size_t i = 0; i < decompositions.size(); ++i) {
    if (resolved[i]) continue;
    const Decomposition conj = decompositions[i].conjugate();
    if (canonical_distance(decompositions[i], conj) < dedup_tol) {
      out.classes[i].tag = ClassTag::Autoconjugate;
      resolved[i] = 1;
      continue;
    }
    double nearest = std::numeric_limits<double>::infinity();
    std::size_t best = i;
    for (std::size_t j = 0; j < decompositions.size(); ++j) {
      if (j == i) continue;
      const double dist = canonical_distance(conj, decompositions[j]);
      if (dist < nearest) {
        nearest = dist;
        best = j;
      }
    }
    if (!(nearest < dedup_tol)) throw UnpairedDecomposition(i, nearest);
    if (resolved[best] && out.classes[best].partner != i) throw UnpairedDecomposition(i, nearest);
    out.classes[i] = {ClassTag::ConjugatePairMember, best};
    out.classes[best] = {ClassTag::ConjugatePairMember, i};
    resolved[i] = resolved[best] = 1;
  }
  out.identifiable_over_C = out.total() == 1;
  out.identifiable_over_R = out.count(ClassTag::Real) == 1;
  return out;
}

ClassifiedSet classify(const SolutionRegistry& registry, double real_tol) {
  return classify(registry.solutions(), real_tol, registry.dedup_tolerance());
}

}  // namespace realid
