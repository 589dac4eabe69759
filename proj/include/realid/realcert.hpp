#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "realid/monodromy.hpp"

namespace realid {

inline constexpr double kRealTolerance = 1e-8;

/// True iff max |Im v_k| < real_tol * (1 + max |v_k|).
bool is_real_point(const CVector& v, double real_tol = kRealTolerance);

enum class ClassTag { Real, Autoconjugate, ConjugatePairMember };

std::string_view to_string(ClassTag tag);

struct DecompositionClass {
  ClassTag tag = ClassTag::Real;
  /// Index of the conjugate partner; set iff tag is ConjugatePairMember.
  std::optional<std::size_t> partner;
};

struct ClassifiedSet {
  std::vector<Decomposition> decompositions;
  std::vector<DecompositionClass> classes;
  bool identifiable_over_C = false;
  bool identifiable_over_R = false;
  double real_tolerance = kRealTolerance;

  std::size_t total() const { return decompositions.size(); }
  std::size_t count(ClassTag tag) const;
  std::size_t conjugate_pairs() const { return count(ClassTag::ConjugatePairMember) / 2; }
};

/// A non-real decomposition whose conjugate is not in the set. Only an
/// incomplete solve produces this; more loops are the remedy.
class UnpairedDecomposition : public std::runtime_error {
 public:
  UnpairedDecomposition(std::size_t index, double nearest_distance);
  std::size_t index() const { return index_; }
  double nearest_distance() const { return nearest_; }

 private:
  std::size_t index_;
  double nearest_;
};

/// Tags each decomposition Real, Autoconjugate or ConjugatePairMember and
/// derives the identifiability verdicts. Throws UnpairedDecomposition.
ClassifiedSet classify(const std::vector<Decomposition>& decompositions,
                       double real_tol = kRealTolerance, double dedup_tol = kDedupTolerance);

ClassifiedSet classify(const SolutionRegistry& registry, double real_tol = kRealTolerance);

}  // namespace realid
