#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "realid/homotopy.hpp"
#include "realid/parallel.hpp"
#include "realid/waring.hpp"

namespace realid {

/// Two decompositions closer than this under canonical_distance are the same.
inline constexpr double kDedupTolerance = 1e-6;
/// Endpoints with some |lambda_i| below this are rank-deficient limits.
inline constexpr double kDegenerateLambda = 1e-10;

/// Minimum over summand permutations of the largest summand-wise distance
/// max(|l - l'|_inf, |lambda - lambda'|). Computed as a bottleneck assignment
/// on the r x r distance matrix, so it is exactly zero for reordered copies.
double canonical_distance(const Decomposition& a, const Decomposition& b);

struct StopPolicy {
  /// Stop after this many consecutive loops without a new solution.
  std::size_t stable_loops = 8;
  /// Stop as soon as this many solutions are known.
  std::optional<std::size_t> target_count;
  std::size_t max_loops = 200;

  void validate() const;
};

/// One triangle loop base -> aux1 -> aux2 -> base in parameter space.
struct LoopSpec {
  CVector base_params;
  CVector aux1;
  CVector aux2;
  /// Twist applied to the segment leaving the (real) base point.
  Complex gamma = 1.0;

  /// Draws the auxiliary tuples for loop `loop_index` of a run seeded with
  /// `seed`. Each coordinate is a complex Gaussian scaled by the magnitude of
  /// the matching base coefficient, so the auxiliary systems share the base
  /// system's dynamic range.
  static LoopSpec draw(const CVector& base_params, std::uint64_t seed, std::size_t loop_index);
};

struct LoopRecord {
  std::size_t loop_index = 0;
  std::size_t new_solutions = 0;
  std::size_t total_after = 0;
  std::size_t paths_tracked = 0;
  std::size_t paths_failed = 0;
};

/// Deduplicated set of decompositions of one base tensor, with loop history.
class SolutionRegistry {
 public:
  SolutionRegistry(WaringSpec spec, CVector base_params, StopPolicy policy = {},
                   double dedup_tol = kDedupTolerance);

  const WaringSpec& spec() const { return spec_; }
  const CVector& base_params() const { return base_params_; }
  const StopPolicy& stop_policy() const { return policy_; }
  double dedup_tolerance() const { return dedup_tol_; }
  const std::vector<Decomposition>& solutions() const { return solutions_; }
  std::size_t size() const { return solutions_.size(); }
  const std::vector<LoopRecord>& history() const { return history_; }

  /// Index of a stored decomposition within dedup tolerance, if any.
  std::optional<std::size_t> find(const Decomposition& dec) const;
  /// Inserts dec unless an equivalent one is stored. Returns true if inserted.
  bool insert(const Decomposition& dec);

  void record(const LoopRecord& rec) { history_.push_back(rec); }

  /// Set by solve when stable_loops fruitless loops (or target_count) ended the run.
  bool stabilized = false;
  /// Set by solve when max_loops ran out first.
  bool exhausted = false;

 private:
  WaringSpec spec_;
  CVector base_params_;
  StopPolicy policy_;
  double dedup_tol_;
  std::vector<Decomposition> solutions_;
  std::vector<LoopRecord> history_;
};

/// Polishes an endpoint against the base system and returns it as a
/// decomposition, or nullopt if it fails the residual or |lambda| checks.
std::optional<Decomposition> accept_endpoint(const PolySystem& sys, const WaringSpec& spec,
                                             const CVector& base_params, const CVector& endpoint,
                                             double residual_tol);

/// Transports every known solution around one loop and inserts the new
/// endpoints. Failed paths are skipped. Returns the number of insertions.
std::size_t triangle_loop(SolutionRegistry& registry, const PolySystem& sys, const LoopSpec& loop,
                          const TrackSettings& settings, const ParallelMap& parallel = ParallelMap{},
                          LoopRecord* record = nullptr);

/// Runs triangle loops from `start` until the stop policy fires.
SolutionRegistry solve(const PolySystem& sys, const WaringSpec& spec, const CVector& base_params,
                       const Decomposition& start, const StopPolicy& policy,
                       const TrackSettings& settings, std::uint64_t seed,
                       const ParallelMap& parallel = ParallelMap{});

}  // namespace realid
