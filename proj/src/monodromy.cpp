#include "realid/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "realid/linalg.hpp"

namespace realid {

namespace {

double summand_distance(const Summand& a, const Summand& b) {
  double dist = std::abs(a.lambda - b.lambda);
  for (Eigen::Index h = 0; h < a.l.size(); ++h) dist = std::max(dist, std::abs(a.l[h] - b.l[h]));
  return dist;
}

// Kuhn's augmenting path step restricted to edges with cost <= threshold.
bool augment(std::size_t row, double threshold, const std::vector<std::vector<double>>& cost,
             std::vector<int>& match_of_col, std::vector<char>& seen) {
  for (std::size_t col = 0; col < cost.size(); ++col) {
    if (cost[row][col] > threshold || seen[col]) continue;
    seen[col] = 1;
    if (match_of_col[col] < 0 ||
        augment(static_cast<std::size_t>(match_of_col[col]), threshold, cost, match_of_col, seen)) {
      match_of_col[col] = static_cast<int>(row);
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<double>>& cost, double threshold) {
  const std::size_t r = cost.size();
  std::vector<int> match_of_col(r, -1);
  for (std::size_t row = 0; row < r; ++row) {
    std::vector<char> seen(r, 0);
    if (!augment(row, threshold, cost, match_of_col, seen)) return false;
  }
  return true;
}

}  // namespace

double canonical_distance(const Decomposition& a, const Decomposition& b) {
  const std::size_t r = a.rank();
  if (b.rank() != r) throw DimensionError("canonical_distance: decompositions differ in rank");
  if (r == 0) return 0.0;
  if (a.summands[0].l.size() != b.summands[0].l.size()) {
    throw DimensionError("canonical_distance: decompositions differ in n");
  }
  std::vector<std::vector<double>> cost(r, std::vector<double>(r));
  std::vector<double> values;
  values.reserve(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      cost[i][j] = summand_distance(a.summands[i], b.summands[j]);
      values.push_back(cost[i][j]);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  // Smallest threshold admitting a perfect matching.
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (has_perfect_matching(cost, values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return values[lo];
}

void StopPolicy::validate() const {
  if (stable_loops < 1) throw std::invalid_argument("stable_loops must be at least 1");
  if (max_loops < 1) throw std::invalid_argument("max_loops must be at least 1");
}

LoopSpec LoopSpec::draw(const CVector& base_params, std::uint64_t seed, std::size_t loop_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(loop_index), 0x6c6f6f70u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  const double floor = 1e-8 * (max_abs(base_params) + 1e-300);
  LoopSpec loop;
  loop.base_params = base_params;
  loop.aux1.resize(base_params.size());
  loop.aux2.resize(base_params.size());
  for (Eigen::Index a = 0; a < base_params.size(); ++a) {
    const double scale = std::max(std::abs(base_params[a]), floor);
    loop.aux1[a] = scale * Complex(gauss(rng), gauss(rng));
  }
  for (Eigen::Index a = 0; a < base_params.size(); ++a) {
    const double scale = std::max(std::abs(base_params[a]), floor);
    loop.aux2[a] = scale * Complex(gauss(rng), gauss(rng));
  }
  loop.gamma = std::polar(1.0, angle(rng));
  return loop;
}

SolutionRegistry::SolutionRegistry(WaringSpec spec, CVector base_params, StopPolicy policy,
                                   double dedup_tol)
    : spec_(spec), base_params_(std::move(base_params)), policy_(policy), dedup_tol_(dedup_tol) {
  policy_.validate();
  if (!(dedup_tol_ > 0.0)) throw std::invalid_argument("dedup tolerance must be positive");
}

std::optional<std::size_t> SolutionRegistry::find(const Decomposition& dec) const {
  for (std::size_t i = 0; i < solutions_.size(); ++i) {
    if (canonical_distance(dec, solutions_[i]) < dedup_tol_) return i;
  }
  return std::nullopt;
}

bool SolutionRegistry::insert(const Decomposition& dec) {
  if (dec.rank() != spec_.r) throw DimensionError("decomposition rank does not match the registry");
  if (find(dec)) return false;
  solutions_.push_back(dec);
  return true;
}

std::optional<Decomposition> accept_endpoint(const PolySystem& sys, const WaringSpec& spec,
                                             const CVector& base_params, const CVector& endpoint,
                                             double residual_tol) {
  if (!endpoint.allFinite()) return std::nullopt;
  const NewtonResult polished = polish(sys, base_params, endpoint);
  if (polished.singular || !(polished.residual < residual_tol)) return std::nullopt;
  Decomposition dec = from_unknowns(spec, polished.point);
  for (const Summand& s : dec.summands) {
    if (std::abs(s.lambda) < kDegenerateLambda) return std::nullopt;
  }
  return dec;
}

std::size_t triangle_loop(SolutionRegistry& registry, const PolySystem& sys, const LoopSpec& loop,
                          const TrackSettings& settings, const ParallelMap& parallel,
                          LoopRecord* record) {
  if (registry.size() == 0) throw std::invalid_argument("triangle_loop needs a non-empty registry");
  const SegmentHomotopy leave(sys, loop.base_params, loop.aux1, loop.gamma);
  const SegmentHomotopy cross(sys, loop.aux1, loop.aux2);
  const SegmentHomotopy back(sys, loop.aux2, loop.base_params);

  const std::vector<Decomposition> known = registry.solutions();
  std::vector<std::optional<Decomposition>> arrivals(known.size());
  parallel.for_each(known.size(), [&](std::size_t k) {
    CVector x = to_unknowns(known[k]);
    for (const SegmentHomotopy* leg : {&leave, &cross, &back}) {
      const PathResult path = track(*leg, x, settings);
      if (path.status != PathStatus::Success) return;
      x = path.endpoint;
    }
    arrivals[k] = accept_endpoint(sys, registry.spec(), loop.base_params, x, settings.corrector_tol);
  });

  std::size_t inserted = 0;
  std::size_t failed = 0;
  for (const auto& arrival : arrivals) {
    if (!arrival) {
      ++failed;
    } else if (registry.insert(*arrival)) {
      ++inserted;
    }
  }
  if (record != nullptr) {
    record->new_solutions = inserted;
    record->total_after = registry.size();
    record->paths_tracked = known.size();
    record->paths_failed = failed;
  }
  return inserted;
}

SolutionRegistry solve(const PolySystem& sys, const WaringSpec& spec, const CVector& base_params,
                       const Decomposition& start, const StopPolicy& policy,
                       const TrackSettings& settings, std::uint64_t seed,
                       const ParallelMap& parallel) {
  settings.validate();
  SolutionRegistry registry(spec, base_params, policy);
  auto first = accept_endpoint(sys, spec, base_params, to_unknowns(start), settings.corrector_tol);
  if (!first) throw std::invalid_argument("start decomposition does not solve the base system");
  registry.insert(*first);

  std::size_t fruitless = 0;
  for (std::size_t loop_index = 0; loop_index < policy.max_loops; ++loop_index) {
    LoopRecord rec;
    rec.loop_index = loop_index;
    const LoopSpec loop = LoopSpec::draw(base_params, seed, loop_index);
    const std::size_t found = triangle_loop(registry, sys, loop, settings, parallel, &rec);
    registry.record(rec);
    fruitless = found == 0 ? fruitless + 1 : 0;
    if (policy.target_count && registry.size() >= *policy.target_count) {
      registry.stabilized = true;
      return registry;
    }
    if (fruitless >= policy.stable_loops) {
      registry.stabilized = true;
      return registry;
    }
  }
  registry.exhausted = true;
  return registry;
}

}  // namespace realid
