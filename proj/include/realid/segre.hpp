#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "realid/homotopy.hpp"
#include "realid/parallel.hpp"

namespace realid {

using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Two-factor Segre product P^a1 x P^a2 embedded in P^{(a1+1)(a2+1)-1}.
struct SegreSpec {
  std::array<unsigned, 2> dims{1, 1};

  /// Number of homogeneous ambient coordinates, (a1+1)(a2+1).
  std::size_t num_coords() const { return std::size_t{dims[0] + 1} * (dims[1] + 1); }
  std::size_t ambient_dim() const { return num_coords() - 1; }
  /// Dimension of the Segre variety, a1 + a2.
  std::size_t dim() const { return std::size_t{dims[0]} + dims[1]; }

  /// Throws std::invalid_argument for a zero factor dimension.
  void validate() const;
};

/// Degree (a1 + a2)! / (a1! a2!).
std::uint64_t degree(const SegreSpec& spec);

struct AlmostUnbalancedProfile {
  std::uint64_t a_q = 0;
  std::uint64_t degree = 0;
  /// True when degree - a_q is even.
  bool even = false;
};

/// a_q = (a1+1)(a2+1) - a1 - a2 together with the degree and parity of D - a_q.
AlmostUnbalancedProfile almost_unbalanced_profile(const SegreSpec& spec);

/// Linear space given by real linear forms (rows) on the ambient coordinates.
struct LinearSpace {
  RMatrix equations;

  std::size_t codim() const { return static_cast<std::size_t>(equations.rows()); }
};

struct SectionSignature {
  int real_count = 0;
  int nonreal_count = 0;
  friend bool operator==(const SectionSignature&, const SectionSignature&) = default;
};

struct SectionResult {
  /// Ambient points u ⊗ v (row-major), normalized by the largest coordinate.
  std::vector<CVector> points;
  SectionSignature signature;
  std::uint64_t degree_expected = 0;
};

/// Section with a point count different from the degree: L is not transverse.
class DeficientSection : public std::runtime_error {
 public:
  DeficientSection(std::size_t found, std::uint64_t expected);
  std::size_t found() const { return found_; }

 private:
  std::size_t found_;
};

/// Rank-one point of the Segre variety for factors u, v.
CVector segre_point(const CVector& u, const CVector& v);

/// All points of X ∩ L. Tracks a total-degree homotopy in each of the
/// (a1+1)(a2+1) bi-charts u_i = v_j = 1 and merges the results.
SectionResult solve_section(const SegreSpec& spec, const LinearSpace& space,
                            const TrackSettings& settings = {},
                            const ParallelMap& parallel = ParallelMap{});

struct SpanSample {
  LinearSpace space;
  /// The sampled real Segre points (and padding points) spanning the space.
  std::vector<RVector> points;
};

/// Linear space spanned by `segre_count` random real Segre points and
/// `padding` random real ambient points, as equations of its orthogonal
/// complement. Resamples when the points fail to be independent.
SpanSample sample_span(const SegreSpec& spec, std::size_t segre_count, std::size_t padding,
                       std::uint64_t seed);

/// Span of k random real Segre points.
LinearSpace span_through_points(const SegreSpec& spec, std::size_t k, std::uint64_t seed);

/// Random real linear space of codimension a1 + a2.
LinearSpace random_space(const SegreSpec& spec, std::uint64_t seed);

enum class SearchStrategy {
  /// Span of target.real_count real Segre points padded with random real points.
  RealSpan,
  /// Random real linear space.
  RandomSpace,
  /// Random step away from the space whose real count came closest so far.
  Perturbation,
};

struct SearchWitness {
  LinearSpace space;
  SectionResult section;
  std::size_t attempt = 0;
  SearchStrategy strategy = SearchStrategy::RealSpan;
  /// Earlier attempts skipped because their section had the wrong point count.
  std::size_t deficient_sections = 0;
};

/// Cycles through the three strategies until a section has the target
/// signature. Returns nullopt after max_attempts.
std::optional<SearchWitness> search_signature(const SegreSpec& spec, SectionSignature target,
                                              std::size_t max_attempts, std::uint64_t seed,
                                              const TrackSettings& settings = {},
                                              const ParallelMap& parallel = ParallelMap{});

}  // namespace realid
