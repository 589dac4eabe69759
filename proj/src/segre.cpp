#include "realid/segre.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "realid/linalg.hpp"
#include "realid/poly.hpp"
#include "realid/realcert.hpp"

namespace realid {

namespace {

constexpr double kSectionDedup = 1e-6;
constexpr std::uint64_t kChartSeed = 0x5e9e5e9eULL;
// Entry-wise size of the random step away from the best space so far.
constexpr double kPerturbation = 0.2;

CVector normalize(const CVector& x) {
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  return x / x[k];
}

double projective_gap(const CVector& x, const CVector& y) {
  const double overlap = std::norm(x.dot(y)) / (x.squaredNorm() * y.squaredNorm());
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

// Points found in the bi-chart u_i = 1, v_j = 1. The start system is a
// linear product alpha_m(y) beta_m(z) with random complex affine factors,
// whose C(a1 + a2, a1) roots match the bilinear target count.
std::vector<CVector> solve_chart(const SegreSpec& spec, const RMatrix& equations, unsigned i,
                                 unsigned j, std::mt19937_64& rng, const TrackSettings& settings) {
  const std::size_t n1 = spec.dims[0] + 1;
  const std::size_t n2 = spec.dims[1] + 1;
  const std::size_t a1 = spec.dims[0];
  const std::size_t a2 = spec.dims[1];
  const std::size_t unknowns = spec.dim();
  const std::size_t nv = unknowns + 2;
  // Factor coordinates as polynomials: pinned ones are 1, the rest unknowns.
  std::vector<MPoly> u;
  std::vector<MPoly> v;
  std::size_t next = 0;
  for (std::size_t p = 0; p < n1; ++p) {
    u.push_back(p == i ? MPoly::constant(nv, 1.0) : MPoly::variable(nv, next++));
  }
  for (std::size_t q = 0; q < n2; ++q) {
    v.push_back(q == j ? MPoly::constant(nv, 1.0) : MPoly::variable(nv, next++));
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto draw = [&](Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    }
    return m;
  };
  const auto c = static_cast<Eigen::Index>(unknowns);
  const CMatrix alpha = draw(c, static_cast<Eigen::Index>(a1 + 1));  // column 0 is the constant
  const CMatrix beta = draw(c, static_cast<Eigen::Index>(a2 + 1));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Complex gamma = std::polar(1.0, angle(rng));

  std::vector<MPoly> polys;
  for (Eigen::Index m = 0; m < equations.rows(); ++m) {
    MPoly target(nv);
    for (std::size_t p = 0; p < n1; ++p) {
      MPoly row(nv);
      for (std::size_t q = 0; q < n2; ++q) {
        row += equations(m, static_cast<Eigen::Index>(p * n2 + q)) * v[q];
      }
      target += u[p] * row;
    }
    MPoly left = MPoly::constant(nv, alpha(m, 0));
    for (std::size_t k = 0; k < a1; ++k) left += alpha(m, static_cast<Eigen::Index>(k + 1)) * MPoly::variable(nv, k);
    MPoly right = MPoly::constant(nv, beta(m, 0));
    for (std::size_t k = 0; k < a2; ++k) right += beta(m, static_cast<Eigen::Index>(k + 1)) * MPoly::variable(nv, a1 + k);
    polys.push_back(MPoly::variable(nv, unknowns) * (left * right) +
                    MPoly::variable(nv, unknowns + 1) * target);
  }
  const PolySystem sys(std::move(polys), unknowns, 2);
  CVector p0(2);
  p0 << gamma, 0.0;
  CVector p1(2);
  p1 << 0.0, 1.0;
  const SegmentHomotopy h(sys, p0, p1);

  std::vector<CVector> out;
  // Each start root picks the a1 equations whose alpha factor vanishes.
  for (std::size_t mask = 0; mask < (std::size_t{1} << unknowns); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != a1) continue;
    CMatrix ay(static_cast<Eigen::Index>(a1), static_cast<Eigen::Index>(a1));
    CVector by(static_cast<Eigen::Index>(a1));
    CMatrix az(static_cast<Eigen::Index>(a2), static_cast<Eigen::Index>(a2));
    CVector bz(static_cast<Eigen::Index>(a2));
    Eigen::Index ry = 0;
    Eigen::Index rz = 0;
    for (Eigen::Index m = 0; m < c; ++m) {
      if (mask >> m & 1U) {
        ay.row(ry) = alpha.row(m).tail(static_cast<Eigen::Index>(a1));
        by[ry++] = -alpha(m, 0);
      } else {
        az.row(rz) = beta.row(m).tail(static_cast<Eigen::Index>(a2));
        bz[rz++] = -beta(m, 0);
      }
    }
    const auto y = lu_solve(ay, by);
    const auto z = lu_solve(az, bz);
    if (!y || !z) continue;
    CVector start(c);
    start << y->solution, z->solution;
    const PathResult path = track(h, start, settings);
    if (path.status != PathStatus::Success) continue;
    CVector uu(static_cast<Eigen::Index>(n1));
    CVector vv(static_cast<Eigen::Index>(n2));
    std::size_t k = 0;
    for (std::size_t p = 0; p < n1; ++p) uu[static_cast<Eigen::Index>(p)] = p == i ? Complex(1.0) : path.endpoint[static_cast<Eigen::Index>(k++)];
    for (std::size_t q = 0; q < n2; ++q) vv[static_cast<Eigen::Index>(q)] = q == j ? Complex(1.0) : path.endpoint[static_cast<Eigen::Index>(k++)];
    out.push_back(normalize(segre_point(uu, vv)));
  }
  return out;
}

RVector gaussian_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVector v(size);
  for (Eigen::Index k = 0; k < size; ++k) v[k] = gauss(rng);
  return v;
}

}  // namespace

void SegreSpec::validate() const {
  if (dims[0] == 0 || dims[1] == 0) throw std::invalid_argument("Segre factor dimensions must be positive");
}

std::uint64_t degree(const SegreSpec& spec) {
  spec.validate();
  return binomial(spec.dims[0] + spec.dims[1], spec.dims[0]);
}

AlmostUnbalancedProfile almost_unbalanced_profile(const SegreSpec& spec) {
  AlmostUnbalancedProfile out;
  out.degree = degree(spec);
  out.a_q = spec.num_coords() - spec.dim();
  out.even = (out.degree >= out.a_q ? out.degree - out.a_q : out.a_q - out.degree) % 2 == 0;
  return out;
}

DeficientSection::DeficientSection(std::size_t found, std::uint64_t expected)
    : std::runtime_error("section has " + std::to_string(found) + " points, expected " +
                         std::to_string(expected) + "; the linear space is not transverse"),
      found_(found) {}

CVector segre_point(const CVector& u, const CVector& v) {
  CVector out(u.size() * v.size());
  for (Eigen::Index p = 0; p < u.size(); ++p) {
    for (Eigen::Index q = 0; q < v.size(); ++q) out[p * v.size() + q] = u[p] * v[q];
  }
  return out;
}

SectionResult solve_section(const SegreSpec& spec, const LinearSpace& space,
                            const TrackSettings& settings, const ParallelMap& parallel) {
  spec.validate();
  if (space.equations.cols() != static_cast<Eigen::Index>(spec.num_coords())) {
    throw DimensionError("linear space has the wrong number of ambient coordinates");
  }
  if (space.codim() != spec.dim()) {
    throw std::invalid_argument("linear space must have codimension a1 + a2 = " + std::to_string(spec.dim()));
  }
  // Row-normalize so the homotopy sees unit-size equations.
  RMatrix equations = space.equations;
  for (Eigen::Index m = 0; m < equations.rows(); ++m) {
    const double norm = equations.row(m).norm();
    if (norm == 0.0) throw std::invalid_argument("linear space has a zero equation");
    equations.row(m) /= norm;
  }

  const std::size_t n1 = spec.dims[0] + 1;
  const std::size_t n2 = spec.dims[1] + 1;
  std::vector<std::vector<CVector>> per_chart(n1 * n2);
  parallel.for_each(n1 * n2, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(kChartSeed), static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    per_chart[c] = solve_chart(spec, equations, static_cast<unsigned>(c / n2),
                               static_cast<unsigned>(c % n2), rng, settings);
  });

  SectionResult out;
  out.degree_expected = degree(spec);
  for (const auto& chart : per_chart) {
    for (const CVector& x : chart) {
      const bool seen = std::any_of(out.points.begin(), out.points.end(),
                                    [&](const CVector& y) { return projective_gap(x, y) < kSectionDedup; });
      if (!seen) out.points.push_back(x);
    }
  }
  if (out.points.size() != out.degree_expected) throw DeficientSection(out.points.size(), out.degree_expected);
  std::stable_partition(out.points.begin(), out.points.end(), [](const CVector& x) { return is_real_point(x); });
  for (const CVector& x : out.points) {
    if (is_real_point(x)) ++out.signature.real_count;
  }
  out.signature.nonreal_count = static_cast<int>(out.points.size()) - out.signature.real_count;
  return out;
}

SpanSample sample_span(const SegreSpec& spec, std::size_t segre_count, std::size_t padding,
                       std::uint64_t seed) {
  spec.validate();
  const std::size_t n = spec.num_coords();
  const std::size_t k = segre_count + padding;
  if (k == 0 || k >= n) throw std::invalid_argument("span must use between 1 and " + std::to_string(n - 1) + " points");
  std::mt19937_64 rng(seed);
  for (int retry = 0; retry < 16; ++retry) {
    SpanSample out;
    RMatrix rows(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < k; ++s) {
      RVector point;
      if (s < segre_count) {
        const RVector u = gaussian_vector(rng, spec.dims[0] + 1);
        const RVector v = gaussian_vector(rng, spec.dims[1] + 1);
        point = segre_point(u.cast<Complex>(), v.cast<Complex>()).real();
      } else {
        point = gaussian_vector(rng, static_cast<Eigen::Index>(n));
      }
      point /= point.norm();
      rows.row(static_cast<Eigen::Index>(s)) = point.transpose();
      out.points.push_back(point);
    }
    Eigen::JacobiSVD<RMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] < 1e-8 * sv[0]) continue;
    out.space.equations = svd.matrixV().rightCols(static_cast<Eigen::Index>(n - k)).transpose();
    return out;
  }
  throw std::runtime_error("sampled points kept failing to span a space of the requested dimension");
}

LinearSpace span_through_points(const SegreSpec& spec, std::size_t k, std::uint64_t seed) {
  return sample_span(spec, k, 0, seed).space;
}

LinearSpace random_space(const SegreSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  LinearSpace out;
  out.equations.resize(static_cast<Eigen::Index>(spec.dim()), static_cast<Eigen::Index>(spec.num_coords()));
  for (Eigen::Index m = 0; m < out.equations.rows(); ++m) {
    out.equations.row(m) = gaussian_vector(rng, out.equations.cols()).transpose();
  }
  return out;
}

std::optional<SearchWitness> search_signature(const SegreSpec& spec, SectionSignature target,
                                              std::size_t max_attempts, std::uint64_t seed,
                                              const TrackSettings& settings, const ParallelMap& parallel) {
  const std::uint64_t d = degree(spec);
  if (target.real_count < 0 || target.nonreal_count < 0 ||
      static_cast<std::uint64_t>(target.real_count + target.nonreal_count) != d) {
    throw std::invalid_argument("target signature must sum to the degree " + std::to_string(d));
  }
  if (target.nonreal_count % 2 != 0) throw std::invalid_argument("target non-real count must be even");

  const std::size_t span_size = spec.num_coords() - spec.dim();
  const std::size_t segre_count = std::min<std::size_t>(static_cast<std::size_t>(target.real_count), span_size);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x73726368u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::optional<LinearSpace> best;
  int best_gap = 0;
  std::size_t deficient = 0;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    SearchWitness w;
    w.attempt = attempt;
    w.strategy = static_cast<SearchStrategy>(attempt % 3);
    if (w.strategy == SearchStrategy::Perturbation && !best) w.strategy = SearchStrategy::RandomSpace;
    const std::uint64_t draw = rng();
    switch (w.strategy) {
      case SearchStrategy::RealSpan:
        w.space = sample_span(spec, segre_count, span_size - segre_count, draw).space;
        break;
      case SearchStrategy::RandomSpace:
        w.space = random_space(spec, draw);
        break;
      case SearchStrategy::Perturbation:
        w.space = *best;
        for (Eigen::Index m = 0; m < w.space.equations.rows(); ++m) {
          w.space.equations.row(m).normalize();
          for (Eigen::Index c = 0; c < w.space.equations.cols(); ++c) {
            w.space.equations(m, c) += kPerturbation * gauss(rng);
          }
        }
        break;
    }
    try {
      w.section = solve_section(spec, w.space, settings, parallel);
    } catch (const DeficientSection&) {
      ++deficient;
      continue;
    }
    if (w.section.signature == target) {
      w.deficient_sections = deficient;
      return w;
    }
    const int gap = std::abs(w.section.signature.real_count - target.real_count);
    if (!best || gap <= best_gap) {
      best = w.space;
      best_gap = gap;
    }
  }
  return std::nullopt;
}

}  // namespace realid
