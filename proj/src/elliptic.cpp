#include "realid/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "realid/linalg.hpp"
#include "realid/realcert.hpp"

namespace realid {

namespace {

constexpr double kCoincidence = 1e-6;
constexpr std::uint64_t kChartSeed = 0x9e3779b97f4a7c15ULL;

// Orthonormal basis (as columns) of the orthogonal complement of v in R^4.
Eigen::Matrix<double, 4, 3> complement_basis(const RPoint3& v) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 1, 4>> svd(v.transpose(), Eigen::ComputeFullV);
  return svd.matrixV().rightCols<3>();
}

// Square system in two unknowns (y1, y2) and two parameters (s0, s1):
//   s0 * start_j(y) + s1 * target_j(y) = 0,
// where the targets are quadratic forms in (1, y1, y2) given by 3x3 complex
// matrices (a zero matrix plus a linear form for degree-one equations).
struct TwoByTwo {
  std::array<Eigen::Matrix3cd, 2> quadratic;
  std::array<Eigen::Vector3cd, 2> linear;
  std::array<unsigned, 2> start_degree;
};

PolySystem build_two_by_two(const TwoByTwo& spec) {
  constexpr std::size_t nv = 4;
  std::vector<MPoly> polys;
  const auto y = [](std::size_t k) {
    // y_0 is the constant 1.
    return k == 0 ? MPoly::constant(nv, 1.0) : MPoly::variable(nv, k - 1);
  };
  for (std::size_t j = 0; j < 2; ++j) {
    MPoly target(nv);
    for (std::size_t a = 0; a < 3; ++a) {
      target += spec.linear[j][static_cast<Eigen::Index>(a)] * y(a);
      for (std::size_t b = 0; b < 3; ++b) {
        target += spec.quadratic[j](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                  (y(a) * y(b));
      }
    }
    MPoly start = y(j + 1).pow(spec.start_degree[j]) - MPoly::constant(nv, 1.0);
    polys.push_back(MPoly::variable(nv, 2) * start + MPoly::variable(nv, 3) * target);
  }
  return PolySystem(std::move(polys), 2, 2);
}

// All finite solutions of the target system reached from the diagonal start.
// Paths that stall close to t = 1 (double roots) are finished with plain
// Newton, which still converges linearly there.
std::vector<CVector> solve_two_by_two(const TwoByTwo& spec, Complex gamma,
                                      const TrackSettings& settings) {
  const PolySystem sys = build_two_by_two(spec);
  CVector p0(2);
  p0 << gamma, 0.0;
  CVector p1(2);
  p1 << 0.0, 1.0;
  const SegmentHomotopy h(sys, p0, p1);

  std::vector<CVector> starts;
  const auto roots = [](unsigned degree) {
    std::vector<Complex> out;
    for (unsigned k = 0; k < degree; ++k) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / degree));
    return out;
  };
  for (Complex r1 : roots(spec.start_degree[0])) {
    for (Complex r2 : roots(spec.start_degree[1])) {
      CVector s(2);
      s << r1, r2;
      starts.push_back(s);
    }
  }
  std::vector<CVector> out;
  for (const CVector& s : starts) {
    const PathResult path = track(h, s, settings);
    if (path.status == PathStatus::Success) {
      out.push_back(path.endpoint);
    } else if (path.status == PathStatus::Singular && path.t_reached > 0.9) {
      const NewtonResult finished = newton_refine(sys, p1, path.endpoint, 1e-15, 200);
      if (finished.residual < 1e-10) out.push_back(finished.point);
    }
  }
  return out;
}

Eigen::Matrix3cd random_chart(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3cd chart;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) chart(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return chart;
}

Complex random_gamma(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

CPoint3 to_complex(const RPoint3& p) { return p.cast<Complex>(); }

}  // namespace

// ---------------------------------------------------------------------------

Quadric::Quadric(const Eigen::Matrix4d& m) : matrix(0.5 * (m + m.transpose())) {
  if (matrix.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("zero quadric");
}

Complex Quadric::value(const CPoint3& x) const { return bilinear(x, x); }

Complex Quadric::bilinear(const CPoint3& x, const CPoint3& y) const {
  return (x.transpose() * matrix.cast<Complex>() * y)(0, 0);
}

QuadricPencil QuadricPencil::example() {
  Eigen::Matrix4d a1 = Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
  Eigen::Matrix4d a2 = Eigen::Matrix4d::Zero();
  a2(0, 0) = 1;
  a2(1, 1) = 1;
  a2(2, 2) = -2;
  a2(3, 3) = -2;
  a2(0, 3) = a2(3, 0) = -0.5;
  a2(1, 3) = a2(3, 1) = -0.5;
  return {Quadric(a1), Quadric(a2)};
}

double QuadricPencil::curve_residual(const CPoint3& x) const {
  const CPoint3 unit = x / x.norm();
  return std::max(std::abs(q1.value(unit)), std::abs(q2.value(unit)));
}

SmoothnessReport smoothness_probe(const QuadricPencil& pencil) {
  // Singular members are the roots mu of det(A1 - mu A2); their kernels are
  // the cone vertices. C is smooth iff the roots are simple and no vertex
  // lies on C.
  const Eigen::Matrix4d& a1 = pencil.q1.matrix;
  const Eigen::Matrix4d& a2 = pencil.q2.matrix;
  if (std::abs(a2.determinant()) < 1e-12 * std::pow(a2.norm(), 4)) {
    return {false, "second quadric is singular; reorder the pencil for the probe"};
  }
  Eigen::ComplexEigenSolver<CMatrix> eig(CMatrix(a2.inverse() * a1));
  const CVector mus = eig.eigenvalues();
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = i + 1; j < 4; ++j) {
      if (std::abs(mus[i] - mus[j]) < 1e-8 * (1.0 + std::abs(mus[i]))) {
        return {false, "pencil has a repeated singular member"};
      }
    }
    const CVector vertex = kernel_vector(CMatrix(a1.cast<Complex>() - mus[i] * a2.cast<Complex>()));
    const CPoint3 v = vertex;
    if (pencil.curve_residual(v) < 1e-9) return {false, "a cone vertex lies on the curve"};
  }
  return {true, "four distinct cones, no vertex on the curve"};
}

TangentPlane::TangentPlane(const CPoint3& double_point)
    : std::runtime_error("plane is tangent to the curve"), point_(double_point) {}

CPoint3 normalize_projective(const CPoint3& x) {
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  return x / x[k];
}

bool is_real_projective(const CPoint3& x, double tol) {
  return is_real_point(CVector(normalize_projective(x)), tol);
}

double projective_distance(const CPoint3& x, const CPoint3& y) {
  const double overlap = std::norm(x.dot(y)) / (x.squaredNorm() * y.squaredNorm());
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

PlaneIntersection intersect_plane(const QuadricPencil& pencil, const RPoint3& plane,
                                  const TrackSettings& settings) {
  if (plane.norm() == 0.0) throw std::invalid_argument("plane coefficients are all zero");
  const Eigen::Matrix<double, 4, 3> basis = complement_basis(plane.normalized());
  std::mt19937_64 rng(kChartSeed);

  for (int attempt = 0; attempt < 4; ++attempt) {
    const Eigen::Matrix3cd chart = random_chart(rng);
    const Complex gamma = random_gamma(rng);
    // Plane point = basis * chart * (1, y1, y2).
    const Eigen::Matrix<Complex, 4, 3> embed = basis.cast<Complex>() * chart;
    TwoByTwo spec;
    spec.start_degree = {2, 2};
    const std::array<const Quadric*, 2> quadrics{&pencil.q1, &pencil.q2};
    for (std::size_t j = 0; j < 2; ++j) {
      spec.quadratic[j] = embed.transpose() * quadrics[j]->matrix.cast<Complex>() * embed;
      spec.linear[j].setZero();
    }
    const auto solutions = solve_two_by_two(spec, gamma, settings);
    if (solutions.size() != 4) continue;

    PlaneIntersection out;
    for (std::size_t i = 0; i < 4; ++i) {
      Eigen::Vector3cd u(1.0, solutions[i][0], solutions[i][1]);
      out.points[i] = normalize_projective(embed * u);
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        if (projective_distance(out.points[i], out.points[j]) < kCoincidence) {
          throw TangentPlane(normalize_projective(0.5 * (out.points[i] + out.points[j])));
        }
      }
    }
    for (const CPoint3& x : out.points) {
      if (is_real_projective(x)) ++out.signature.real_count;
    }
    out.signature.nonreal_count = 4 - out.signature.real_count;
    if (out.signature.real_count % 2 != 0) {
      throw DegeneratePlane("odd number of real intersection points");
    }
    // Real points first, then non-real ones in conjugate-adjacent order.
    std::stable_sort(out.points.begin(), out.points.end(), [](const CPoint3& a, const CPoint3& b) {
      return is_real_projective(a) && !is_real_projective(b);
    });
    return out;
  }
  throw DegeneratePlane("could not recover four intersection points");
}

// ---------------------------------------------------------------------------
// Secant lines

namespace {

std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  // a t^2 + b t + c with the cancellation-free formula.
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const Complex q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
  return {q / a, c / q};
}

// Newton polish of (t1, t2, c_free...) on Q_j(P + t_i E c) = 0 with c[pinned] = 1.
void polish_secant(const QuadricPencil& pencil, const RPoint3& p,
                   const Eigen::Matrix<double, 4, 3>& basis, Eigen::Index pinned,
                   Eigen::Vector3cd& c, Complex& t1, Complex& t2) {
  constexpr std::size_t nv = 4;  // t1, t2, c_a, c_b
  std::array<Eigen::Index, 2> free{};
  for (Eigen::Index k = 0, m = 0; k < 3; ++k) {
    if (k != pinned) free[static_cast<std::size_t>(m++)] = k;
  }
  std::array<MPoly, 4> dir_coord;  // coordinates of E c as polynomials
  for (Eigen::Index row = 0; row < 4; ++row) {
    MPoly coord = MPoly::constant(nv, basis(row, pinned));
    coord += basis(row, free[0]) * MPoly::variable(nv, 2);
    coord += basis(row, free[1]) * MPoly::variable(nv, 3);
    dir_coord[static_cast<std::size_t>(row)] = coord;
  }
  std::vector<MPoly> polys;
  for (std::size_t i = 0; i < 2; ++i) {
    std::array<MPoly, 4> x;
    for (std::size_t row = 0; row < 4; ++row) {
      x[row] = MPoly::constant(nv, p[static_cast<Eigen::Index>(row)]) +
               MPoly::variable(nv, i) * dir_coord[row];
    }
    for (const Quadric* q : {&pencil.q1, &pencil.q2}) {
      MPoly value(nv);
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          const double m = q->matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
          if (m != 0.0) value += m * (x[a] * x[b]);
        }
      }
      polys.push_back(value);
    }
  }
  const PolySystem sys(std::move(polys), nv, 0);
  CVector z(4);
  z << t1, t2, c[free[0]] / c[pinned], c[free[1]] / c[pinned];
  const NewtonResult refined = newton_refine(sys, CVector(0), z, 1e-15, 8);
  if (refined.singular) return;
  t1 = refined.point[0];
  t2 = refined.point[1];
  c[pinned] = 1.0;
  c[free[0]] = refined.point[2];
  c[free[1]] = refined.point[3];
}

}  // namespace

std::vector<SecantLine> secant_lines_through(const QuadricPencil& pencil, const RPoint3& p,
                                             const TrackSettings& settings) {
  const RPoint3 base = p.normalized();
  const CPoint3 pc = to_complex(base);
  const double a1 = pencil.q1.value(pc).real();
  const double a2 = pencil.q2.value(pc).real();
  const double scale = std::max(pencil.q1.matrix.norm(), pencil.q2.matrix.norm());
  if (std::max(std::abs(a1), std::abs(a2)) < 1e-12 * scale) {
    throw DegeneratePoint("point lies on the curve");
  }

  // Secant lines through P are the lines through P on the pencil member
  // Q_P = a2 Q1 - a1 Q2 that contains P: B_P(P, d) = 0 and Q_P(d) = 0.
  const Eigen::Matrix<double, 4, 3> basis = complement_basis(base);
  const Eigen::Matrix4d member = a2 * pencil.q1.matrix - a1 * pencil.q2.matrix;
  const Eigen::Vector3d linear = basis.transpose() * member * base;
  const Eigen::Matrix3d conic = basis.transpose() * member * basis;

  std::mt19937_64 rng(kChartSeed);
  std::vector<Eigen::Vector3cd> directions;
  for (Eigen::Index pinned = 0; pinned < 3; ++pinned) {
    // Chart c[pinned] = 1, unknowns are the other two coordinates.
    Eigen::Matrix3cd embed = Eigen::Matrix3cd::Zero();
    embed(pinned, 0) = 1.0;
    for (Eigen::Index k = 0, col = 1; k < 3; ++k) {
      if (k != pinned) embed(k, col++) = 1.0;
    }
    TwoByTwo spec;
    spec.start_degree = {1, 2};
    spec.quadratic[0].setZero();
    spec.linear[0] = embed.transpose() * linear.cast<Complex>();
    spec.quadratic[1] = embed.transpose() * conic.cast<Complex>() * embed;
    spec.linear[1].setZero();
    for (const CVector& y : solve_two_by_two(spec, random_gamma(rng), settings)) {
      Eigen::Vector3cd c = embed * Eigen::Vector3cd(1.0, y[0], y[1]);
      Eigen::Index k = 0;
      c.cwiseAbs().maxCoeff(&k);
      c /= c[k];
      const bool seen = std::any_of(directions.begin(), directions.end(), [&](const auto& other) {
        return (other - c).cwiseAbs().maxCoeff() < kCoincidence;
      });
      if (!seen) directions.push_back(c);
    }
  }
  if (directions.size() != 2) {
    throw DegeneratePoint("found " + std::to_string(directions.size()) +
                          " secant lines instead of 2 (cone vertex or special position)");
  }

  std::vector<SecantLine> lines;
  for (Eigen::Vector3cd c : directions) {
    CPoint3 d = basis.cast<Complex>() * c;
    const Quadric& q = std::abs(a1) >= std::abs(a2) ? pencil.q1 : pencil.q2;
    const Complex lead = q.value(d);
    if (std::abs(lead) < 1e-12 * scale * d.squaredNorm()) {
      throw DegeneratePoint("secant line meets the curve at the direction point");
    }
    auto [t1, t2] = quadratic_roots(lead, 2.0 * q.bilinear(pc, d), q.value(pc));
    Eigen::Index pinned = 0;
    c.cwiseAbs().maxCoeff(&pinned);
    polish_secant(pencil, base, basis, pinned, c, t1, t2);
    d = basis.cast<Complex>() * c;
    if (std::abs(t1 - t2) < 1e-8 * (1.0 + std::abs(t1))) {
      throw DegeneratePoint("point lies on a tangent line of the curve");
    }

    SecantLine line;
    Eigen::Index k = 0;
    d.cwiseAbs().maxCoeff(&k);
    const Complex s = d[k];
    line.direction = d / s;
    line.t1 = t1 * s;
    line.t2 = t2 * s;
    line.is_real_line = is_real_point(CVector(line.direction));
    line.points = {normalize_projective(pc + line.t1 * line.direction),
                   normalize_projective(pc + line.t2 * line.direction)};
    for (std::size_t i = 0; i < 2; ++i) {
      line.points_real[i] = is_real_projective(line.points[i]);
      if (pencil.curve_residual(line.points[i]) > 1e-9) {
        throw DegeneratePoint("secant point failed the curve residual check");
      }
    }
    // Order the pair by (Re t, Im t).
    if (std::make_pair(line.t2.real(), line.t2.imag()) < std::make_pair(line.t1.real(), line.t1.imag())) {
      std::swap(line.t1, line.t2);
      std::swap(line.points[0], line.points[1]);
      std::swap(line.points_real[0], line.points_real[1]);
    }
    lines.push_back(line);
  }
  std::stable_sort(lines.begin(), lines.end(), [](const SecantLine& a, const SecantLine& b) {
    const int ra = a.is_real_line ? (a.points_real[0] ? 2 : 1) : 0;
    const int rb = b.is_real_line ? (b.points_real[0] ? 2 : 1) : 0;
    return ra > rb;
  });
  return lines;
}

std::string_view to_string(PointType type) {
  switch (type) {
    case PointType::S1: return "s1";
    case PointType::S2: return "s2";
    case PointType::S3: return "s3";
    case PointType::S4: return "s4";
    case PointType::Degenerate: return "degenerate";
  }
  return "degenerate";
}

PointType point_type_from_string(std::string_view name) {
  for (PointType t : {PointType::S1, PointType::S2, PointType::S3, PointType::S4}) {
    if (name == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown point type '" + std::string(name) + "'");
}

PointType classify_lines(const std::vector<SecantLine>& lines) {
  if (lines.size() != 2) return PointType::Degenerate;
  const auto real_pair = [](const SecantLine& l) { return l.points_real[0] && l.points_real[1]; };
  const auto conj_pair = [](const SecantLine& l) { return !l.points_real[0] && !l.points_real[1]; };
  const SecantLine& a = lines[0];
  const SecantLine& b = lines[1];
  if (a.is_real_line && b.is_real_line) {
    if (real_pair(a) && real_pair(b)) return PointType::S1;
    if ((real_pair(a) && conj_pair(b)) || (conj_pair(a) && real_pair(b))) return PointType::S2;
    if (conj_pair(a) && conj_pair(b)) return PointType::S3;
    return PointType::Degenerate;
  }
  if (!a.is_real_line && !b.is_real_line && conj_pair(a) && conj_pair(b)) return PointType::S4;
  return PointType::Degenerate;
}

PointType classify_point(const QuadricPencil& pencil, const RPoint3& p,
                         const TrackSettings& settings) {
  try {
    return classify_lines(secant_lines_through(pencil, p, settings));
  } catch (const DegeneratePoint&) {
    return PointType::Degenerate;
  }
}

RPoint3 meet_of_lines(const CPoint3& x1, const CPoint3& x2, const CPoint3& y1, const CPoint3& y2) {
  CMatrix m(4, 4);
  m.col(0) = x1.normalized();
  m.col(1) = x2.normalized();
  m.col(2) = -y1.normalized();
  m.col(3) = -y2.normalized();
  const CVector k = kernel_vector(m);
  const CPoint3 meet = normalize_projective(k[0] * m.col(0) + k[1] * m.col(1));
  return meet.real();
}

namespace {

RPoint3 plane_through(const RPoint3& a, const RPoint3& b, const RPoint3& c) {
  Eigen::Matrix<double, 3, 4> m;
  m.row(0) = a.normalized().transpose();
  m.row(1) = b.normalized().transpose();
  m.row(2) = c.normalized().transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(3);
}

RPoint3 random_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return RPoint3(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
}

}  // namespace

std::optional<std::pair<RPoint3, PlaneIntersection>> find_plane_with_signature(
    const QuadricPencil& pencil, PlaneSignature target, std::uint64_t seed,
    std::size_t max_attempts, const TrackSettings& settings) {
  std::mt19937_64 rng(seed);
  std::vector<RPoint3> real_points;  // one per plane, for the all-real case
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    RPoint3 plane = random_plane(rng);
    if (target.real_count == 4 && real_points.size() >= 3) {
      plane = plane_through(real_points[0], real_points[1], real_points[2]);
      real_points.erase(real_points.begin());
    }
    try {
      PlaneIntersection section = intersect_plane(pencil, plane, settings);
      if (section.signature == target) return std::make_pair(plane, section);
      if (section.signature.real_count > 0) real_points.push_back(section.points[0].real());
    } catch (const TangentPlane&) {
    } catch (const DegeneratePlane&) {
    }
  }
  return std::nullopt;
}

PointConstruction construct_point(const QuadricPencil& pencil, PointType target,
                                  std::uint64_t seed, const TrackSettings& settings) {
  PlaneSignature wanted;
  switch (target) {
    case PointType::S1: wanted = {4, 0}; break;
    case PointType::S2: wanted = {2, 2}; break;
    case PointType::S3:
    case PointType::S4: wanted = {0, 4}; break;
    case PointType::Degenerate: throw std::invalid_argument("cannot construct a degenerate point");
  }
  auto found = find_plane_with_signature(pencil, wanted, seed, 400, settings);
  if (!found) throw std::runtime_error("no plane with the required signature was found");
  const auto& [plane, section] = *found;
  const auto& pts = section.points;

  // Non-real points come in conjugate pairs; find each point's partner.
  const auto partner_of = [&](std::size_t i) {
    const CPoint3 conj = pts[i].conjugate();
    std::size_t best = i;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      const double dist = projective_distance(conj, pts[j]);
      if (dist < nearest) {
        nearest = dist;
        best = j;
      }
    }
    return best;
  };

  RPoint3 point;
  switch (target) {
    case PointType::S1:
      point = meet_of_lines(pts[0], pts[1], pts[2], pts[3]);
      break;
    case PointType::S2:
      point = meet_of_lines(pts[0], pts[1], pts[2], pts[partner_of(2)]);
      break;
    case PointType::S3:
    case PointType::S4: {
      const std::size_t a = 0;
      const std::size_t abar = partner_of(a);
      std::size_t c = 1;
      while (c == abar) ++c;
      const std::size_t cbar = partner_of(c);
      point = target == PointType::S3 ? meet_of_lines(pts[a], pts[abar], pts[c], pts[cbar])
                                      : meet_of_lines(pts[a], pts[cbar], pts[abar], pts[c]);
      break;
    }
    case PointType::Degenerate: break;
  }
  return {point, plane, section};
}

std::vector<PencilRecord> pencil_scan(const QuadricPencil& pencil, const std::vector<double>& k_values,
                                      const TrackSettings& settings) {
  // The planes x2 = k x3 share the line x2 = x3 = 0; both quadrics restricted
  // to it must be proportional so that the two base points lie on C.
  Eigen::Matrix<double, 2, 3> restricted;
  for (int j = 0; j < 2; ++j) {
    const Eigen::Matrix4d& m = (j == 0 ? pencil.q1 : pencil.q2).matrix;
    restricted.row(j) << m(0, 0), 2.0 * m(0, 1), m(1, 1);
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(restricted);
  const auto& sv = svd.singularValues();
  if (sv[0] == 0.0 || sv[1] > 1e-10 * sv[0]) {
    throw std::invalid_argument("the line x2 = x3 = 0 does not meet the curve in two fixed points");
  }

  std::vector<PencilRecord> out;
  for (double k : k_values) {
    PencilRecord rec;
    rec.k = k;
    try {
      rec.signature = intersect_plane(pencil, RPoint3(0.0, 0.0, 1.0, -k), settings).signature;
    } catch (const TangentPlane& tangent) {
      rec.tangent_point = tangent.double_point();
    } catch (const DegeneratePlane& e) {
      rec.error = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace realid
