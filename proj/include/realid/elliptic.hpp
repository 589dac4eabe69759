#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "realid/homotopy.hpp"

namespace realid {

using RPoint3 = Eigen::Vector4d;   // homogeneous coordinates on real P^3
using CPoint3 = Eigen::Vector4cd;  // homogeneous coordinates on complex P^3

/// Quadratic form x^T M x on homogeneous coordinates x0..x3.
struct Quadric {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();

  Quadric() = default;
  /// Symmetrizes m; throws std::invalid_argument for the zero matrix.
  explicit Quadric(const Eigen::Matrix4d& m);

  Complex value(const CPoint3& x) const;
  /// Symmetric bilinear form B(x, y) with value(x) = B(x, x).
  Complex bilinear(const CPoint3& x, const CPoint3& y) const;
};

/// The quartic curve C = Q1 ∩ Q2.
struct QuadricPencil {
  Quadric q1;
  Quadric q2;

  /// Q1: x0² + x1² − x2² − x3², Q2: x0² − x0x3 + x1² − x1x3 − 2x2² − 2x3².
  static QuadricPencil example();

  /// max |Q_j(x)| over j for x scaled to unit norm.
  double curve_residual(const CPoint3& x) const;
};

struct SmoothnessReport {
  bool smooth = false;
  std::string detail;
};

/// Checks that no cone vertex of the pencil lies on C and that the four
/// singular members are distinct, which together mean C is a smooth quartic.
SmoothnessReport smoothness_probe(const QuadricPencil& pencil);

/// Realness pattern of a real plane's four intersection points with C.
struct PlaneSignature {
  int real_count = 0;
  int nonreal_count = 0;
  friend bool operator==(const PlaneSignature&, const PlaneSignature&) = default;
};

struct PlaneIntersection {
  std::array<CPoint3, 4> points;
  PlaneSignature signature;
};

/// Plane meets C in a double point.
class TangentPlane : public std::runtime_error {
 public:
  explicit TangentPlane(const CPoint3& double_point);
  const CPoint3& double_point() const { return point_; }

 private:
  CPoint3 point_;
};

class DegeneratePlane : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scales a projective point so its largest-modulus coordinate equals 1.
CPoint3 normalize_projective(const CPoint3& x);
bool is_real_projective(const CPoint3& x, double tol = 1e-8);
/// Chart-free distance sqrt(1 - |<x,y>|^2 / (|x|^2 |y|^2)).
double projective_distance(const CPoint3& x, const CPoint3& y);

/// Intersects C with the plane {coeffs · x = 0} by tracking the two
/// restricted conics from a diagonal start system. Throws TangentPlane when
/// two intersection points coincide within 1e-6, DegeneratePlane otherwise.
PlaneIntersection intersect_plane(const QuadricPencil& pencil, const RPoint3& plane,
                                  const TrackSettings& settings = {});

struct SecantLine {
  /// Point of P^3 in the line's direction, normalized by its largest coordinate.
  CPoint3 direction;
  /// Parameters of the two curve points P / |P| + t * direction.
  Complex t1;
  Complex t2;
  bool is_real_line = false;
  std::array<bool, 2> points_real{};
  std::array<CPoint3, 2> points;
};

class DegeneratePoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two secant lines of C through P. Throws DegeneratePoint when P is on
/// C, on a tangent line, at a cone vertex, or when the count is not two.
std::vector<SecantLine> secant_lines_through(const QuadricPencil& pencil, const RPoint3& p,
                                             const TrackSettings& settings = {});

enum class PointType { S1, S2, S3, S4, Degenerate };

std::string_view to_string(PointType type);
PointType point_type_from_string(std::string_view name);

/// Realness pattern of the two secant lines through P (Degenerate on failure).
PointType classify_point(const QuadricPencil& pencil, const RPoint3& p,
                         const TrackSettings& settings = {});
PointType classify_lines(const std::vector<SecantLine>& lines);

/// Real intersection point of two coplanar lines x1x2 and y1y2 of P^3.
RPoint3 meet_of_lines(const CPoint3& x1, const CPoint3& x2, const CPoint3& y1, const CPoint3& y2);

/// A point of the requested type built from a plane section: for S1 a plane
/// with four real points, S2 two real and two non-real, S3 and S4 four
/// non-real; the point is the meet of two chords of that section.
struct PointConstruction {
  RPoint3 point;
  RPoint3 plane;
  PlaneIntersection section;
};
PointConstruction construct_point(const QuadricPencil& pencil, PointType target,
                                  std::uint64_t seed, const TrackSettings& settings = {});

/// Finds a real plane whose section has the given signature. Four real points
/// are produced through three sampled real points of C.
std::optional<std::pair<RPoint3, PlaneIntersection>> find_plane_with_signature(
    const QuadricPencil& pencil, PlaneSignature target, std::uint64_t seed,
    std::size_t max_attempts = 200, const TrackSettings& settings = {});

struct PencilRecord {
  double k = 0.0;
  std::optional<PlaneSignature> signature;
  /// Set when the plane x2 = k x3 is tangent to C.
  std::optional<CPoint3> tangent_point;
  std::string error;
};

/// Signatures of the planes x2 = k x3. Throws std::invalid_argument unless
/// the base line x2 = x3 = 0 meets C in two points common to every plane.
std::vector<PencilRecord> pencil_scan(const QuadricPencil& pencil, const std::vector<double>& k_values,
                                      const TrackSettings& settings = {});

}  // namespace realid
