#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "realid/elliptic.hpp"

using namespace realid;

namespace {

const QuadricPencil kPencil = QuadricPencil::example();

RPoint3 plane_k(double k) { return RPoint3(0.0, 0.0, 1.0, -k); }

RPoint3 random_real_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return RPoint3(g(rng), g(rng), g(rng), g(rng));
}

bool contains(const std::vector<CPoint3>& dirs, const CPoint3& d, const RPoint3& p) {
  return std::any_of(dirs.begin(), dirs.end(), [&](const CPoint3& e) { return oracle::direction_gap(e, d, p) < 1e-6; });
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("example pencil is smooth") {
    const SmoothnessReport report = smoothness_probe(kPencil);
    CHECK(report.smooth);
    CHECK(kPencil.curve_residual(CPoint3(1.0, 1.0, -1.0, -1.0)) < 1e-14);
    CHECK_THROWS_AS(Quadric(Eigen::Matrix4d::Zero()), std::invalid_argument);
  }

  TEST_CASE("plane x2 = 0 meets C in A, B and two real points") {
    const PlaneIntersection out = intersect_plane(kPencil, plane_k(0.0));
    CHECK(out.signature == PlaneSignature{2, 2});
    const CPoint3 a(1.0, Complex(0.0, 1.0), 0.0, 0.0);
    const CPoint3 b(1.0, Complex(0.0, -1.0), 0.0, 0.0);
    const auto near = [&](const CPoint3& target) {
      return std::any_of(out.points.begin(), out.points.end(),
                         [&](const CPoint3& x) { return projective_distance(x, target) < 1e-8; });
    };
    CHECK(near(a));
    CHECK(near(b));
    for (const CPoint3& x : out.points) CHECK(kPencil.curve_residual(x) < 1e-9);
  }

  TEST_CASE("plane x2 = 2 x3 has four non-real points") {
    CHECK(intersect_plane(kPencil, plane_k(2.0)).signature == PlaneSignature{0, 4});
  }

  TEST_CASE("plane through three real curve points has four real points") {
    const auto found = find_plane_with_signature(kPencil, {4, 0}, 3);
    REQUIRE(found.has_value());
    CHECK(found->second.signature == PlaneSignature{4, 0});
    CHECK(intersect_plane(kPencil, found->first).signature == PlaneSignature{4, 0});
  }

  TEST_CASE("pencil scan") {
    const auto records = pencil_scan(kPencil, {-2.0, -0.9, 0.0, 0.9, 1.0, 1.5});
    REQUIRE(records.size() == 6);
    for (std::size_t i : {1u, 2u, 3u}) CHECK(records[i].signature == std::optional<PlaneSignature>{PlaneSignature{2, 2}});
    for (std::size_t i : {0u, 5u}) CHECK(records[i].signature == std::optional<PlaneSignature>{PlaneSignature{0, 4}});
    REQUIRE(records[4].tangent_point.has_value());
    CHECK(projective_distance(*records[4].tangent_point, CPoint3(1.0, 1.0, -1.0, -1.0)) < 1e-6);
    CHECK_THROWS_AS(intersect_plane(kPencil, plane_k(1.0)), TangentPlane);

    // A base line off C is rejected.
    QuadricPencil shifted = kPencil;
    shifted.q1 = Quadric(Eigen::Vector4d(1.0, 2.0, -1.0, -1.0).asDiagonal().toDenseMatrix());
    CHECK_THROWS_AS(pencil_scan(shifted, {0.0}), std::invalid_argument);
  }

  TEST_CASE("signature parity and conjugation closure on random planes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const RPoint3 plane = random_real_point(rng);
      const PlaneIntersection out = intersect_plane(kPencil, plane);
      CHECK(out.signature.real_count % 2 == 0);
      CHECK(out.signature.real_count + out.signature.nonreal_count == 4);
      for (const CPoint3& x : out.points) {
        CHECK(std::abs(plane.cast<Complex>().dot(x)) < 1e-9 * x.norm());
        CHECK(kPencil.curve_residual(x) < 1e-9);
        const CPoint3 conj = x.conjugate();
        CHECK(std::any_of(out.points.begin(), out.points.end(),
                          [&](const CPoint3& y) { return projective_distance(y, conj) < 1e-6; }));
      }
    }
  }

  TEST_CASE("secant count agrees with both oracles") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 6; ++trial) {
      const RPoint3 p = random_real_point(rng);
      const auto lines = secant_lines_through(kPencil, p);
      REQUIRE(lines.size() == 2);
      const auto closed = oracle::secant_directions_closed_form(kPencil, p);
      const auto literal = oracle::secant_directions_literal(kPencil, p);
      CHECK(literal.size() == 2);
      for (const SecantLine& line : lines) {
        CHECK(contains(closed, line.direction, p));
        CHECK(contains(literal, line.direction, p));
        for (const CPoint3& x : line.points) CHECK(kPencil.curve_residual(x) < 1e-9);
        CHECK(kPencil.curve_residual(p.normalized().cast<Complex>() + line.t1 * line.direction) < 1e-9);
        CHECK(kPencil.curve_residual(p.normalized().cast<Complex>() + line.t2 * line.direction) < 1e-9);
        const bool ordered = line.t1.real() < line.t2.real() ||
                             (line.t1.real() == line.t2.real() && line.t1.imag() <= line.t2.imag());
        CHECK(ordered);
      }
    }
  }

  TEST_CASE("secant lines do not depend on the representative of P") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
      const RPoint3 p = random_real_point(rng);
      const auto a = secant_lines_through(kPencil, p);
      const auto b = secant_lines_through(kPencil, -3.7 * p);
      REQUIRE(a.size() == 2);
      REQUIRE(b.size() == 2);
      for (const SecantLine& line : a) {
        CHECK(std::any_of(b.begin(), b.end(),
                          [&](const SecantLine& other) { return oracle::direction_gap(line.direction, other.direction, p) < 1e-6; }));
      }
    }
  }

  TEST_CASE("point on a chord of two real curve points") {
    const auto found = find_plane_with_signature(kPencil, {4, 0}, 5);
    REQUIRE(found.has_value());
    const auto& pts = found->second.points;
    const RPoint3 x = pts[0].real();
    const RPoint3 y = pts[1].real();
    const RPoint3 p = x / x.norm() + 0.37 * y / y.norm();
    const auto lines = secant_lines_through(kPencil, p);
    REQUIRE(lines.size() == 2);
    const CPoint3 chord = (y / y.norm()).cast<Complex>();
    const auto hit = std::find_if(lines.begin(), lines.end(), [&](const SecantLine& line) {
      return oracle::direction_gap(line.direction, chord, p) < 1e-6;
    });
    REQUIRE(hit != lines.end());
    CHECK(hit->is_real_line);
    CHECK(hit->points_real[0]);
    CHECK(hit->points_real[1]);
  }

  TEST_CASE("points on C are degenerate") {
    CHECK_THROWS_AS(secant_lines_through(kPencil, RPoint3(1.0, 1.0, -1.0, -1.0)), DegeneratePoint);
    CHECK(classify_point(kPencil, RPoint3(1.0, 1.0, -1.0, -1.0)) == PointType::Degenerate);
  }

  TEST_CASE("constructed points have the requested types and the types are open") {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> g(0.0, 1.0);
    for (PointType type : {PointType::S1, PointType::S2, PointType::S3, PointType::S4}) {
      CAPTURE(to_string(type));
      const PointConstruction built = construct_point(kPencil, type, 7);
      CHECK(classify_point(kPencil, built.point) == type);
      for (int k = 0; k < 5; ++k) {
        RPoint3 dir(g(rng), g(rng), g(rng), g(rng));
        const RPoint3 moved = built.point + 1e-4 * built.point.norm() * dir.normalized();
        const PointType moved_type = classify_point(kPencil, moved);
        if (moved_type != PointType::Degenerate) CHECK(moved_type == type);
      }
    }
  }

  TEST_CASE("type names round trip") {
    for (PointType type : {PointType::S1, PointType::S2, PointType::S3, PointType::S4}) {
      CHECK(point_type_from_string(to_string(type)) == type);
    }
    CHECK(to_string(PointType::S3) == "s3");
    CHECK_THROWS_AS(point_type_from_string("s5"), std::invalid_argument);
  }

  TEST_CASE("meet of two coplanar lines") {
    const CPoint3 x1(1.0, 0.0, 0.0, 0.0);
    const CPoint3 x2(0.0, 1.0, 0.0, 0.0);
    const CPoint3 y1(1.0, 1.0, 1.0, 0.0);
    const CPoint3 y2(1.0, 1.0, -1.0, 0.0);
    const RPoint3 m = meet_of_lines(x1, x2, y1, y2);
    CHECK(projective_distance(m.cast<Complex>(), CPoint3(1.0, 1.0, 0.0, 0.0)) < 1e-7);
  }
}
