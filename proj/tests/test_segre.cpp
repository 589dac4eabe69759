#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/SVD>

#include "realid/realcert.hpp"
#include "realid/segre.hpp"

using namespace realid;

namespace {

// Norm of the component of b orthogonal to a, relative to |b|.
double projective_gap(const CVector& a, const CVector& b) {
  const CVector rest = b - a * (a.dot(b) / a.squaredNorm());
  return rest.norm() / b.norm();
}

// Real codim-4 space spanned by 3 real Segre points and one conjugate pair.
LinearSpace span_with_conjugate_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto draw = [&](bool complex_factor) {
    CVector u(3);
    CVector v(3);
    for (Eigen::Index k = 0; k < 3; ++k) {
      u[k] = Complex(g(rng), complex_factor ? g(rng) : 0.0);
      v[k] = Complex(g(rng), complex_factor ? g(rng) : 0.0);
    }
    return segre_point(u, v);
  };
  RMatrix basis(5, 9);
  for (Eigen::Index k = 0; k < 3; ++k) basis.row(k) = draw(false).real().transpose();
  const CVector z = draw(true);
  basis.row(3) = z.real().transpose();
  basis.row(4) = z.imag().transpose();
  const Eigen::JacobiSVD<RMatrix> svd(basis, Eigen::ComputeFullV);
  LinearSpace out;
  out.equations = svd.matrixV().rightCols(4).transpose();
  return out;
}

// Second over first singular value of the point viewed as an (a1+1) x (a2+1) matrix.
double rank_one_ratio(const SegreSpec& spec, const CVector& x) {
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      x.data(), spec.dims[0] + 1, spec.dims[1] + 1);
  const Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()[1] / svd.singularValues()[0];
}

void check_section(const SegreSpec& spec, const LinearSpace& space, const SectionResult& out) {
  CHECK(out.points.size() == degree(spec));
  CHECK(out.signature.real_count + out.signature.nonreal_count == static_cast<int>(degree(spec)));
  CHECK(out.signature.nonreal_count % 2 == 0);
  for (const CVector& x : out.points) {
    CHECK(rank_one_ratio(spec, x) < 1e-8);
    CHECK((space.equations.cast<Complex>() * x).cwiseAbs().maxCoeff() < 1e-9 * x.norm());
    const CVector conj = x.conjugate();
    CHECK(std::any_of(out.points.begin(), out.points.end(),
                      [&](const CVector& y) { return projective_gap(y, conj) < 1e-6; }));
  }
}

}  // namespace

TEST_SUITE("segre") {
  TEST_CASE("degree examples") {
    CHECK(degree({{2, 4}}) == 15);
    CHECK(degree({{2, 2}}) == 6);
    CHECK(degree({{1, 1}}) == 2);
    CHECK(degree({{3, 5}}) == 56);
    CHECK_THROWS_AS(SegreSpec({0, 2}).validate(), std::invalid_argument);
  }

  TEST_CASE("almost-unbalanced profile") {
    const auto p24 = almost_unbalanced_profile({{2, 4}});
    CHECK(p24.a_q == 9);
    CHECK(p24.degree == 15);
    CHECK(p24.even);
    const auto p22 = almost_unbalanced_profile({{2, 2}});
    CHECK(p22.a_q == 5);
    CHECK(p22.degree == 6);
    CHECK_FALSE(p22.even);
    const auto p11 = almost_unbalanced_profile({{1, 1}});
    CHECK(p11.a_q == 2);
    CHECK(p11.degree == 2);
    CHECK(p11.even);
  }

  TEST_CASE("segre points are rank one") {
    CVector u(2);
    u << 1.0, 2.0;
    CVector v(3);
    v << 3.0, 0.0, -1.0;
    const CVector x = segre_point(u, v);
    REQUIRE(x.size() == 6);
    CHECK(x[1] == Complex(0.0));
    CHECK(x[3] == Complex(6.0));
    CHECK(rank_one_ratio({{1, 2}}, x) < 1e-15);
  }

  TEST_CASE("quadric surface sections") {
    const SegreSpec spec{{1, 1}};
    const LinearSpace line = span_through_points(spec, 2, 4);
    CHECK(line.codim() == 2);
    const SectionResult through = solve_section(spec, line);
    check_section(spec, line, through);
    CHECK(through.signature == SectionSignature{2, 0});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const LinearSpace l = random_space(spec, seed);
      check_section(spec, l, solve_section(spec, l));
    }
  }

  TEST_CASE("spans contain their spanning points") {
    const SegreSpec spec{{2, 2}};
    const SpanSample sample = sample_span(spec, 5, 0, 8);
    CHECK(sample.space.codim() == 4);
    for (const RVector& x : sample.points) CHECK((sample.space.equations * x).cwiseAbs().maxCoeff() < 1e-10 * x.norm());
    const SectionResult out = solve_section(spec, sample.space);
    check_section(spec, sample.space, out);
    CHECK(out.signature == SectionSignature{6, 0});
  }

  TEST_CASE("nine-point span in P2 x P4 recovers the spanning points") {
    const SegreSpec spec{{2, 4}};
    const SpanSample sample = sample_span(spec, 9, 0, 3);
    CHECK(sample.space.codim() == 6);
    const SectionResult out = solve_section(spec, sample.space);
    check_section(spec, sample.space, out);
    CHECK(out.signature.real_count >= 9);
    for (const RVector& x : sample.points) {
      const CVector xc = x.cast<Complex>();
      CHECK(std::any_of(out.points.begin(), out.points.end(),
                        [&](const CVector& y) { return projective_gap(y, xc) < 1e-8; }));
    }
  }

  TEST_CASE("degree consistency over random sections") {
    for (const SegreSpec spec : {SegreSpec{{2, 2}}, SegreSpec{{2, 4}}}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const LinearSpace l = random_space(spec, seed);
        CHECK(l.codim() == spec.dim());
        check_section(spec, l, solve_section(spec, l));
      }
    }
  }

  TEST_CASE("plane-cubed sections through five real points are totally real") {
    const SegreSpec spec{{2, 2}};
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      CHECK(solve_section(spec, span_through_points(spec, 5, seed)).signature == SectionSignature{6, 0});
    }
  }

  TEST_CASE("a non-transverse space is deficient") {
    // x00 = x01 = x10 = 0 contains the whole line {u = e0} x ... and the
    // point set is not finite in the expected way.
    const SegreSpec spec{{1, 1}};
    LinearSpace l;
    l.equations = RMatrix::Zero(2, 4);
    l.equations(0, 0) = 1.0;
    l.equations(1, 1) = 1.0;
    CHECK_THROWS_AS(solve_section(spec, l), DeficientSection);
  }

  TEST_CASE("signature search") {
    // Spans of five real points are always totally real, but a general real
    // space can carry a conjugate pair.
    const auto mixed = search_signature({{2, 2}}, {4, 2}, 20, 1);
    REQUIRE(mixed.has_value());
    CHECK(solve_section({{2, 2}}, mixed->space).signature == SectionSignature{4, 2});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const LinearSpace l = span_with_conjugate_pair(seed);
      check_section({{2, 2}}, l, solve_section({{2, 2}}, l));
      CHECK(solve_section({{2, 2}}, l).signature == SectionSignature{4, 2});
    }

    const auto found = search_signature({{1, 1}}, {0, 2}, 50, 1);
    REQUIRE(found.has_value());
    CHECK(found->section.signature == SectionSignature{0, 2});

    CHECK_THROWS_AS(search_signature({{2, 2}}, {5, 0}, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_signature({{2, 2}}, {3, 3}, 5, 1), std::invalid_argument);
  }
}
