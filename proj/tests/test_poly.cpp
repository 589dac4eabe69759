#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "realid/poly.hpp"

using namespace realid;

namespace {

CVector random_cvector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = Complex(g(rng), g(rng));
  return v;
}

MPoly random_cubic(std::mt19937_64& rng, std::size_t num_vars) {
  std::normal_distribution<double> g(0.0, 1.0);
  MPoly out(num_vars);
  for (unsigned d = 0; d <= 3; ++d) {
    for (const Exponent& e : monomials_of_degree(num_vars, d)) out.add_term(e, Complex(g(rng), g(rng)));
  }
  return out;
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("evaluate examples") {
    const MPoly x = MPoly::variable(1, 0);
    const PolySystem sqrt2({x * x - MPoly::constant(1, 2.0)}, 1, 0);
    CHECK(std::abs(sqrt2.evaluate(CVector::Constant(1, std::sqrt(2.0)), CVector(0))[0]) < 1e-12);

    std::vector<MPoly> q1(1, MPoly(4));
    const Complex coeff[4] = {1.0, 1.0, -1.0, -1.0};
    for (std::size_t k = 0; k < 4; ++k) q1[0] += coeff[k] * (MPoly::variable(4, k) * MPoly::variable(4, k));
    const PolySystem quadric(q1, 4, 0);
    CVector a(4);
    a << 1.0, Complex(0.0, 1.0), 0.0, 0.0;
    CHECK(std::abs(quadric.evaluate(a, CVector(0))[0]) == 0.0);

    const PolySystem product({MPoly::variable(2, 0) * MPoly::variable(2, 1)}, 2, 0);
    CVector pt(2);
    pt << 3.0, 0.0;
    CHECK(std::abs(product.evaluate(pt, CVector(0))[0]) == 0.0);
  }

  TEST_CASE("dimension mismatch throws") {
    const PolySystem sys({MPoly::variable(2, 0)}, 1, 1);
    CHECK_THROWS_AS(sys.evaluate(CVector::Zero(2), CVector::Zero(1)), DimensionError);
    CHECK_THROWS_AS(sys.evaluate(CVector::Zero(1), CVector::Zero(0)), DimensionError);
    CHECK_THROWS_AS(MPoly(2) + MPoly(3), DimensionError);
  }

  TEST_CASE("jacobian examples") {
    const MPoly x = MPoly::variable(1, 0);
    const PolySystem sq({x * x - MPoly::constant(1, 2.0)}, 1, 0);
    CHECK(std::abs(sq.jacobian(CVector::Constant(1, 3.0), CVector(0))(0, 0) - 6.0) < 1e-14);

    const MPoly x0 = MPoly::variable(2, 0);
    const MPoly x1 = MPoly::variable(2, 1);
    const PolySystem sys({x0 * x1, x0 + x1}, 2, 0);
    CVector pt(2);
    pt << 1.0, 2.0;
    CMatrix expected(2, 2);
    expected << 2.0, 1.0, 1.0, 1.0;
    CHECK((sys.jacobian(pt, CVector(0)) - expected).norm() < 1e-14);
  }

  TEST_CASE("jacobian matches finite differences on random cubic systems") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t nx = 3;
      const std::size_t np = 2;
      std::vector<MPoly> polys;
      for (std::size_t i = 0; i < nx; ++i) polys.push_back(random_cubic(rng, nx + np));
      const PolySystem sys(polys, nx, np);
      const CVector x = random_cvector(rng, nx);
      const CVector p = random_cvector(rng, np);
      const CMatrix exact = sys.jacobian(x, p);
      const CMatrix fd = oracle::finite_difference_jacobian(sys, x, p, 1e-6);
      CHECK((exact - fd).cwiseAbs().maxCoeff() < 1e-5 * (1.0 + exact.cwiseAbs().maxCoeff()));

      CVector values;
      CMatrix jx;
      CMatrix jp;
      sys.evaluate_all(x, p, values, jx, &jp);
      CHECK((values - sys.evaluate(x, p)).norm() < 1e-12 * (1.0 + values.norm()));
      CHECK((jx - exact).norm() < 1e-12 * (1.0 + exact.norm()));
    }
  }

  TEST_CASE("power_of_linear_form examples") {
    const std::vector<Complex> c12 = {1.0, 2.0};
    const MPoly p = power_of_linear_form(c12, 2, 1.0);
    CHECK(p.coefficient({2, 0}) == Complex(1.0));
    CHECK(p.coefficient({1, 1}) == Complex(4.0));
    CHECK(p.coefficient({0, 2}) == Complex(4.0));
    CHECK(p.terms().size() == 3);

    const std::vector<Complex> e0 = {1.0, 0.0, 0.0};
    const MPoly q = power_of_linear_form(e0, 7, 5.0);
    CHECK(q.terms().size() == 1);
    CHECK(q.coefficient({7, 0, 0}) == Complex(5.0));

    const std::vector<Complex> ones = {1.0, 1.0, 1.0};
    const MPoly s = power_of_linear_form(ones, 3, 1.0);
    CHECK(s.terms().size() == 10);
    CHECK(s.coefficient({1, 1, 1}) == Complex(6.0));
    CHECK(s.coefficient({2, 1, 0}) == Complex(3.0));
    CHECK(s.total_degree() == 3);
  }

  TEST_CASE("power_of_linear_form evaluates to the power of the form") {
    std::mt19937_64 rng(5);
    for (unsigned d : {1u, 4u, 8u}) {
      const CVector c = random_cvector(rng, 3);
      const CVector x = random_cvector(rng, 3);
      const Complex scale(0.3, -1.2);
      const MPoly p = power_of_linear_form(std::span<const Complex>(c.data(), 3), d, scale);
      const Complex expected = scale * std::pow(c.cwiseProduct(x).sum(), static_cast<int>(d));
      const Complex got = p.evaluate(std::span<const Complex>(x.data(), 3));
      CHECK(std::abs(got - expected) < 1e-10 * std::abs(expected));
    }
  }

  TEST_CASE("exact binomial and multinomial") {
    CHECK(binomial(9, 7) == 36);
    CHECK(binomial(10, 8) == 45);
    CHECK(binomial(60, 30) == 118264581564861424ULL);
    CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
    CHECK(multinomial({1, 1, 1}) == 6);
    CHECK(multinomial({4, 2, 2}) == 420);
  }

  TEST_CASE("graded-lex monomial basis") {
    const auto m = monomials_of_degree(3, 2);
    REQUIRE(m.size() == 6);
    CHECK(m[0] == Exponent{2, 0, 0});
    CHECK(m[1] == Exponent{1, 1, 0});
    CHECK(m[2] == Exponent{1, 0, 1});
    CHECK(m[5] == Exponent{0, 0, 2});
  }

  TEST_CASE("pruning keeps term maps canonical") {
    MPoly p = MPoly::variable(2, 0) + MPoly::variable(2, 1);
    p -= MPoly::variable(2, 0);
    CHECK(p.terms().size() == 1);
    MPoly tiny(1);
    tiny.add_term({1}, 1e-15);
    CHECK(tiny.is_zero());
  }

  TEST_CASE("coefficient extraction counts") {
    for (auto [d, n, expected] : {std::tuple{7u, 2u, 36u}, std::tuple{8u, 2u, 45u}, std::tuple{1u, 1u, 2u}}) {
      // expr = u0 * (x0 + x1 + ... )^d over [x | u]
      const std::size_t nx = n + 1;
      std::vector<Complex> ones(nx + 1, 1.0);
      ones[nx] = 0.0;
      MPoly expr = power_of_linear_form(ones, d, 1.0) * MPoly::variable(nx + 1, nx);
      const PolySystem sys = extract_coefficient_system(expr, nx, 1, 0);
      CHECK(sys.size() == expected);
    }
  }

  TEST_CASE("coefficient extraction is linear and rejects non-homogeneous input") {
    std::mt19937_64 rng(8);
    const std::size_t nx = 2;
    const std::size_t nu = 2;
    MPoly a(nx + nu);
    MPoly b(nx + nu);
    std::normal_distribution<double> g(0.0, 1.0);
    for (const Exponent& e : monomials_of_degree(nx, 3)) {
      for (std::size_t u = 0; u < nu; ++u) {
        Exponent full(nx + nu, 0);
        std::copy(e.begin(), e.end(), full.begin());
        full[nx + u] = 1;
        a.add_term(full, Complex(g(rng), g(rng)));
        b.add_term(full, Complex(g(rng), g(rng)));
      }
    }
    const PolySystem sa = extract_coefficient_system(a, nx, nu, 0);
    const PolySystem sb = extract_coefficient_system(b, nx, nu, 0);
    const PolySystem sab = extract_coefficient_system(a + b, nx, nu, 0);
    const CVector u = random_cvector(rng, nu);
    CHECK((sab.evaluate(u, CVector(0)) - sa.evaluate(u, CVector(0)) - sb.evaluate(u, CVector(0))).norm() < 1e-12);

    MPoly mixed = MPoly::variable(nx + nu, 0) + MPoly::variable(nx + nu, 0) * MPoly::variable(nx + nu, 1);
    CHECK_THROWS_AS(extract_coefficient_system(mixed, nx, nu, 0), std::invalid_argument);
  }
}
