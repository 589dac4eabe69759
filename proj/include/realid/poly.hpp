#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace realid {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Exponent = std::vector<std::uint32_t>;

/// Thrown when tuple sizes disagree with a polynomial or system layout.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Graded-lex order: higher total degree first, then lexicographically larger
/// exponent first (x0 > x1 > ...). Used for term maps and monomial bases.
struct GradedLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Coefficients with magnitude below this are dropped after arithmetic.
inline constexpr double kPruneThreshold = 1e-14;

/// Sparse multivariate polynomial with complex coefficients.
class MPoly {
 public:
  using TermMap = std::map<Exponent, Complex, GradedLexGreater>;

  explicit MPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static MPoly constant(std::size_t num_vars, Complex value);
  static MPoly variable(std::size_t num_vars, std::size_t index);
  static MPoly monomial(Exponent exponent, Complex coeff);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  /// Adds coeff to the term with the given exponent, pruning if it cancels.
  void add_term(const Exponent& exponent, Complex coeff);

  Complex evaluate(std::span<const Complex> point) const;
  MPoly derivative(std::size_t var) const;
  /// Coefficient of one exponent (zero if absent).
  Complex coefficient(const Exponent& exponent) const;

  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(Complex scale);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, Complex s) { return a *= s; }
  friend MPoly operator*(Complex s, MPoly a) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);

  MPoly pow(unsigned exponent) const;

 private:
  void check_same_space(const MPoly& other) const;

  std::size_t num_vars_;
  TermMap terms_;
};

/// All exponent tuples of total degree d in num_vars variables, graded-lex.
std::vector<Exponent> monomials_of_degree(std::size_t num_vars, unsigned d);

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(unsigned n, unsigned k);
/// Exact multinomial d! / prod(exponent_i!) with d = sum of the exponents.
std::uint64_t multinomial(const Exponent& exponent);

/// scale * (sum_h coeffs[h] x_h)^d, expanded with exact multinomial weights.
MPoly power_of_linear_form(std::span<const Complex> coeffs, unsigned d, Complex scale);

/// Square (or rectangular) polynomial system over a shared variable space in
/// which the unknowns come first and the parameters after them.
///
/// Polynomials are compiled into a flat sparse form at construction so that
/// evaluation and differentiation do not touch the term maps.
class PolySystem {
 public:
  PolySystem() = default;
  PolySystem(std::vector<MPoly> polys, std::size_t num_unknowns, std::size_t num_params);

  std::size_t size() const { return polys_.size(); }
  std::size_t num_unknowns() const { return num_unknowns_; }
  std::size_t num_params() const { return num_params_; }
  bool is_square() const { return polys_.size() == num_unknowns_; }
  const std::vector<MPoly>& polys() const { return polys_; }

  CVector evaluate(const CVector& point, const CVector& params) const;
  /// Same values accumulated in extended precision, then rounded. Used for
  /// mixed-precision refinement of ill-conditioned roots.
  CVector evaluate_extended(const CVector& point, const CVector& params) const;
  /// Partial derivatives with respect to the unknowns only.
  CMatrix jacobian(const CVector& point, const CVector& params) const;

  /// Values, unknown-Jacobian and parameter-Jacobian in one sweep.
  void evaluate_all(const CVector& point, const CVector& params, CVector& values,
                    CMatrix& jac_unknowns, CMatrix* jac_params) const;

  /// Componentwise relative backward error: max_i |f_i| / sum_t |term_t|.
  double residual(const CVector& point, const CVector& params) const;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct Term {
    Complex coeff;
    std::uint32_t first_factor;
    std::uint32_t num_factors;
  };

  void check_dims(const CVector& point, const CVector& params) const;
  std::vector<Complex> power_table(const CVector& point, const CVector& params) const;

  std::vector<MPoly> polys_;
  std::size_t num_unknowns_ = 0;
  std::size_t num_params_ = 0;
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
  std::vector<std::uint32_t> poly_offsets_;  // poly i owns terms [off[i], off[i+1])
  std::vector<std::uint32_t> max_exp_;
  std::vector<std::uint32_t> power_offsets_;  // var v's powers start here
};

/// Groups the terms of expr (over [x-vars | unknowns | params]) by their
/// x-exponent and returns one equation per degree-d monomial of the x-vars.
/// Throws std::invalid_argument if expr is not homogeneous in the x-vars.
PolySystem extract_coefficient_system(const MPoly& expr, std::size_t num_x_vars,
                                      std::size_t num_unknowns, std::size_t num_params);

}  // namespace realid
