#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "realid/poly.hpp"

namespace realid {

/// Forms of degree d in the n + 1 variables x0..xn, decomposed with r summands.
struct WaringSpec {
  unsigned d = 0;
  unsigned n = 0;
  unsigned r = 0;

  /// C(n + d, d): number of degree-d monomials, equations and parameters.
  std::size_t num_monomials() const;
  std::size_t num_unknowns() const { return static_cast<std::size_t>(r) * (n + 1); }
  bool is_perfect() const { return num_unknowns() == num_monomials(); }
};

/// One term lambda * (x0 + sum_h l[h-1] x_h)^d. The x0 coefficient is the
/// fixed chart value 1 and is never stored.
struct Summand {
  CVector l;
  Complex lambda;
};

/// Unordered collection of r summands.
struct Decomposition {
  std::vector<Summand> summands;

  std::size_t rank() const { return summands.size(); }
  /// Summand-wise complex conjugate.
  Decomposition conjugate() const;
};

/// Coefficients of a form in the graded-lex basis of degree-d monomials, with
/// the multinomial factors folded in.
struct TensorParams {
  CVector coeffs;

  bool is_real(double tol = 1e-12) const;
};

struct Admissibility {
  bool admissible = false;
  std::string reason;
  explicit operator bool() const { return admissible; }
};

/// Perfect-case and Alexander–Hirschowitz checks.
Admissibility is_admissible(const WaringSpec& spec);

/// The square system T - sum_i lambda_i l_i^d = 0, one equation per monomial.
/// Unknowns are ordered (l^1, lambda_1, l^2, lambda_2, ...), parameters are the
/// coefficients of T. Throws std::invalid_argument on inadmissible specs.
PolySystem build_system(const WaringSpec& spec);

CVector to_unknowns(const Decomposition& dec);
Decomposition from_unknowns(const WaringSpec& spec, const CVector& unknowns);

/// Expands sum_i lambda_i l_i^d in the graded-lex monomial basis.
TensorParams tensor_from_decomposition(const WaringSpec& spec, const Decomposition& dec);

/// Draws a real decomposition and the tensor it produces, polished once.
///
/// Chart coefficients are uniform in [-magnitude, magnitude]; weights are
/// uniform in [-magnitude^3, magnitude^3].
std::pair<Decomposition, TensorParams> random_real_start(const WaringSpec& spec,
                                                         std::uint64_t seed,
                                                         double magnitude = 5.0);

// Fixture files: JSON array of r objects { "l": [real...], "lambda": real }.
Decomposition parse_fixture(const std::string& json_text, const WaringSpec& spec);
Decomposition load_fixture(const std::filesystem::path& path, const WaringSpec& spec);
std::string dump_fixture(const Decomposition& dec);

/// Thrown by sylvester_oracle when the binary form is not generic.
class NonGenericForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank-r decomposition of a binary form of degree 2r - 1 by apolarity: the
/// kernel of the r x (r + 1) Hankel catalecticant gives a degree-r polynomial
/// whose roots are the chart coefficients, and a Vandermonde solve gives the
/// weights. Returns the unique decomposition as a one-element set.
std::vector<Decomposition> sylvester_oracle(const TensorParams& binary_form, unsigned r);

}  // namespace realid
