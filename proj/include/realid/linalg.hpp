#pragma once

#include <optional>

#include "realid/poly.hpp"

namespace realid {

/// Result of a dense complex solve by partial-pivot LU.
struct LinearSolve {
  CVector solution;
  /// Ratio of largest to smallest |U_ii|; a cheap conditioning estimate.
  double condition = 0.0;
};

/// Condition estimates above this treat the matrix as singular.
inline constexpr double kSingularCondition = 1e12;

/// Solves a x = b. Returns nullopt when the pivot ratio exceeds max_condition
/// or a pivot is exactly zero.
std::optional<LinearSolve> lu_solve(const CMatrix& a, const CVector& b,
                                    double max_condition = kSingularCondition);

/// Unit-norm vector spanning the (numerical) kernel of a matrix with
/// one-dimensional kernel, from the last right singular vector.
CVector kernel_vector(const CMatrix& a);

/// Numerical rank by singular values relative to the largest one.
int numerical_rank(const CMatrix& a, double rel_tol);

double max_abs(const CVector& v);

}  // namespace realid
