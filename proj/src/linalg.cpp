#include "realid/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace realid {

std::optional<LinearSolve> lu_solve(const CMatrix& a, const CVector& b, double max_condition) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw DimensionError("lu_solve: shape mismatch");
  // Row then column equilibration so the pivot ratio reflects conditioning
  // rather than the scale of individual equations and unknowns.
  const Eigen::Index n = a.rows();
  Eigen::VectorXd row_scale(n);
  Eigen::VectorXd col_scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = a.row(i).cwiseAbs().maxCoeff();
    if (m == 0.0 || !std::isfinite(m)) return std::nullopt;
    row_scale[i] = 1.0 / m;
  }
  CMatrix scaled = row_scale.asDiagonal() * a;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = scaled.col(j).cwiseAbs().maxCoeff();
    if (m == 0.0) return std::nullopt;
    col_scale[j] = 1.0 / m;
  }
  scaled = scaled * col_scale.asDiagonal();

  Eigen::PartialPivLU<CMatrix> lu(scaled);
  const auto& packed = lu.matrixLU();
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::abs(packed(i, i));
    largest = std::max(largest, p);
    smallest = std::min(smallest, p);
  }
  if (smallest == 0.0 || !std::isfinite(largest)) return std::nullopt;
  const double condition = largest / smallest;
  if (condition > max_condition) return std::nullopt;
  CVector y = lu.solve(row_scale.asDiagonal() * b);
  LinearSolve out{col_scale.asDiagonal() * y, condition};
  if (!out.solution.allFinite()) return std::nullopt;
  return out;
}

CVector kernel_vector(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(svd.matrixV().cols() - 1);
}

int numerical_rank(const CMatrix& a, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0]) ++rank;
  }
  return rank;
}

double max_abs(const CVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace realid
