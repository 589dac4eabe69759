#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <vector>

#include "realid/elliptic.hpp"
#include "realid/homotopy.hpp"
#include "realid/waring.hpp"

namespace oracle {

using realid::CMatrix;
using realid::Complex;
using realid::CVector;

/// Central finite differences of sys with respect to the unknowns.
CMatrix finite_difference_jacobian(const realid::PolySystem& sys, const CVector& x, const CVector& p,
                                   double h);

/// Rank of the conditions that r general double points impose on forms of
/// degree d in n + 1 variables (values of all first partials at each point).
int double_point_rank(unsigned d, unsigned n, unsigned r, std::uint64_t seed);

/// True when r general double points fail to impose min(r(n+1), C(n+d,d))
/// independent conditions.
bool is_defective(unsigned d, unsigned n, unsigned r);

/// Permutation-minimized max summand distance by enumerating all orderings.
double brute_force_distance(const realid::Decomposition& a, const realid::Decomposition& b);

/// Evaluates sum_i lambda_i (x0 + sum_h l_h x_h)^d at x directly.
Complex evaluate_decomposition(const realid::Decomposition& dec, unsigned d, const CVector& x);

/// Evaluates the form with graded-lex coefficients at x by direct monomial sums.
Complex evaluate_form(const CVector& coeffs, unsigned d, const CVector& x);

/// Directions of the two secant lines through P from the tangent-plane
/// section of the pencil member through P, as unit vectors in C^4.
std::vector<realid::CPoint3> secant_directions_closed_form(const realid::QuadricPencil& pencil,
                                                           const realid::RPoint3& p);

/// Number of distinct secant lines through P found by solving the literal
/// system Q_j(P + t_i d) = 0 with a 4^4 total-degree homotopy in each
/// direction chart, keeping nonsingular solutions with t1 != t2.
std::vector<realid::CPoint3> secant_directions_literal(const realid::QuadricPencil& pencil,
                                                       const realid::RPoint3& p);

/// Projective distance between two lines through a common point given by
/// their directions modulo that point.
double direction_gap(const realid::CPoint3& a, const realid::CPoint3& b, const realid::RPoint3& p);

}  // namespace oracle
