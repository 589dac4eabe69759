#include "realid/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace realid {

namespace {

unsigned degree_of(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

void enumerate_monomials(std::size_t var, unsigned remaining, Exponent& current,
                         std::vector<Exponent>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[var] = e;
    enumerate_monomials(var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

bool GradedLexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = degree_of(a);
  const unsigned db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------
// MPoly

MPoly MPoly::constant(std::size_t num_vars, Complex value) {
  MPoly p(num_vars);
  p.add_term(Exponent(num_vars, 0), value);
  return p;
}

MPoly MPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw DimensionError("variable index out of range");
  Exponent e(num_vars, 0);
  e[index] = 1;
  MPoly p(num_vars);
  p.add_term(e, 1.0);
  return p;
}

MPoly MPoly::monomial(Exponent exponent, Complex coeff) {
  MPoly p(exponent.size());
  p.add_term(exponent, coeff);
  return p;
}

int MPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max<int>(deg, static_cast<int>(degree_of(e)));
  return deg;
}

void MPoly::add_term(const Exponent& exponent, Complex coeff) {
  if (exponent.size() != num_vars_) throw DimensionError("exponent length mismatch");
  auto it = terms_.find(exponent);
  if (it == terms_.end()) {
    if (std::abs(coeff) >= kPruneThreshold) terms_.emplace(exponent, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

Complex MPoly::evaluate(std::span<const Complex> point) const {
  if (point.size() != num_vars_) throw DimensionError("point length mismatch");
  Complex sum = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (e[v] != 0) term *= std::pow(point[v], static_cast<int>(e[v]));
    }
    sum += term;
  }
  return sum;
}

MPoly MPoly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw DimensionError("variable index out of range");
  MPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<double>(e[var]));
  }
  return out;
}

Complex MPoly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Complex{} : it->second;
}

void MPoly::check_same_space(const MPoly& other) const {
  if (other.num_vars_ != num_vars_) throw DimensionError("polynomials live in different spaces");
}

MPoly& MPoly::operator+=(const MPoly& other) {
  check_same_space(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  check_same_space(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(Complex scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same_space(b);
  MPoly out(a.num_vars_);
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly MPoly::pow(unsigned exponent) const {
  MPoly result = constant(num_vars_, 1.0);
  MPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Free functions

std::vector<Exponent> monomials_of_degree(std::size_t num_vars, unsigned d) {
  std::vector<Exponent> out;
  if (num_vars == 0) return out;
  Exponent current(num_vars, 0);
  enumerate_monomials(0, d, current, out);
  return out;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // result * num / i is exact at every step; guard the product.
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
    result = result * num / i;
  }
  return result;
}

std::uint64_t multinomial(const Exponent& exponent) {
  std::uint64_t result = 1;
  unsigned partial = 0;
  for (auto e : exponent) {
    partial += e;
    const std::uint64_t b = binomial(partial, e);
    if (b != 0 && result > std::numeric_limits<std::uint64_t>::max() / b) {
      throw std::overflow_error("multinomial coefficient overflows 64 bits");
    }
    result *= b;
  }
  return result;
}

MPoly power_of_linear_form(std::span<const Complex> coeffs, unsigned d, Complex scale) {
  if (d < 1) throw std::invalid_argument("power_of_linear_form requires d >= 1");
  MPoly out(coeffs.size());
  for (const Exponent& e : monomials_of_degree(coeffs.size(), d)) {
    Complex c = scale * static_cast<double>(multinomial(e));
    for (std::size_t h = 0; h < coeffs.size(); ++h) {
      if (e[h] != 0) c *= std::pow(coeffs[h], static_cast<int>(e[h]));
    }
    out.add_term(e, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolySystem

PolySystem::PolySystem(std::vector<MPoly> polys, std::size_t num_unknowns, std::size_t num_params)
    : polys_(std::move(polys)), num_unknowns_(num_unknowns), num_params_(num_params) {
  const std::size_t nv = num_unknowns_ + num_params_;
  max_exp_.assign(nv, 0);
  poly_offsets_.push_back(0);
  for (const MPoly& p : polys_) {
    if (p.num_vars() != nv) {
      throw DimensionError("polynomial has " + std::to_string(p.num_vars()) +
                           " variables, system expects " + std::to_string(nv));
    }
    for (const auto& [e, c] : p.terms()) {
      Term t{c, static_cast<std::uint32_t>(factors_.size()), 0};
      for (std::size_t v = 0; v < nv; ++v) {
        if (e[v] == 0) continue;
        factors_.push_back({static_cast<std::uint32_t>(v), e[v]});
        max_exp_[v] = std::max(max_exp_[v], e[v]);
        ++t.num_factors;
      }
      terms_.push_back(t);
    }
    poly_offsets_.push_back(static_cast<std::uint32_t>(terms_.size()));
  }
  power_offsets_.resize(nv + 1);
  power_offsets_[0] = 0;
  for (std::size_t v = 0; v < nv; ++v) power_offsets_[v + 1] = power_offsets_[v] + max_exp_[v] + 1;
}

void PolySystem::check_dims(const CVector& point, const CVector& params) const {
  if (static_cast<std::size_t>(point.size()) != num_unknowns_ ||
      static_cast<std::size_t>(params.size()) != num_params_) {
    throw DimensionError("expected " + std::to_string(num_unknowns_) + " unknowns and " +
                         std::to_string(num_params_) + " parameters, got " +
                         std::to_string(point.size()) + " and " + std::to_string(params.size()));
  }
}

std::vector<Complex> PolySystem::power_table(const CVector& point, const CVector& params) const {
  std::vector<Complex> table(power_offsets_.back());
  for (std::size_t v = 0; v < max_exp_.size(); ++v) {
    const Complex x = v < num_unknowns_ ? point[v] : params[v - num_unknowns_];
    Complex* row = table.data() + power_offsets_[v];
    row[0] = 1.0;
    for (std::uint32_t k = 1; k <= max_exp_[v]; ++k) row[k] = row[k - 1] * x;
  }
  return table;
}

CVector PolySystem::evaluate(const CVector& point, const CVector& params) const {
  check_dims(point, params);
  const auto table = power_table(point, params);
  CVector values = CVector::Zero(static_cast<Eigen::Index>(polys_.size()));
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    Complex sum = 0.0;
    for (std::uint32_t t = poly_offsets_[i]; t < poly_offsets_[i + 1]; ++t) {
      Complex term = terms_[t].coeff;
      for (std::uint32_t f = 0; f < terms_[t].num_factors; ++f) {
        const Factor& fac = factors_[terms_[t].first_factor + f];
        term *= table[power_offsets_[fac.var] + fac.exp];
      }
      sum += term;
    }
    values[static_cast<Eigen::Index>(i)] = sum;
  }
  return values;
}

CVector PolySystem::evaluate_extended(const CVector& point, const CVector& params) const {
  using Wide = std::complex<long double>;
  check_dims(point, params);
  std::vector<Wide> table(power_offsets_.back());
  for (std::size_t v = 0; v < max_exp_.size(); ++v) {
    const Complex x = v < num_unknowns_ ? point[v] : params[v - num_unknowns_];
    Wide* row = table.data() + power_offsets_[v];
    row[0] = 1.0L;
    for (std::uint32_t k = 1; k <= max_exp_[v]; ++k) row[k] = row[k - 1] * Wide(x);
  }
  CVector values(static_cast<Eigen::Index>(polys_.size()));
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    Wide sum = 0.0L;
    for (std::uint32_t t = poly_offsets_[i]; t < poly_offsets_[i + 1]; ++t) {
      Wide term(terms_[t].coeff);
      for (std::uint32_t f = 0; f < terms_[t].num_factors; ++f) {
        const Factor& fac = factors_[terms_[t].first_factor + f];
        term *= table[power_offsets_[fac.var] + fac.exp];
      }
      sum += term;
    }
    values[static_cast<Eigen::Index>(i)] =
        Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  }
  return values;
}

void PolySystem::evaluate_all(const CVector& point, const CVector& params, CVector& values,
                              CMatrix& jac_unknowns, CMatrix* jac_params) const {
  check_dims(point, params);
  const auto table = power_table(point, params);
  const auto m = static_cast<Eigen::Index>(polys_.size());
  values = CVector::Zero(m);
  jac_unknowns = CMatrix::Zero(m, static_cast<Eigen::Index>(num_unknowns_));
  if (jac_params != nullptr) *jac_params = CMatrix::Zero(m, static_cast<Eigen::Index>(num_params_));

  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (std::uint32_t t = poly_offsets_[i]; t < poly_offsets_[i + 1]; ++t) {
      const Term& term = terms_[t];
      const Factor* facs = factors_.data() + term.first_factor;
      Complex full = term.coeff;
      for (std::uint32_t f = 0; f < term.num_factors; ++f) {
        full *= table[power_offsets_[facs[f].var] + facs[f].exp];
      }
      values[row] += full;
      for (std::uint32_t j = 0; j < term.num_factors; ++j) {
        const std::uint32_t var = facs[j].var;
        if (var >= num_unknowns_ && jac_params == nullptr) continue;
        Complex partial = term.coeff * static_cast<double>(facs[j].exp) *
                          table[power_offsets_[var] + facs[j].exp - 1];
        for (std::uint32_t f = 0; f < term.num_factors; ++f) {
          if (f != j) partial *= table[power_offsets_[facs[f].var] + facs[f].exp];
        }
        if (var < num_unknowns_) {
          jac_unknowns(row, var) += partial;
        } else {
          (*jac_params)(row, var - num_unknowns_) += partial;
        }
      }
    }
  }
}

CMatrix PolySystem::jacobian(const CVector& point, const CVector& params) const {
  CVector values;
  CMatrix jac;
  evaluate_all(point, params, values, jac, nullptr);
  return jac;
}

double PolySystem::residual(const CVector& point, const CVector& params) const {
  check_dims(point, params);
  const auto table = power_table(point, params);
  double worst = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    Complex sum = 0.0;
    double magnitude = 0.0;
    for (std::uint32_t t = poly_offsets_[i]; t < poly_offsets_[i + 1]; ++t) {
      Complex term = terms_[t].coeff;
      for (std::uint32_t f = 0; f < terms_[t].num_factors; ++f) {
        const Factor& fac = factors_[terms_[t].first_factor + f];
        term *= table[power_offsets_[fac.var] + fac.exp];
      }
      sum += term;
      magnitude += std::abs(term);
    }
    if (magnitude > 0.0) worst = std::max(worst, std::abs(sum) / magnitude);
  }
  return worst;
}

PolySystem extract_coefficient_system(const MPoly& expr, std::size_t num_x_vars,
                                      std::size_t num_unknowns, std::size_t num_params) {
  if (expr.num_vars() != num_x_vars + num_unknowns + num_params) {
    throw DimensionError("expression variable count does not match the declared layout");
  }
  if (num_x_vars == 0) throw std::invalid_argument("need at least one x-variable");

  int d = -1;
  for (const auto& [e, c] : expr.terms()) {
    const unsigned deg = std::accumulate(e.begin(), e.begin() + static_cast<long>(num_x_vars), 0u);
    if (d < 0) {
      d = static_cast<int>(deg);
    } else if (static_cast<unsigned>(d) != deg) {
      throw std::invalid_argument("expression is not homogeneous in the x-variables");
    }
  }
  if (d < 0) throw std::invalid_argument("cannot extract coefficients of the zero polynomial");

  const auto basis = monomials_of_degree(num_x_vars, static_cast<unsigned>(d));
  std::map<Exponent, MPoly> grouped;
  const std::size_t rest = num_unknowns + num_params;
  for (const auto& [e, c] : expr.terms()) {
    Exponent xe(e.begin(), e.begin() + static_cast<long>(num_x_vars));
    Exponent ye(e.begin() + static_cast<long>(num_x_vars), e.end());
    auto [it, inserted] = grouped.try_emplace(std::move(xe), rest);
    it->second.add_term(ye, c);
  }
  std::vector<MPoly> polys;
  polys.reserve(basis.size());
  for (const Exponent& m : basis) {
    auto it = grouped.find(m);
    polys.push_back(it == grouped.end() ? MPoly(rest) : it->second);
  }
  return PolySystem(std::move(polys), num_unknowns, num_params);
}

}  // namespace realid
