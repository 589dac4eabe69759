#include "realid/waring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "realid/homotopy.hpp"
#include "realid/linalg.hpp"

namespace realid {

std::size_t WaringSpec::num_monomials() const { return binomial(n + d, d); }

Decomposition Decomposition::conjugate() const {
  Decomposition out = *this;
  for (Summand& s : out.summands) {
    s.l = s.l.conjugate();
    s.lambda = std::conj(s.lambda);
  }
  return out;
}

bool TensorParams::is_real(double tol) const {
  return coeffs.size() == 0 || coeffs.imag().cwiseAbs().maxCoeff() <= tol * (1.0 + max_abs(coeffs));
}

Admissibility is_admissible(const WaringSpec& spec) {
  if (spec.d < 1 || spec.n < 1 || spec.r < 1) {
    return {false, "d, n and r must all be positive"};
  }
  if (!spec.is_perfect()) {
    std::ostringstream msg;
    msg << "not a perfect case: r(n+1) = " << spec.num_unknowns() << " but C(n+d,d) = "
        << spec.num_monomials();
    return {false, msg.str()};
  }
  const bool quadric = spec.d == 2 && spec.n >= 2;
  const bool quartic = spec.d == 4 && spec.n >= 2 && spec.n <= 4;
  const bool cubic = spec.d == 3 && spec.n == 4;
  if (quadric || quartic || cubic) {
    return {false, "Alexander–Hirschowitz exception (d=" + std::to_string(spec.d) +
                       ", n=" + std::to_string(spec.n) + ")"};
  }
  return {true, "perfect and not an Alexander–Hirschowitz exception"};
}

PolySystem build_system(const WaringSpec& spec) {
  if (auto ok = is_admissible(spec); !ok) throw std::invalid_argument(ok.reason);

  const std::size_t nx = spec.n + 1;
  const std::size_t nu = spec.num_unknowns();
  const std::size_t np = spec.num_monomials();
  const std::size_t nv = nx + nu + np;
  auto var = [nv](std::size_t i) { return MPoly::variable(nv, i); };

  MPoly expr(nv);
  const auto basis = monomials_of_degree(nx, spec.d);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    Exponent e(nv, 0);
    std::copy(basis[a].begin(), basis[a].end(), e.begin());
    e[nx + nu + a] = 1;
    expr.add_term(e, 1.0);
  }
  for (unsigned i = 0; i < spec.r; ++i) {
    const std::size_t base = nx + static_cast<std::size_t>(i) * (spec.n + 1);
    MPoly form = var(0);
    for (unsigned h = 1; h <= spec.n; ++h) form += var(base + h - 1) * var(h);
    expr -= var(base + spec.n) * form.pow(spec.d);
  }
  return extract_coefficient_system(expr, nx, nu, np);
}

CVector to_unknowns(const Decomposition& dec) {
  if (dec.summands.empty()) return CVector();
  const auto n = dec.summands.front().l.size();
  CVector out(static_cast<Eigen::Index>(dec.summands.size()) * (n + 1));
  Eigen::Index k = 0;
  for (const Summand& s : dec.summands) {
    if (s.l.size() != n) throw DimensionError("summands have different lengths");
    out.segment(k, n) = s.l;
    out[k + n] = s.lambda;
    k += n + 1;
  }
  return out;
}

Decomposition from_unknowns(const WaringSpec& spec, const CVector& unknowns) {
  if (static_cast<std::size_t>(unknowns.size()) != spec.num_unknowns()) {
    throw DimensionError("unknown vector does not match r(n+1)");
  }
  Decomposition dec;
  const Eigen::Index n = spec.n;
  for (unsigned i = 0; i < spec.r; ++i) {
    const Eigen::Index base = static_cast<Eigen::Index>(i) * (n + 1);
    dec.summands.push_back({unknowns.segment(base, n), unknowns[base + n]});
  }
  return dec;
}

TensorParams tensor_from_decomposition(const WaringSpec& spec, const Decomposition& dec) {
  const auto basis = monomials_of_degree(spec.n + 1, spec.d);
  CVector coeffs = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
  std::vector<Complex> form(spec.n + 1);
  for (const Summand& s : dec.summands) {
    if (static_cast<unsigned>(s.l.size()) != spec.n) throw DimensionError("summand length != n");
    form[0] = 1.0;
    for (unsigned h = 0; h < spec.n; ++h) form[h + 1] = s.l[h];
    const MPoly p = power_of_linear_form(form, spec.d, s.lambda);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      coeffs[static_cast<Eigen::Index>(a)] += p.coefficient(basis[a]);
    }
  }
  return {coeffs};
}

std::pair<Decomposition, TensorParams> random_real_start(const WaringSpec& spec,
                                                         std::uint64_t seed, double magnitude) {
  if (auto ok = is_admissible(spec); !ok) throw std::invalid_argument(ok.reason);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-magnitude, magnitude);
  const double weight_scale = magnitude * magnitude * magnitude;
  std::uniform_real_distribution<double> weight(-weight_scale, weight_scale);

  Decomposition dec;
  for (unsigned i = 0; i < spec.r; ++i) {
    Summand s{CVector(spec.n), 0.0};
    for (unsigned h = 0; h < spec.n; ++h) s.l[h] = coord(rng);
    s.lambda = weight(rng);
    dec.summands.push_back(std::move(s));
  }
  TensorParams params = tensor_from_decomposition(spec, dec);
  const PolySystem sys = build_system(spec);
  const NewtonResult polished = newton_refine(sys, params.coeffs, to_unknowns(dec), 1e-14, 1);
  return {from_unknowns(spec, polished.point), std::move(params)};
}

Decomposition parse_fixture(const std::string& json_text, const WaringSpec& spec) {
  const auto doc = nlohmann::json::parse(json_text);
  if (!doc.is_array()) throw std::invalid_argument("fixture must be a JSON array");
  if (doc.size() != spec.r) {
    throw std::invalid_argument("fixture has " + std::to_string(doc.size()) + " summands, expected " +
                                std::to_string(spec.r));
  }
  Decomposition dec;
  for (const auto& item : doc) {
    const auto& l = item.at("l");
    if (l.size() != spec.n) throw std::invalid_argument("fixture summand has wrong length");
    Summand s{CVector(spec.n), item.at("lambda").get<double>()};
    for (unsigned h = 0; h < spec.n; ++h) s.l[h] = l[h].get<double>();
    dec.summands.push_back(std::move(s));
  }
  return dec;
}

Decomposition load_fixture(const std::filesystem::path& path, const WaringSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fixture(buffer.str(), spec);
}

std::string dump_fixture(const Decomposition& dec) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Summand& s : dec.summands) {
    nlohmann::json l = nlohmann::json::array();
    for (Eigen::Index h = 0; h < s.l.size(); ++h) l.push_back(s.l[h].real());
    doc.push_back({{"l", l}, {"lambda", s.lambda.real()}});
  }
  return doc.dump(2);
}

std::vector<Decomposition> sylvester_oracle(const TensorParams& binary_form, unsigned r) {
  const auto count = binary_form.coeffs.size();
  if (count < 2) throw std::invalid_argument("binary form needs at least two coefficients");
  const unsigned d = static_cast<unsigned>(count - 1);
  if (r < 1 || d != 2 * r - 1) throw std::invalid_argument("sylvester_oracle needs d = 2r - 1");

  // a_k = c_k / C(d, k) are the moments sum_i lambda_i l_i^k.
  CVector moments(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    moments[k] = binary_form.coeffs[k] / static_cast<double>(binomial(d, static_cast<unsigned>(k)));
  }
  CMatrix hankel(d - r + 1, r + 1);
  for (Eigen::Index i = 0; i < hankel.rows(); ++i) {
    for (Eigen::Index j = 0; j < hankel.cols(); ++j) hankel(i, j) = moments[i + j];
  }
  if (numerical_rank(hankel, 1e-10) != static_cast<int>(r)) {
    throw NonGenericForm("catalecticant kernel is not one-dimensional");
  }
  const CVector g = kernel_vector(hankel);
  if (std::abs(g[r]) < 1e-10 * max_abs(g)) {
    throw NonGenericForm("apolar polynomial has a root outside the x0 = 1 chart");
  }

  CVector roots;
  if (r == 1) {
    roots = CVector::Constant(1, -g[0] / g[1]);
  } else {
    CMatrix companion = CMatrix::Zero(r, r);
    for (unsigned i = 1; i < r; ++i) companion(i, i - 1) = 1.0;
    for (unsigned i = 0; i < r; ++i) companion(i, r - 1) = -g[i] / g[r];
    Eigen::ComplexEigenSolver<CMatrix> eig(companion, false);
    roots = eig.eigenvalues();
  }
  for (unsigned i = 0; i < r; ++i) {
    for (unsigned j = i + 1; j < r; ++j) {
      if (std::abs(roots[i] - roots[j]) < 1e-8 * (1.0 + std::abs(roots[i]))) {
        throw NonGenericForm("apolar polynomial has a repeated root");
      }
    }
  }

  CMatrix vandermonde(count, r);
  for (Eigen::Index k = 0; k < count; ++k) {
    for (unsigned i = 0; i < r; ++i) vandermonde(k, i) = std::pow(roots[i], static_cast<int>(k));
  }
  const CVector weights = vandermonde.colPivHouseholderQr().solve(moments);
  const double misfit = max_abs(vandermonde * weights - moments);
  if (misfit > 1e-6 * (1.0 + max_abs(moments))) {
    throw NonGenericForm("recovered summands do not reproduce the form");
  }

  Decomposition dec;
  for (unsigned i = 0; i < r; ++i) dec.summands.push_back({CVector::Constant(1, roots[i]), weights[i]});
  return {dec};
}

}  // namespace realid
