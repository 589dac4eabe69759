#include "realid/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "realid/linalg.hpp"

namespace realid {

void TrackSettings::validate() const {
  if (!(0.0 < min_step && min_step <= initial_step && initial_step <= max_step && max_step < 1.0)) {
    throw std::invalid_argument("track settings need 0 < min_step <= initial_step <= max_step < 1");
  }
  if (!(corrector_tol > 0.0) || !(divergence_norm > 0.0) || max_corrector_iters == 0 ||
      max_steps == 0) {
    throw std::invalid_argument("track settings need positive tolerances and iteration limits");
  }
}

SegmentHomotopy::SegmentHomotopy(const PolySystem& system, CVector params_start,
                                 CVector params_end, Complex gamma)
    : system_(&system), start_(std::move(params_start)), end_(std::move(params_end)), gamma_(gamma) {
  if (static_cast<std::size_t>(start_.size()) != system.num_params() ||
      static_cast<std::size_t>(end_.size()) != system.num_params()) {
    throw DimensionError("segment endpoints do not match the system's parameter count");
  }
  if (std::abs(std::abs(gamma_) - 1.0) > 1e-12) {
    throw std::invalid_argument("gamma must have unit modulus");
  }
}

CVector SegmentHomotopy::params_at(double t) const {
  if (t == 0.0) return start_;
  if (t == 1.0) return end_;
  const Complex s = t + (gamma_ - 1.0) * t * (1.0 - t);
  return start_ + s * (end_ - start_);
}

CVector SegmentHomotopy::params_velocity(double t) const {
  const Complex ds = 1.0 + (gamma_ - 1.0) * (1.0 - 2.0 * t);
  return ds * (end_ - start_);
}

std::string_view to_string(PathStatus status) {
  switch (status) {
    case PathStatus::Success: return "success";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::Singular: return "singular";
    case PathStatus::StepLimitReached: return "step_limit";
  }
  return "unknown";
}

namespace {

enum class CorrectorOutcome { Converged, Failed, SingularJacobian };

// Newton at fixed parameters. Converged once an update has been taken and the
// backward error is below tol; successive updates must contract, which keeps
// the corrector from hopping onto a neighbouring branch.
CorrectorOutcome correct(const PolySystem& sys, const CVector& params, CVector& x,
                         const TrackSettings& settings) {
  CVector values;
  CMatrix jac;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < settings.max_corrector_iters; ++it) {
    sys.evaluate_all(x, params, values, jac, nullptr);
    auto solved = lu_solve(jac, values);
    if (!solved) return CorrectorOutcome::SingularJacobian;
    const double update = max_abs(solved->solution);
    if (it > 0 && update > 0.5 * previous) return CorrectorOutcome::Failed;
    x -= solved->solution;
    if (!x.allFinite()) return CorrectorOutcome::Failed;
    if (sys.residual(x, params) <= settings.corrector_tol) return CorrectorOutcome::Converged;
    previous = update;
  }
  return CorrectorOutcome::Failed;
}

}  // namespace

PathResult track(const SegmentHomotopy& h, const CVector& start, const TrackSettings& settings) {
  settings.validate();
  const PolySystem& sys = h.system();
  if (static_cast<std::size_t>(start.size()) != sys.num_unknowns()) {
    throw DimensionError("start point does not match the system's unknown count");
  }
  if (!sys.is_square()) throw DimensionError("tracking requires a square system");

  PathResult result;
  CVector x = start;
  double t = 0.0;
  double step = settings.initial_step;
  int streak = 0;
  CVector values;
  CMatrix jac_x;
  CMatrix jac_p;

  auto finish = [&](PathStatus status) {
    result.status = status;
    result.endpoint = x;
    result.t_reached = t;
    result.final_residual = sys.residual(x, h.params_at(t));
    return result;
  };

  while (t < 1.0) {
    if (result.steps_taken >= settings.max_steps) return finish(PathStatus::StepLimitReached);
    step = std::min(step, 1.0 - t);

    // Davidenko: J_x dx/dt = -J_p dp/dt.
    sys.evaluate_all(x, h.params_at(t), values, jac_x, &jac_p);
    auto tangent = lu_solve(jac_x, -(jac_p * h.params_velocity(t)));
    if (!tangent) return finish(PathStatus::Singular);

    const double t_next = (1.0 - t - step) < 1e-15 ? 1.0 : t + step;
    CVector candidate = x + (t_next - t) * tangent->solution;
    const auto outcome = correct(sys, h.params_at(t_next), candidate, settings);
    if (outcome == CorrectorOutcome::Converged) {
      x = std::move(candidate);
      t = t_next;
      ++result.steps_taken;
      if (max_abs(x) > settings.divergence_norm) return finish(PathStatus::Diverged);
      if (++streak == 3) {
        step = std::min(2.0 * step, settings.max_step);
        streak = 0;
      }
    } else {
      streak = 0;
      step *= 0.5;
      if (step < settings.min_step) return finish(PathStatus::Singular);
    }
  }

  const CVector target = h.params_at(1.0);
  const NewtonResult polished = polish(sys, target, x);
  if (!polished.singular && polished.residual <= sys.residual(x, target)) x = polished.point;
  result = finish(PathStatus::Success);
  if (!(result.final_residual < settings.corrector_tol)) result.status = PathStatus::Singular;
  return result;
}

NewtonResult newton_refine(const PolySystem& sys, const CVector& params, const CVector& point,
                           double tol, std::size_t max_iters) {
  NewtonResult out;
  out.point = point;
  out.residual = sys.residual(point, params);
  CVector x = point;
  CVector values;
  CMatrix jac;
  for (std::size_t it = 0; it < max_iters && out.residual > tol; ++it) {
    sys.evaluate_all(x, params, values, jac, nullptr);
    auto solved = lu_solve(jac, values);
    if (!solved) {
      out.singular = true;
      break;
    }
    x -= solved->solution;
    if (!x.allFinite()) break;
    ++out.iterations;
    const double r = sys.residual(x, params);
    if (r < out.residual) {
      out.residual = r;
      out.point = x;
    }
  }
  out.converged = out.residual <= tol;
  return out;
}

NewtonResult polish(const PolySystem& sys, const CVector& params, const CVector& point,
                    std::size_t max_iters) {
  NewtonResult out;
  out.point = point;
  CVector x = point;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iters; ++it) {
    const CVector values = sys.evaluate_extended(x, params);
    auto solved = lu_solve(sys.jacobian(x, params), values);
    if (!solved) {
      out.singular = true;
      break;
    }
    const double update = max_abs(solved->solution);
    if (update >= previous) break;
    x -= solved->solution;
    if (!x.allFinite()) break;
    ++out.iterations;
    out.point = x;
    previous = update;
    if (update <= 1e-15 * (1.0 + max_abs(x))) break;
  }
  out.residual = sys.residual(out.point, params);
  out.converged = !out.singular;
  return out;
}

}  // namespace realid
