#pragma once

#include <cstddef>
#include <string_view>

#include "realid/poly.hpp"

namespace realid {

/// Step-control and tolerance knobs for path tracking.
struct TrackSettings {
  double initial_step = 0.05;
  double min_step = 1e-12;
  double max_step = 0.1;
  /// Convergence target for corrector updates and endpoint backward error.
  double corrector_tol = 1e-10;
  std::size_t max_corrector_iters = 4;
  std::size_t max_steps = 10000;
  double divergence_norm = 1e8;

  /// Throws std::invalid_argument unless 0 < min <= initial <= max < 1 and
  /// the tolerances are positive.
  void validate() const;
};

/// Parameter path between two parameter tuples of a shared system.
///
/// The path is p(t) = p0 + s(t) (p1 - p0) with s(t) = t + (gamma - 1) t (1 - t),
/// a complex arc from 0 to 1 inside the complex line through p0 and p1. For
/// gamma = 1 this is the straight segment; a non-real unit gamma bends the
/// path off the real line so that segments between real tuples avoid real
/// branch points. Conjugating gamma conjugates the path when p0, p1 are real.
class SegmentHomotopy {
 public:
  SegmentHomotopy(const PolySystem& system, CVector params_start, CVector params_end,
                  Complex gamma = 1.0);

  const PolySystem& system() const { return *system_; }
  const CVector& params_start() const { return start_; }
  const CVector& params_end() const { return end_; }
  Complex gamma() const { return gamma_; }

  CVector params_at(double t) const;
  /// d p / d t along the path.
  CVector params_velocity(double t) const;

 private:
  const PolySystem* system_;
  CVector start_;
  CVector end_;
  Complex gamma_;
};

enum class PathStatus { Success, Diverged, Singular, StepLimitReached };

std::string_view to_string(PathStatus status);

struct PathResult {
  PathStatus status = PathStatus::StepLimitReached;
  /// Final point; for failed paths the last accepted point.
  CVector endpoint;
  /// Backward error of the endpoint at the reached parameter.
  double final_residual = 0.0;
  std::size_t steps_taken = 0;
  /// Path parameter reached (1 on success).
  double t_reached = 0.0;
};

/// Follows the solution `start` of the system at t = 0 to t = 1.
///
/// Euler predictor on the Davidenko equation, Newton corrector at fixed t.
/// The step doubles after three consecutive accepted steps and halves on
/// corrector failure; falling below min_step reports Singular.
PathResult track(const SegmentHomotopy& h, const CVector& start, const TrackSettings& settings);

struct NewtonResult {
  CVector point;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Set when the Jacobian became numerically singular.
  bool singular = false;
};

/// Plain Newton iteration at fixed parameters. Stops as soon as the backward
/// error drops to tol; returns the best point seen otherwise.
NewtonResult newton_refine(const PolySystem& sys, const CVector& params, const CVector& point,
                           double tol, std::size_t max_iters);

/// Mixed-precision Newton: residuals in extended precision, corrections in
/// double. Runs until the update stops shrinking or max_iters is hit, which
/// brings the forward error close to the double-precision floor even for
/// Jacobians with condition numbers around 1e9.
NewtonResult polish(const PolySystem& sys, const CVector& params, const CVector& point,
                    std::size_t max_iters = 8);

}  // namespace realid
