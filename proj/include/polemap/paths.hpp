#pragma once

#include <vector>

#include "polemap/integrator.hpp"
#include "polemap/types.hpp"

namespace polemap {

/// Semicircular detours over real-axis poles.
struct VaultSpec {
  std::vector<double> poles;  // ascending positions on the real axis
  double radius = 0.3;
  int chords = 8;  // straight segments approximating each semicircle
  enum class Side { upper, lower };
  Side side = Side::upper;
};

/// Route 0 -> (offset + i*offset) -> (t_target + i*offset) -> t_target that
/// clears every real-axis pole in one sweep. A negative offset gives the
/// conjugate route.
PathSpec long_jump_path(double t_target, double offset);

/// Real-axis route from 0 to t_target with a polygonal semicircular hop over
/// each listed pole. Requires all poles inside (radius, t_target - radius)
/// and consecutive poles more than 2*radius apart.
PathSpec pole_vault_path(const VaultSpec& spec, double t_target);

/// Closed polygon inscribed in the circle of given radius about center,
/// traversed counterclockwise starting at angle start_angle (radians).
PathSpec circle_loop(Complex center, double radius, int chords,
                     double start_angle = 3.14159265358979323846);

struct LoopCheckResult {
  double return_error = 0.0;  // |final state - y0|
  IntegrationResult integration;
};

/// Integrates a closed loop and reports how far the final state lands from
/// the initial conditions. For a solution with no branch points inside the
/// loop this is bounded by integration error.
LoopCheckResult closed_loop_check(const OdeSystem& sys,
                                  const std::vector<Complex>& y0,
                                  const PathSpec& loop,
                                  const IntegrationOptions& opts);

}  // namespace polemap
