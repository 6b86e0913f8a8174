#pragma once

#include <iosfwd>

#include "polemap/integrator.hpp"

namespace polemap {

/// index, t, per-component state, step length. Deterministic %.17g formatting.
void write_steps_csv(std::ostream& os, const IntegrationResult& result);

/// One row per expansion step: fitted location, order, residual, confidence.
void write_estimates_csv(std::ostream& os, const IntegrationResult& result);

/// Fixed-point step table in the style
///  Step      Complex time t                      y                     y'
void print_step_table(std::ostream& os, const IntegrationResult& result);

}  // namespace polemap
