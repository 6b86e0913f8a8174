#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polemap/locator.hpp"
#include "polemap/taylor.hpp"
#include "polemap/types.hpp"

namespace polemap {

struct StepRecord {
  int index = 0;
  Complex t;
  std::vector<Complex> y;
  double h_taken = 0.0;  // step length leading into this record
  std::optional<SingularityEstimate> estimate;
  std::vector<TruncatedSeries> series;  // populated when keep_series is set
};

enum class IntegrationStatus {
  ok,
  min_step_underflow,   // path passes too near a singularity
  max_steps_exceeded,
  series_overflow,      // expansion at or on top of a singularity
};

/// Outcome of a segment or path integration. On failure the records and
/// estimates gathered so far are still populated.
struct IntegrationResult {
  IntegrationStatus status = IntegrationStatus::ok;
  std::string message;
  std::vector<StepRecord> records;
  std::vector<SingularityEstimate> estimates;

  bool ok() const { return status == IntegrationStatus::ok; }
  const std::vector<Complex>& final_state() const { return records.back().y; }
};

/// Error-controlled step length from the series tail: with
/// tol = abs_tol + rel_tol * max_i |y_i| the step is
/// h = safety * min over components and k in {p-1, p} of (tol/|c_k|)^(1/k),
/// clamped to the remaining segment length. Zero tail coefficients are
/// skipped; an all-zero tail steps straight to the segment end.
/// Throws StepUnderflowError when the computed step falls below min_step.
double step_size(const std::vector<TruncatedSeries>& series,
                 const IntegrationOptions& opts,
                 double remaining);

/// Taylor stepping along the straight segment t_start -> t_end. Every
/// expansion step also runs the singularity fit; the estimate (accepted or
/// not) is attached to the step's record and collected in the result.
IntegrationResult integrate_segment(const OdeSystem& sys,
                                    const std::vector<Complex>& y0,
                                    Complex t_start,
                                    Complex t_end,
                                    const IntegrationOptions& opts);

/// Multi-segment wrapper: integrates each leg of the path from the previous
/// leg's final state, concatenating records under global indices.
IntegrationResult integrate_path(const OdeSystem& sys,
                                 const std::vector<Complex>& y0,
                                 const PathSpec& path,
                                 const IntegrationOptions& opts);

}  // namespace polemap
