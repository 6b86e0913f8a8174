#include "polemap/integrator.hpp"

#include <cmath>
#include <limits>

namespace polemap {

double step_size(const std::vector<TruncatedSeries>& series,
                 const IntegrationOptions& opts,
                 double remaining) {
  if (!(remaining > 0.0))
    throw std::invalid_argument("step_size: remaining must be positive");

  double ymax = 0.0;
  for (const auto& s : series)
    ymax = std::max(ymax, std::abs(s.coeffs[0]));
  const double tol = opts.abs_tol + opts.rel_tol * ymax;

  double h = std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    const int p = s.order();
    for (int k = p - 1; k <= p; ++k) {
      const double mag = std::abs(s.coeffs[k]);
      if (mag > 0.0)
        h = std::min(h, std::pow(tol / mag, 1.0 / k));
    }
  }
  if (!std::isfinite(h))
    return remaining;  // polynomial tail: no truncation error on this segment

  h *= opts.safety;
  if (h >= remaining)
    return remaining;
  if (h < opts.min_step)
    throw StepUnderflowError("step_size: step " + std::to_string(h) +
                             " below min_step (path too near a singularity)");
  return h;
}

namespace {

// Core segment loop. `index0` offsets record indices and `budget` bounds the
// number of steps so multi-segment paths share one global limit.
IntegrationResult run_segment(const OdeSystem& sys,
                              const std::vector<Complex>& y0,
                              Complex t_start,
                              Complex t_end,
                              const IntegrationOptions& opts,
                              int index0,
                              int budget) {
  IntegrationResult res;
  const double length = std::abs(t_end - t_start);
  const Complex dir = (t_end - t_start) / length;

  res.records.push_back({index0, t_start, y0, 0.0, std::nullopt, {}});

  std::vector<Complex> y = y0;
  double arc = 0.0;
  int steps = 0;
  while (arc < length) {
    if (steps >= budget) {
      res.status = IntegrationStatus::max_steps_exceeded;
      res.message = "max_steps exceeded";
      return res;
    }
    const Complex t = res.records.back().t;

    std::vector<TruncatedSeries> series;
    try {
      series = generate_solution_series(sys, t, y, opts.ts_order);
    } catch (const SeriesOverflowError& e) {
      res.status = IntegrationStatus::series_overflow;
      res.message = e.what();
      return res;
    }

    SingularityEstimate est =
        fit_primary_singularity(series[0], opts.window, opts.accept_threshold);
    est.step_index = res.records.back().index;
    res.records.back().estimate = est;
    res.estimates.push_back(est);
    if (opts.keep_series)
      res.records.back().series = series;

    double h = 0.0;
    try {
      h = step_size(series, opts, length - arc);
    } catch (const StepUnderflowError& e) {
      res.status = IntegrationStatus::min_step_underflow;
      res.message = e.what();
      return res;
    }

    const Complex hc = dir * h;
    bool finite = true;
    for (int i = 0; i < sys.dim; ++i) {
      y[static_cast<std::size_t>(i)] = eval_series(series[static_cast<std::size_t>(i)], hc);
      finite = finite && is_finite(y[static_cast<std::size_t>(i)]);
    }
    if (!finite) {
      res.status = IntegrationStatus::series_overflow;
      res.message = "non-finite state after step";
      return res;
    }

    arc += h;
    if (arc >= length * (1.0 - 1e-15))
      arc = length;
    // Land exactly on the endpoint so multi-segment joins introduce no drift.
    const Complex t_next = (arc == length) ? t_end : t_start + dir * arc;
    ++steps;
    res.records.push_back({index0 + steps, t_next, y, h, std::nullopt, {}});
  }
  return res;
}

}  // namespace

IntegrationResult integrate_segment(const OdeSystem& sys,
                                    const std::vector<Complex>& y0,
                                    Complex t_start,
                                    Complex t_end,
                                    const IntegrationOptions& opts) {
  opts.validate();
  if (t_start == t_end)
    throw std::invalid_argument("integrate_segment: t_start == t_end");
  if (static_cast<int>(y0.size()) != sys.dim)
    throw std::invalid_argument("integrate_segment: y0 size != system dim");
  return run_segment(sys, y0, t_start, t_end, opts, 0, opts.max_steps);
}

IntegrationResult integrate_path(const OdeSystem& sys,
                                 const std::vector<Complex>& y0,
                                 const PathSpec& path,
                                 const IntegrationOptions& opts) {
  opts.validate();
  path.validate();
  if (static_cast<int>(y0.size()) != sys.dim)
    throw std::invalid_argument("integrate_path: y0 size != system dim");

  IntegrationResult res;
  std::vector<Complex> y = y0;
  for (std::size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
    const int index0 = res.records.empty() ? 0 : res.records.back().index;
    const int budget = opts.max_steps - index0;
    IntegrationResult part = run_segment(sys, y, path.vertices[seg],
                                         path.vertices[seg + 1], opts, index0, budget);

    if (res.records.empty()) {
      res.records = std::move(part.records);
    } else {
      // The first record of this leg coincides with the previous leg's final
      // record; fold its estimate/series into that record instead of
      // duplicating the point.
      StepRecord& join = res.records.back();
      join.estimate = part.records.front().estimate;
      join.series = std::move(part.records.front().series);
      res.records.insert(res.records.end(),
                         std::make_move_iterator(part.records.begin() + 1),
                         std::make_move_iterator(part.records.end()));
    }
    res.estimates.insert(res.estimates.end(), part.estimates.begin(),
                         part.estimates.end());

    if (!part.ok()) {
      res.status = part.status;
      res.message = part.message;
      return res;
    }
    y = res.records.back().y;
  }
  return res;
}

}  // namespace polemap
