#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "polemap/types.hpp"

namespace polemap {

/// Truncated Taylor expansion of one scalar quantity at t0.
/// coeffs[k] multiplies h^k with h = t - t0.
struct TruncatedSeries {
  Complex t0;
  Eigen::VectorXcd coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// k-th coefficient of the truncated Cauchy product of two coefficient
/// vectors. Terms are paired symmetrically so the result is exactly
/// invariant under swapping a and b.
Complex cauchy_coeff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, int k);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& s, Complex c);

/// Horner evaluation of the series at displacement h from t0.
Complex eval_series(const TruncatedSeries& s, Complex h);

/// Per-coefficient recurrence rule for a first-order ODE system y' = f(t, y).
/// Given the state series (coefficients 0..k valid for every component) and
/// the series of the independent variable, returns the k-th coefficient of
/// each derivative component. Must be pure.
using RhsRule = std::function<Eigen::VectorXcd(
    int k, const std::vector<TruncatedSeries>& y, const TruncatedSeries& t_series)>;

struct OdeSystem {
  int dim = 1;
  std::string label;
  RhsRule rhs;
};

/// Builds the order-p solution series of all components at t0 from the
/// initial state, driving the recurrence coeffs[k+1] = d[k] / (k+1).
/// Throws SeriesOverflowError if a coefficient comes out non-finite.
std::vector<TruncatedSeries> generate_solution_series(const OdeSystem& sys,
                                                      Complex t0,
                                                      const std::vector<Complex>& y0,
                                                      int p);

}  // namespace polemap
