#pragma once

#include <random>

#include "polemap/taylor.hpp"

namespace polemap::testing {

inline OdeSystem linear_growth() {
  OdeSystem sys;
  sys.dim = 1;
  sys.label = "y'=y";
  sys.rhs = [](int k, const std::vector<TruncatedSeries>& y, const TruncatedSeries&) {
    Eigen::VectorXcd d(1);
    d[0] = y[0].coeffs[k];
    return d;
  };
  return sys;
}

inline OdeSystem zero_rhs(int dim) {
  OdeSystem sys;
  sys.dim = dim;
  sys.label = "y'=0";
  sys.rhs = [dim](int, const std::vector<TruncatedSeries>&, const TruncatedSeries&) {
    return Eigen::VectorXcd::Zero(dim).eval();
  };
  return sys;
}

/// Closed-form Taylor coefficients of the pole model w(t) = (a - t)^{-s}
/// expanded at t0: c_k = a'^{-s} * prod_{j=1..k} (s + j - 1) / (j * a')
/// with a' = a - t0 (the binomial series of (1 - h/a')^{-s} scaled by a'^{-s}).
inline TruncatedSeries pole_model_series(Complex a, Complex s, Complex t0, int p) {
  const Complex ap = a - t0;
  TruncatedSeries out{t0, Eigen::VectorXcd::Zero(p + 1)};
  Complex c = std::pow(ap, -s);
  out.coeffs[0] = c;
  for (int k = 1; k <= p; ++k) {
    c *= (s + static_cast<double>(k - 1)) / (static_cast<double>(k) * ap);
    out.coeffs[k] = c;
  }
  return out;
}

/// Exact coefficients of 2 / (1 + t^2) at t0 = 0: 2, 0, -2, 0, 2, ...
/// Two equidistant singularities at +-i.
inline TruncatedSeries equidistant_pair_series(int p, Complex scale = {1.0, 0.0}) {
  TruncatedSeries out{{0.0, 0.0}, Eigen::VectorXcd::Zero(p + 1)};
  for (int k = 0; k <= p; k += 2)
    out.coeffs[k] = scale * (k % 4 == 0 ? 2.0 : -2.0);
  return out;
}

inline Complex random_unit(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const double a = angle(rng);
  return {std::cos(a), std::sin(a)};
}

}  // namespace polemap::testing
