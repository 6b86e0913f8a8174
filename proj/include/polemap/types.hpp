#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polemap {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Raised when series generation or evaluation produces a non-finite
/// coefficient, i.e. the expansion point is at or too near a singularity.
class SeriesOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the error-controlled step drops below the minimum step length.
class StepUnderflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int ts_order = 45;          // Taylor series order p
  int window = 6;             // equations in the singularity fit
  double accept_threshold = 1e-10;
  double merge_tol = 1e-3;    // absolute distance in the t-plane
  double safety = 0.9;
  int max_steps = 10000;
  double min_step = 1e-12;
  bool keep_series = false;   // retain per-step series for dense output

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("IntegrationOptions: tolerances must be positive");
    if (!(safety > 0.0 && safety < 1.0))
      throw std::invalid_argument("IntegrationOptions: safety must be in (0,1)");
    if (window < 2)
      throw std::invalid_argument("IntegrationOptions: window must be >= 2");
    if (ts_order < window + 2)
      throw std::invalid_argument("IntegrationOptions: ts_order must be >= window + 2");
    if (!(accept_threshold > 0.0) || !(merge_tol > 0.0))
      throw std::invalid_argument("IntegrationOptions: thresholds must be positive");
    if (max_steps < 1 || !(min_step > 0.0))
      throw std::invalid_argument("IntegrationOptions: bad step limits");
  }
};

/// Piecewise-linear route in the complex t-plane.
struct PathSpec {
  std::vector<Complex> vertices;

  void validate() const {
    if (vertices.size() < 2)
      throw std::invalid_argument("PathSpec: need at least 2 vertices");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (vertices[i] == vertices[i - 1])
        throw std::invalid_argument("PathSpec: consecutive vertices must be distinct");
      if (!is_finite(vertices[i]) || !is_finite(vertices[i - 1]))
        throw std::invalid_argument("PathSpec: vertices must be finite");
    }
  }

  bool closed() const {
    return vertices.size() >= 3 && vertices.front() == vertices.back();
  }

  double length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i)
      len += std::abs(vertices[i] - vertices[i - 1]);
    return len;
  }
};

}  // namespace polemap
