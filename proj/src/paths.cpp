#include "polemap/paths.hpp"

#include <cmath>

namespace polemap {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PathSpec long_jump_path(double t_target, double offset) {
  if (!(t_target > 0.0))
    throw std::invalid_argument("long_jump_path: t_target must be positive");
  if (offset == 0.0)
    throw std::invalid_argument("long_jump_path: offset must be nonzero");
  PathSpec path;
  path.vertices = {Complex{0.0, 0.0},
                   Complex{std::abs(offset), offset},
                   Complex{t_target, offset},
                   Complex{t_target, 0.0}};
  path.validate();
  return path;
}

PathSpec pole_vault_path(const VaultSpec& spec, double t_target) {
  if (!(spec.radius > 0.0))
    throw std::invalid_argument("pole_vault_path: radius must be positive");
  if (spec.chords < 4)
    throw std::invalid_argument("pole_vault_path: need at least 4 chords");
  // A vault whose full semicircle would leave (0, t_target) is shrunk to fit,
  // so a target just past the last pole remains reachable.
  std::vector<double> radii(spec.poles.size(), spec.radius);
  for (std::size_t i = 0; i < spec.poles.size(); ++i) {
    const double x = spec.poles[i];
    if (!(x > 0.0) || !(x < t_target))
      throw std::invalid_argument("pole_vault_path: pole outside (0, t_target)");
    radii[i] = std::min({radii[i], 0.999 * x, 0.999 * (t_target - x)});
    if (i > 0 && !(x - spec.poles[i - 1] > radii[i] + radii[i - 1]))
      throw std::invalid_argument("pole_vault_path: overlapping vaults");
  }

  const double sign = spec.side == VaultSpec::Side::upper ? 1.0 : -1.0;
  PathSpec path;
  path.vertices.push_back(Complex{0.0, 0.0});
  for (std::size_t i = 0; i < spec.poles.size(); ++i) {
    const double pole = spec.poles[i];
    const double r = radii[i];
    path.vertices.push_back(Complex{pole - r, 0.0});
    for (int j = 1; j < spec.chords; ++j) {
      const double theta = kPi * (1.0 - static_cast<double>(j) / spec.chords);
      path.vertices.push_back(
          Complex{pole + r * std::cos(theta), sign * r * std::sin(theta)});
    }
    path.vertices.push_back(Complex{pole + r, 0.0});
  }
  path.vertices.push_back(Complex{t_target, 0.0});
  path.validate();
  return path;
}

PathSpec circle_loop(Complex center, double radius, int chords, double start_angle) {
  if (!(radius > 0.0))
    throw std::invalid_argument("circle_loop: radius must be positive");
  if (chords < 3)
    throw std::invalid_argument("circle_loop: need at least 3 chords");
  PathSpec path;
  for (int j = 0; j <= chords; ++j) {
    const double theta = start_angle + 2.0 * kPi * j / chords;
    path.vertices.push_back(center + radius * Complex{std::cos(theta), std::sin(theta)});
  }
  path.vertices.back() = path.vertices.front();  // close exactly
  path.validate();
  return path;
}

LoopCheckResult closed_loop_check(const OdeSystem& sys,
                                  const std::vector<Complex>& y0,
                                  const PathSpec& loop,
                                  const IntegrationOptions& opts) {
  if (!loop.closed())
    throw std::invalid_argument("closed_loop_check: path is not closed");

  LoopCheckResult out;
  out.integration = integrate_path(sys, y0, loop, opts);
  double err2 = 0.0;
  const auto& yf = out.integration.records.back().y;
  for (std::size_t i = 0; i < y0.size(); ++i)
    err2 += std::norm(yf[i] - y0[i]);
  out.return_error = std::sqrt(err2);
  return out;
}

}  // namespace polemap
