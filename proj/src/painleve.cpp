#include "polemap/painleve.hpp"

namespace polemap {

OdeSystem painleve1() {
  OdeSystem sys;
  sys.dim = 2;
  sys.label = "painleve1";
  sys.rhs = [](int k, const std::vector<TruncatedSeries>& y,
               const TruncatedSeries& t_series) {
    Eigen::VectorXcd d(2);
    d[0] = y[1].coeffs[k];
    d[1] = 6.0 * cauchy_coeff(y[0].coeffs, y[0].coeffs, k) + t_series.coeffs[k];
    return d;
  };
  return sys;
}

OdeSystem named_system(const std::string& name) {
  if (name == "painleve1")
    return painleve1();
  throw std::invalid_argument("unknown system: " + name);
}

}  // namespace polemap
