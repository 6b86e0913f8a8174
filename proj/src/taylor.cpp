#include "polemap/taylor.hpp"

#include <cmath>

namespace polemap {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.t0 != b.t0)
    throw std::invalid_argument("series: mismatched expansion points");
  if (a.coeffs.size() != b.coeffs.size())
    throw std::invalid_argument("series: mismatched orders");
}

}  // namespace

Complex cauchy_coeff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, int k) {
  Complex sum{0.0, 0.0};
  for (int j = 0; 2 * j < k; ++j)
    sum += a[j] * b[k - j] + a[k - j] * b[j];
  if (k % 2 == 0)
    sum += a[k / 2] * b[k / 2];
  return sum;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  return {a.t0, a.coeffs + b.coeffs};
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  Eigen::VectorXcd out(a.coeffs.size());
  for (int k = 0; k < a.coeffs.size(); ++k)
    out[k] = cauchy_coeff(a.coeffs, b.coeffs, k);
  return {a.t0, std::move(out)};
}

TruncatedSeries series_scale(const TruncatedSeries& s, Complex c) {
  return {s.t0, s.coeffs * c};
}

Complex eval_series(const TruncatedSeries& s, Complex h) {
  Complex acc = s.coeffs[s.coeffs.size() - 1];
  for (int k = static_cast<int>(s.coeffs.size()) - 2; k >= 0; --k)
    acc = acc * h + s.coeffs[k];
  return acc;
}

std::vector<TruncatedSeries> generate_solution_series(const OdeSystem& sys,
                                                      Complex t0,
                                                      const std::vector<Complex>& y0,
                                                      int p) {
  if (static_cast<int>(y0.size()) != sys.dim)
    throw std::invalid_argument("generate_solution_series: y0 size != system dim");
  if (p < 2)
    throw std::invalid_argument("generate_solution_series: order must be >= 2");

  std::vector<TruncatedSeries> y(sys.dim);
  for (int i = 0; i < sys.dim; ++i) {
    y[i].t0 = t0;
    y[i].coeffs = Eigen::VectorXcd::Zero(p + 1);
    y[i].coeffs[0] = y0[i];
  }
  TruncatedSeries t_series{t0, Eigen::VectorXcd::Zero(p + 1)};
  t_series.coeffs[0] = t0;
  t_series.coeffs[1] = Complex{1.0, 0.0};

  for (int k = 0; k < p; ++k) {
    const Eigen::VectorXcd d = sys.rhs(k, y, t_series);
    for (int i = 0; i < sys.dim; ++i) {
      const Complex c = d[i] / static_cast<double>(k + 1);
      if (!is_finite(c))
        throw SeriesOverflowError("generate_solution_series: non-finite coefficient at k=" +
                                  std::to_string(k + 1));
      y[i].coeffs[k + 1] = c;
    }
  }
  return y;
}

}  // namespace polemap
