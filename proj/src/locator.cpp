#include "polemap/locator.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace polemap {

namespace {

constexpr double kConditionLimit = 1e12;

double confidence_from_residual(double residual) {
  const double c = -std::log10(std::max(residual, 1e-16)) / 16.0;
  return std::clamp(c, 0.0, 1.0);
}

SingularityEstimate rejected(const TruncatedSeries& s, double residual) {
  SingularityEstimate est;
  est.step_point = s.t0;
  est.residual = residual;
  est.confidence = 0.0;
  est.accepted = false;
  return est;
}

}  // namespace

SingularityEstimate fit_primary_singularity(const TruncatedSeries& s,
                                            int window,
                                            double accept_threshold) {
  const int p = s.order();
  if (window < 2)
    throw std::invalid_argument("fit_primary_singularity: window must be >= 2");
  if (p < window + 2)
    throw std::invalid_argument("fit_primary_singularity: order must be >= window + 2");

  const double inf = std::numeric_limits<double>::infinity();

  // Rows k = p-window .. p-1 of k*W[k+1] = (k-1)*W[k]*x1 + W[k]*x2,
  // with the 1-based W[k] stored at coeffs[k-1].
  Eigen::MatrixXcd A(window, 2);
  Eigen::VectorXcd b(window);
  for (int row = 0; row < window; ++row) {
    const int k = p - window + row;
    const Complex wk = s.coeffs[k - 1];
    const Complex wk1 = s.coeffs[k];
    if (!is_finite(wk) || !is_finite(wk1))
      return rejected(s, inf);
    A(row, 0) = static_cast<double>(k - 1) * wk;
    A(row, 1) = wk;
    b(row) = static_cast<double>(k) * wk1;
  }

  const double bnorm = b.norm();
  if (bnorm == 0.0)
    return rejected(s, inf);  // polynomial tail, nothing to locate

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double sv_max = svd.singularValues()(0);
  const double sv_min = svd.singularValues()(1);
  if (!(sv_min > 0.0) || sv_max / sv_min > kConditionLimit)
    return rejected(s, inf);

  const Eigen::Vector2cd x = svd.solve(b);
  const double residual = (A * x - b).norm() / bnorm;

  const Complex x1 = x(0);
  const Complex x2 = x(1);
  if (std::abs(x1) == 0.0)
    return rejected(s, residual);  // singularity at infinity

  SingularityEstimate est;
  est.step_point = s.t0;
  est.order_s = x2 / x1;
  est.location = s.t0 + 1.0 / x1;
  est.residual = residual;
  est.confidence = confidence_from_residual(residual);
  est.accepted = residual <= accept_threshold && is_finite(est.location) &&
                 is_finite(est.order_s);
  return est;
}

namespace {

void fold_into(Singularity& entry, const Singularity& other) {
  const double w = entry.weight + other.weight;
  entry.location = (entry.weight * entry.location + other.weight * other.location) / w;
  entry.order = (entry.weight * entry.order + other.weight * other.order) / w;
  entry.weight = w;
  entry.support_count += other.support_count;
  entry.confidence = entry.weight / entry.support_count;
  entry.confirmed = entry.support_count >= 2;
  entry.sources.insert(entry.sources.end(), other.sources.begin(), other.sources.end());
}

int nearest_entry(const std::vector<Singularity>& registry, Complex loc, double* dist) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < registry.size(); ++i) {
    const double d = std::abs(registry[i].location - loc);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  *dist = best_d;
  return best;
}

// Collapse registry entries that have drifted within merge_tol of each other.
void compact(std::vector<Singularity>& registry, double merge_tol) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < registry.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < registry.size() && !changed; ++j) {
        if (std::abs(registry[i].location - registry[j].location) <= merge_tol) {
          fold_into(registry[i], registry[j]);
          registry.erase(registry.begin() + static_cast<long>(j));
          changed = true;
        }
      }
    }
  }
}

}  // namespace

MergeSummary merge_estimates(std::vector<Singularity>& registry,
                             const std::vector<SingularityEstimate>& estimates,
                             double merge_tol,
                             const std::string& campaign_id) {
  if (!(merge_tol > 0.0))
    throw std::invalid_argument("merge_estimates: merge_tol must be positive");

  MergeSummary summary;
  for (const auto& est : estimates) {
    if (!est.accepted) {
      ++summary.rejected;
      continue;
    }
    Singularity incoming;
    incoming.location = est.location;
    incoming.order = est.order_s.real();
    incoming.weight = std::max(est.confidence, 1e-6);
    incoming.confidence = incoming.weight;
    incoming.support_count = 1;
    incoming.confirmed = false;
    incoming.sources.emplace_back(campaign_id, est.step_index);

    double dist = 0.0;
    const int idx = nearest_entry(registry, est.location, &dist);
    if (idx >= 0 && dist <= merge_tol) {
      fold_into(registry[static_cast<std::size_t>(idx)], incoming);
      ++summary.merged;
    } else {
      registry.push_back(std::move(incoming));
      ++summary.added;
    }
  }
  compact(registry, merge_tol);
  return summary;
}

}  // namespace polemap
