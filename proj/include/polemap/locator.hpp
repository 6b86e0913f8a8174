#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polemap/taylor.hpp"
#include "polemap/types.hpp"

namespace polemap {

/// One step's fit of the series tail to the single-pole model (a - t)^{-s}.
struct SingularityEstimate {
  Complex location;    // absolute position in the t-plane (t0 + a)
  Complex order_s;     // fitted order; physical part is Re(order_s)
  double residual = 0.0;
  double confidence = 0.0;
  Complex step_point;  // expansion point of the fitted series
  int step_index = -1;
  bool accepted = false;
};

/// Deduplicated, cross-step singularity entry.
struct Singularity {
  Complex location;
  double order = 0.0;
  double confidence = 0.0;  // mean confidence of supporting estimates
  int support_count = 0;
  bool confirmed = false;   // support_count >= 2
  double weight = 0.0;      // accumulated confidence, drives the centroid
  std::vector<std::pair<std::string, int>> sources;  // (campaign id, step index)
};

struct MergeSummary {
  int added = 0;
  int merged = 0;
  int rejected = 0;
};

/// Fits the tail of s to the model w(t) = (a - t)^{-s}.
///
/// With coeffs[0..p] storing the coefficients of h^0..h^p, the model's
/// recurrence k*W[k+1] = (k-1)*W[k]*x1 + W[k]*x2 (1-based W, so W[k] is
/// coeffs[k-1]) is assembled for k = p-window, ..., p-1, giving `window`
/// equations in (x1, x2). The least-squares solution yields a = 1/x1,
/// s = x2/x1 and a relative residual |A x - b| / |b|.
///
/// An estimate is accepted only when the residual is at or below the
/// threshold and the system is well-conditioned (singular value ratio
/// below 1e12). A vanishing x1 (singularity at infinity) or a degenerate
/// tail yields a rejected estimate, never an exception.
SingularityEstimate fit_primary_singularity(const TruncatedSeries& s,
                                            int window = 6,
                                            double accept_threshold = 1e-10);

/// Merges accepted estimates into a singularity registry. Estimates within
/// merge_tol of an existing entry (or of each other) collapse into one entry
/// whose location and order are confidence-weighted centroids. An entry is
/// confirmed once supported by at least two estimates.
MergeSummary merge_estimates(std::vector<Singularity>& registry,
                             const std::vector<SingularityEstimate>& estimates,
                             double merge_tol,
                             const std::string& campaign_id = {});

}  // namespace polemap
