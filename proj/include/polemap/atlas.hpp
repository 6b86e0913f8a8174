#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polemap/integrator.hpp"
#include "polemap/locator.hpp"
#include "polemap/types.hpp"

namespace polemap {

/// Provenance of one mapping run.
struct CampaignInfo {
  std::string id;
  std::string problem;  // system label + initial conditions, free-form
  PathSpec path;
  IntegrationOptions options;
  int step_count = 0;
};

struct IngestSummary {
  int added = 0;
  int merged = 0;
  int rejected = 0;
};

struct AuditMiss {
  Complex location;
  double distance = 0.0;  // to the nearest registry entry (inf when empty)
};

struct AuditReport {
  int matched = 0;
  std::vector<AuditMiss> unmatched;
  double max_distance = 0.0;  // largest matched distance
};

/// Persistent registry of singularities accumulated across campaigns.
class Atlas {
 public:
  explicit Atlas(double merge_tol = 1e-3) : merge_tol_(merge_tol) {}

  /// Merges the campaign's accepted estimates into the registry. The
  /// campaign id must not have been ingested before.
  IngestSummary ingest(const CampaignInfo& campaign,
                       const std::vector<SingularityEstimate>& estimates);

  /// Matches accepted estimates against the registry without mutating it.
  /// An estimate is matched when its nearest entry lies within merge_tol.
  AuditReport audit_reproducibility(const std::vector<SingularityEstimate>& estimates) const;

  void write_csv(std::ostream& os) const;
  void save_json(const std::string& filename) const;
  static Atlas load_json(const std::string& filename);

  const std::vector<Singularity>& singularities() const { return entries_; }
  const std::vector<CampaignInfo>& campaigns() const { return campaigns_; }
  double merge_tol() const { return merge_tol_; }

  /// Real parts of confirmed entries on the real axis (|Im| < merge_tol)
  /// inside (0, t_max), ascending. Input to pole vaulting.
  std::vector<double> confirmed_real_poles(double t_max) const;

 private:
  double merge_tol_;
  std::vector<Singularity> entries_;
  std::vector<CampaignInfo> campaigns_;
};

}  // namespace polemap
