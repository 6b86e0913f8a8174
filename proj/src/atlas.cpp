#include "polemap/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace polemap {

using nlohmann::json;

IngestSummary Atlas::ingest(const CampaignInfo& campaign,
                            const std::vector<SingularityEstimate>& estimates) {
  for (const auto& c : campaigns_)
    if (c.id == campaign.id)
      throw std::invalid_argument("Atlas::ingest: duplicate campaign id '" + campaign.id + "'");

  const MergeSummary m = merge_estimates(entries_, estimates, merge_tol_, campaign.id);
  campaigns_.push_back(campaign);
  return {m.added, m.merged, m.rejected};
}

AuditReport Atlas::audit_reproducibility(const std::vector<SingularityEstimate>& estimates) const {
  AuditReport report;
  for (const auto& est : estimates) {
    if (!est.accepted)
      continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_)
      best = std::min(best, std::abs(e.location - est.location));
    if (best < merge_tol_) {
      ++report.matched;
      report.max_distance = std::max(report.max_distance, best);
    } else {
      report.unmatched.push_back({est.location, best});
    }
  }
  return report;
}

namespace {

std::vector<const Singularity*> sorted_entries(const std::vector<Singularity>& entries) {
  std::vector<const Singularity*> out;
  out.reserve(entries.size());
  for (const auto& e : entries)
    out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Singularity* a, const Singularity* b) {
    if (a->location.real() != b->location.real())
      return a->location.real() < b->location.real();
    return a->location.imag() < b->location.imag();
  });
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json options_to_json(const IntegrationOptions& o) {
  return {{"abs_tol", o.abs_tol},       {"rel_tol", o.rel_tol},
          {"ts_order", o.ts_order},     {"window", o.window},
          {"accept_threshold", o.accept_threshold},
          {"merge_tol", o.merge_tol},   {"safety", o.safety},
          {"max_steps", o.max_steps},   {"min_step", o.min_step}};
}

IntegrationOptions options_from_json(const json& j) {
  IntegrationOptions o;
  o.abs_tol = j.value("abs_tol", o.abs_tol);
  o.rel_tol = j.value("rel_tol", o.rel_tol);
  o.ts_order = j.value("ts_order", o.ts_order);
  o.window = j.value("window", o.window);
  o.accept_threshold = j.value("accept_threshold", o.accept_threshold);
  o.merge_tol = j.value("merge_tol", o.merge_tol);
  o.safety = j.value("safety", o.safety);
  o.max_steps = j.value("max_steps", o.max_steps);
  o.min_step = j.value("min_step", o.min_step);
  return o;
}

}  // namespace

void Atlas::write_csv(std::ostream& os) const {
  os << "re,im,order,confidence,support_count,confirmed\n";
  for (const Singularity* e : sorted_entries(entries_)) {
    os << num(e->location.real()) << ',' << num(e->location.imag()) << ','
       << num(e->order) << ',' << num(e->confidence) << ',' << e->support_count
       << ',' << (e->confirmed ? 1 : 0) << '\n';
  }
}

void Atlas::save_json(const std::string& filename) const {
  json j;
  j["merge_tol"] = merge_tol_;
  j["singularities"] = json::array();
  for (const Singularity* e : sorted_entries(entries_)) {
    json s = {{"re", e->location.real()},   {"im", e->location.imag()},
              {"order", e->order},          {"confidence", e->confidence},
              {"support", e->support_count}, {"confirmed", e->confirmed},
              {"weight", e->weight}};
    json sources = json::array();
    for (const auto& [cid, step] : e->sources)
      sources.push_back({{"campaign", cid}, {"step", step}});
    s["sources"] = sources;
    j["singularities"].push_back(std::move(s));
  }
  j["campaigns"] = json::array();
  for (const auto& c : campaigns_) {
    json path = json::array();
    for (const auto& v : c.path.vertices)
      path.push_back(complex_to_json(v));
    j["campaigns"].push_back({{"id", c.id},
                              {"problem", c.problem},
                              {"path", path},
                              {"options", options_to_json(c.options)},
                              {"step_count", c.step_count}});
  }
  std::ofstream out(filename);
  if (!out)
    throw std::runtime_error("Atlas::save_json: cannot open " + filename);
  out << j.dump(2) << '\n';
}

Atlas Atlas::load_json(const std::string& filename) {
  std::ifstream in(filename);
  if (!in)
    throw std::runtime_error("Atlas::load_json: cannot open " + filename);
  json j = json::parse(in);

  Atlas atlas(j.value("merge_tol", 1e-3));
  for (const auto& s : j.at("singularities")) {
    Singularity e;
    e.location = {s.at("re").get<double>(), s.at("im").get<double>()};
    e.order = s.at("order").get<double>();
    e.confidence = s.at("confidence").get<double>();
    e.support_count = s.at("support").get<int>();
    e.confirmed = s.at("confirmed").get<bool>();
    e.weight = s.value("weight", e.confidence * e.support_count);
    if (s.contains("sources"))
      for (const auto& src : s.at("sources"))
        e.sources.emplace_back(src.at("campaign").get<std::string>(),
                               src.at("step").get<int>());
    atlas.entries_.push_back(std::move(e));
  }
  if (j.contains("campaigns")) {
    for (const auto& c : j.at("campaigns")) {
      CampaignInfo info;
      info.id = c.at("id").get<std::string>();
      info.problem = c.value("problem", "");
      for (const auto& v : c.at("path"))
        info.path.vertices.push_back(complex_from_json(v));
      info.options = options_from_json(c.value("options", json::object()));
      info.step_count = c.value("step_count", 0);
      atlas.campaigns_.push_back(std::move(info));
    }
  }
  return atlas;
}

std::vector<double> Atlas::confirmed_real_poles(double t_max) const {
  std::vector<double> poles;
  for (const auto& e : entries_) {
    if (!e.confirmed)
      continue;
    if (std::abs(e.location.imag()) < merge_tol_ && e.location.real() > 0.0 &&
        e.location.real() < t_max)
      poles.push_back(e.location.real());
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

}  // namespace polemap
