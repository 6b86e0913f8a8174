#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "polemap/atlas.hpp"

using namespace polemap;

namespace {

SingularityEstimate accepted_at(Complex loc, double conf = 0.9, int step = 0) {
  SingularityEstimate e;
  e.location = loc;
  e.order_s = {2.0, 0.0};
  e.residual = 1e-12;
  e.confidence = conf;
  e.step_index = step;
  e.accepted = true;
  return e;
}

std::string temp_file(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("ingest merges, counts, and confirms") {
  Atlas atlas(1e-3);
  CampaignInfo c1;
  c1.id = "c1";
  c1.path.vertices = {{0, 0}, {1, 0}};

  SingularityEstimate rejected;
  rejected.accepted = false;

  const auto s1 = atlas.ingest(
      c1, {accepted_at({1.34861, 0.0}, 0.9, 3), accepted_at({1.34859, 0.0}, 0.8, 4), rejected});
  CHECK(s1.added == 1);
  CHECK(s1.merged == 1);
  CHECK(s1.rejected == 1);
  REQUIRE(atlas.singularities().size() == 1);
  CHECK(atlas.singularities()[0].confirmed);

  // Re-ingesting the same estimates under a new id only merges.
  CampaignInfo c2 = c1;
  c2.id = "c2";
  const auto s2 = atlas.ingest(
      c2, {accepted_at({1.34861, 0.0}, 0.9, 3), accepted_at({1.34859, 0.0}, 0.8, 4)});
  CHECK(s2.added == 0);
  CHECK(s2.merged == 2);
  CHECK(atlas.singularities()[0].support_count == 4);

  // Duplicate campaign ids are refused.
  CHECK_THROWS_AS(atlas.ingest(c1, {}), std::invalid_argument);
}

TEST_CASE("campaign with only rejected estimates adds nothing") {
  Atlas atlas;
  CampaignInfo c;
  c.id = "empty";
  c.path.vertices = {{0, 0}, {1, 0}};
  SingularityEstimate rej;
  rej.accepted = false;
  const auto summary = atlas.ingest(c, {rej, rej});
  CHECK(summary.added == 0);
  CHECK(atlas.singularities().empty());
}

TEST_CASE("audit against empty and populated registries") {
  Atlas atlas(1e-3);
  const auto empty_report = atlas.audit_reproducibility({accepted_at({1.0, 0.0})});
  CHECK(empty_report.matched == 0);
  CHECK(empty_report.unmatched.size() == 1);

  CampaignInfo c;
  c.id = "c1";
  c.path.vertices = {{0, 0}, {1, 0}};
  atlas.ingest(c, {accepted_at({1.3486, 0.0}), accepted_at({1.3486, 0.0})});

  const auto exact = atlas.audit_reproducibility({accepted_at({1.3486, 0.0})});
  CHECK(exact.matched == 1);
  CHECK(exact.max_distance == 0.0);

  const auto off = atlas.audit_reproducibility({accepted_at({2.5, 0.0})});
  CHECK(off.matched == 0);
  REQUIRE(off.unmatched.size() == 1);
  CHECK(off.unmatched[0].distance == doctest::Approx(2.5 - 1.3486));
}

TEST_CASE("CSV export is sorted and headed") {
  Atlas atlas(1e-3);
  CampaignInfo c;
  c.id = "c1";
  c.path.vertices = {{0, 0}, {1, 0}};
  atlas.ingest(c, {accepted_at({3.1480, 1.3306}), accepted_at({3.1480, -1.3306}),
                   accepted_at({1.3486, 0.0})});

  std::ostringstream os;
  atlas.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "re,im,order,confidence,support_count,confirmed");
  std::getline(is, line);
  CHECK(line.substr(0, 6) == "1.3486");
  std::getline(is, line);
  CHECK(line.find("-1.3306") != std::string::npos);  // conjugate sorted below
  std::getline(is, line);
  CHECK(line.find(",1.3306") != std::string::npos);
  CHECK_FALSE(static_cast<bool>(std::getline(is, line)));
}

TEST_CASE("empty atlas exports a header-only CSV") {
  Atlas atlas;
  std::ostringstream os;
  atlas.write_csv(os);
  CHECK(os.str() == "re,im,order,confidence,support_count,confirmed\n");
}

TEST_CASE("JSON round trip preserves all fields") {
  Atlas atlas(2e-3);
  CampaignInfo c;
  c.id = "row-1";
  c.problem = "painleve1 y0=[0.5+0i, 0.9+0i]";
  c.path.vertices = {{0, 0}, {1.0, 0.3}, {20.5, 0.3}};
  c.options.abs_tol = 3e-11;
  c.step_count = 74;
  atlas.ingest(c, {accepted_at({1.3486123456789, 1e-9}, 0.871, 5),
                   accepted_at({1.3486123456788, -1e-9}, 0.912, 6)});

  const std::string file = temp_file("polemap_atlas_roundtrip.json");
  atlas.save_json(file);
  const Atlas back = Atlas::load_json(file);
  std::remove(file.c_str());

  CHECK(back.merge_tol() == atlas.merge_tol());
  REQUIRE(back.singularities().size() == 1);
  const auto& a = atlas.singularities()[0];
  const auto& b = back.singularities()[0];
  CHECK(a.location == b.location);
  CHECK(a.order == b.order);
  CHECK(a.confidence == b.confidence);
  CHECK(a.support_count == b.support_count);
  CHECK(a.confirmed == b.confirmed);
  CHECK(a.weight == b.weight);
  CHECK(a.sources == b.sources);
  REQUIRE(back.campaigns().size() == 1);
  CHECK(back.campaigns()[0].id == "row-1");
  CHECK(back.campaigns()[0].options.abs_tol == 3e-11);
  CHECK(back.campaigns()[0].path.vertices == c.path.vertices);
  CHECK(back.campaigns()[0].step_count == 74);
}

TEST_CASE("no two confirmed entries closer than merge_tol") {
  Atlas atlas(1e-3);
  CampaignInfo c;
  c.id = "scatter";
  c.path.vertices = {{0, 0}, {1, 0}};
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> jitter(-2e-3, 2e-3);
  std::vector<SingularityEstimate> ests;
  for (int i = 0; i < 200; ++i)
    ests.push_back(accepted_at({1.0 + jitter(rng), jitter(rng)}, 0.9, i));
  atlas.ingest(c, ests);

  const auto& entries = atlas.singularities();
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      CHECK(std::abs(entries[i].location - entries[j].location) > atlas.merge_tol());
}

TEST_CASE("confirmed locations are campaign-order insensitive") {
  const std::vector<std::vector<SingularityEstimate>> campaigns = {
      {accepted_at({1.3486, 0.0}, 0.9, 1), accepted_at({3.1480, 1.3306}, 0.8, 2)},
      {accepted_at({1.34862, 0.0}, 0.7, 3)},
      {accepted_at({3.14801, 1.33059}, 0.95, 4), accepted_at({6.0, 2.0}, 0.9, 5)},
  };

  auto build = [&](const std::vector<int>& order) {
    Atlas atlas(1e-3);
    for (int idx : order) {
      CampaignInfo c;
      c.id = "c" + std::to_string(idx);
      c.path.vertices = {{0, 0}, {1, 0}};
      atlas.ingest(c, campaigns[static_cast<std::size_t>(idx)]);
    }
    std::vector<Complex> confirmed;
    for (const auto& e : atlas.singularities())
      if (e.confirmed)
        confirmed.push_back(e.location);
    std::sort(confirmed.begin(), confirmed.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return confirmed;
  };

  const auto forward = build({0, 1, 2});
  const auto backward = build({2, 1, 0});
  REQUIRE(forward.size() == backward.size());
  for (std::size_t i = 0; i < forward.size(); ++i)
    CHECK(std::abs(forward[i] - backward[i]) < 1e-3);
}
