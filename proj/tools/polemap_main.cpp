#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "polemap/atlas.hpp"
#include "polemap/integrator.hpp"
#include "polemap/painleve.hpp"
#include "polemap/paths.hpp"
#include "polemap/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polemap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIntegration = 3;
constexpr int kExitNoAtlas = 4;

bool verbose() {
  const char* v = std::getenv("POLEMAP_LOG");
  return v != nullptr && *v != '\0';
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values must be [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

struct RunConfig {
  std::string problem_name;
  Complex t0{0.0, 0.0};
  std::vector<Complex> y0;
  IntegrationOptions options;

  std::optional<PathSpec> explicit_path;
  json generator;  // non-null when path comes from a generator spec

  std::string campaign_id;
  std::string steps_csv = "steps.csv";
  std::string estimates_csv = "estimates.csv";
  std::string atlas_json;
};

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
  o.validate();
  return o;
}

RunConfig load_config(const std::string& filename) {
  std::ifstream in(filename);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + filename);
  json j = json::parse(in);

  RunConfig cfg;
  const json& prob = j.at("problem");
  cfg.problem_name = prob.at("name").get<std::string>();
  if (prob.contains("t0"))
    cfg.t0 = complex_from_json(prob.at("t0"));
  for (const auto& v : prob.at("y0"))
    cfg.y0.push_back(complex_from_json(v));

  if (j.contains("options"))
    cfg.options = options_from_json(j.at("options"));

  if (j.contains("path")) {
    const json& p = j.at("path");
    const bool has_vertices = p.contains("vertices");
    const bool has_kind = p.contains("kind");
    if (has_vertices == has_kind)
      throw std::invalid_argument("path: give exactly one of 'vertices' or generator 'kind'");
    if (has_vertices) {
      PathSpec path;
      for (const auto& v : p.at("vertices"))
        path.vertices.push_back(complex_from_json(v));
      path.validate();
      cfg.explicit_path = std::move(path);
    } else {
      cfg.generator = p;
    }
  }

  cfg.campaign_id = j.value("campaign_id", "");
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    cfg.steps_csv = o.value("steps_csv", cfg.steps_csv);
    cfg.estimates_csv = o.value("estimates_csv", cfg.estimates_csv);
    cfg.atlas_json = o.value("atlas_json", cfg.atlas_json);
  }
  return cfg;
}

PathSpec generated_path(const json& gen, const Atlas* atlas) {
  const std::string kind = gen.at("kind").get<std::string>();
  if (kind == "long_jump") {
    return long_jump_path(gen.at("t_target").get<double>(), gen.value("offset", 0.3));
  }
  if (kind == "pole_vault") {
    VaultSpec spec;
    spec.radius = gen.value("radius", spec.radius);
    spec.chords = gen.value("chords", spec.chords);
    if (gen.value("side", "upper") == std::string("lower"))
      spec.side = VaultSpec::Side::lower;
    const double t_target = gen.at("t_target").get<double>();
    if (gen.contains("poles")) {
      for (const auto& p : gen.at("poles"))
        spec.poles.push_back(p.get<double>());
    } else {
      if (atlas == nullptr)
        throw std::runtime_error("pole_vault path needs an atlas with confirmed real poles");
      spec.poles = atlas->confirmed_real_poles(t_target);
    }
    return pole_vault_path(spec, t_target);
  }
  if (kind == "loop") {
    PathSpec loop;
    if (gen.contains("vertices")) {
      for (const auto& v : gen.at("vertices"))
        loop.vertices.push_back(complex_from_json(v));
      if (loop.vertices.front() != loop.vertices.back())
        loop.vertices.push_back(loop.vertices.front());
    } else {
      loop = circle_loop(complex_from_json(gen.at("center")),
                         gen.at("radius").get<double>(), gen.value("chords", 12),
                         gen.value("start_angle", 3.14159265358979323846));
    }
    if (gen.contains("anchor")) {
      const Complex anchor = complex_from_json(gen.at("anchor"));
      PathSpec path;
      path.vertices.push_back(anchor);
      path.vertices.insert(path.vertices.end(), loop.vertices.begin(), loop.vertices.end());
      path.vertices.push_back(anchor);
      path.validate();
      return path;
    }
    loop.validate();
    return loop;
  }
  throw std::invalid_argument("unknown path kind: " + kind);
}

void write_outputs(const fs::path& out_dir, const RunConfig& cfg,
                   const IntegrationResult& result) {
  fs::create_directories(out_dir);
  {
    std::ofstream steps(out_dir / cfg.steps_csv);
    write_steps_csv(steps, result);
  }
  {
    std::ofstream ests(out_dir / cfg.estimates_csv);
    write_estimates_csv(ests, result);
  }
}

IntegrationResult run(const RunConfig& cfg, const PathSpec& path) {
  const OdeSystem sys = named_system(cfg.problem_name);
  if (verbose())
    std::cerr << "[polemap] integrating " << cfg.problem_name << " along "
              << path.vertices.size() - 1 << " segment(s), length " << path.length()
              << "\n";
  IntegrationResult result = integrate_path(sys, cfg.y0, path, cfg.options);
  if (verbose())
    std::cerr << "[polemap] " << result.records.size() << " steps, "
              << result.estimates.size() << " estimates, status "
              << (result.ok() ? "ok" : result.message) << "\n";
  return result;
}

std::string problem_tag(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.problem_name << " y0=[";
  for (std::size_t i = 0; i < cfg.y0.size(); ++i) {
    if (i)
      os << ", ";
    os << cfg.y0[i].real() << (cfg.y0[i].imag() < 0 ? "" : "+") << cfg.y0[i].imag() << "i";
  }
  os << "]";
  return os.str();
}

int cmd_integrate(const std::string& config_file, const std::string& out_dir) {
  RunConfig cfg = load_config(config_file);
  if (!cfg.explicit_path && cfg.generator.is_null())
    throw std::invalid_argument("config has no path");
  const PathSpec path =
      cfg.explicit_path ? *cfg.explicit_path : generated_path(cfg.generator, nullptr);

  const IntegrationResult result = run(cfg, path);
  write_outputs(out_dir, cfg, result);
  print_step_table(std::cout, result);
  if (!result.ok()) {
    std::cerr << "integration failed: " << result.message << "\n";
    return kExitIntegration;
  }
  return kExitOk;
}

int cmd_map(const std::string& config_file, const std::string& out_dir,
            std::string atlas_file) {
  RunConfig cfg = load_config(config_file);
  if (atlas_file.empty())
    atlas_file = cfg.atlas_json;
  if (atlas_file.empty())
    throw std::invalid_argument("map: no atlas destination (use --atlas or outputs.atlas_json)");

  const bool pre_existing = fs::exists(atlas_file);
  Atlas atlas = pre_existing ? Atlas::load_json(atlas_file) : Atlas(cfg.options.merge_tol);

  if (!cfg.explicit_path && cfg.generator.is_null())
    throw std::invalid_argument("config has no path");
  const PathSpec path = cfg.explicit_path
                            ? *cfg.explicit_path
                            : generated_path(cfg.generator, pre_existing ? &atlas : nullptr);

  const IntegrationResult result = run(cfg, path);
  write_outputs(out_dir, cfg, result);

  if (pre_existing) {
    const AuditReport report = atlas.audit_reproducibility(result.estimates);
    std::cout << "audit: matched " << report.matched << ", unmatched "
              << report.unmatched.size() << ", max matched distance "
              << report.max_distance << "\n";
  }

  CampaignInfo campaign;
  campaign.id = cfg.campaign_id.empty()
                    ? "campaign-" + std::to_string(atlas.campaigns().size() + 1)
                    : cfg.campaign_id;
  campaign.problem = problem_tag(cfg);
  campaign.path = path;
  campaign.options = cfg.options;
  campaign.step_count = static_cast<int>(result.records.size());

  const IngestSummary summary = atlas.ingest(campaign, result.estimates);
  atlas.save_json(atlas_file);
  std::cout << "ingest: " << summary.added << " new, " << summary.merged
            << " merged, " << summary.rejected << " rejected; atlas now holds "
            << atlas.singularities().size() << " entries\n";

  if (!result.ok()) {
    std::cerr << "integration failed: " << result.message << "\n";
    return kExitIntegration;
  }
  return kExitOk;
}

int cmd_value_at(const std::string& config_file, double t_target,
                 const std::string& method, const std::string& atlas_file,
                 double offset, double radius, int chords) {
  RunConfig cfg = load_config(config_file);

  PathSpec path;
  if (method == "long_jump") {
    path = long_jump_path(t_target, offset);
  } else if (method == "pole_vault") {
    std::string file = atlas_file.empty() ? cfg.atlas_json : atlas_file;
    if (file.empty() || !fs::exists(file)) {
      std::cerr << "pole_vault needs an existing atlas (--atlas)\n";
      return kExitNoAtlas;
    }
    const Atlas atlas = Atlas::load_json(file);
    VaultSpec spec;
    spec.poles = atlas.confirmed_real_poles(t_target);
    spec.radius = radius;
    spec.chords = chords;
    path = pole_vault_path(spec, t_target);
  } else {
    throw std::invalid_argument("method must be long_jump or pole_vault");
  }

  const IntegrationResult result = run(cfg, path);
  if (!result.ok()) {
    std::cerr << "integration failed: " << result.message << "\n";
    return kExitIntegration;
  }
  const auto& y = result.final_state();
  char buf[128];
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "y%s(%g) = %.10f + %.3e i\n",
                  i == 0 ? "" : "'", t_target, y[i].real(), y[i].imag());
    std::cout << buf;
  }
  return kExitOk;
}

int cmd_plot_data(const std::string& kind, const std::string& atlas_file,
                  const std::string& steps_file, const std::string& out_file) {
  std::ofstream out(out_file);
  if (!out)
    throw std::runtime_error("cannot open output file: " + out_file);

  if (kind == "scatter") {
    if (atlas_file.empty())
      throw std::invalid_argument("scatter needs --atlas");
    const Atlas atlas = Atlas::load_json(atlas_file);
    out << "re,im,order,confirmed\n";
    char buf[128];
    for (const auto& e : atlas.singularities()) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", e.location.real(),
                    e.location.imag(), e.order, e.confirmed ? 1 : 0);
      out << buf;
    }
    return kExitOk;
  }
  if (kind == "trace") {
    if (steps_file.empty())
      throw std::invalid_argument("trace needs --steps");
    std::ifstream in(steps_file);
    if (!in)
      throw std::runtime_error("cannot open steps file: " + steps_file);
    // Steps CSV columns: index,t_re,t_im,y0_re,y0_im,...
    std::string line;
    std::getline(in, line);  // header
    out << "t_re,y_re,y_im\n";
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ','))
        cells.push_back(cell);
      if (cells.size() < 5)
        throw std::runtime_error("malformed steps CSV row: " + line);
      out << cells[1] << ',' << cells[3] << ',' << cells[4] << '\n';
    }
    return kExitOk;
  }
  throw std::invalid_argument("kind must be scatter or trace");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-series ODE integration along complex paths with singularity mapping"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir = ".";
  std::string atlas_file;

  auto* integrate = app.add_subcommand("integrate", "integrate a configured path");
  integrate->add_option("--config", config_file, "JSON run configuration")->required();
  integrate->add_option("--out", out_dir, "output directory");

  auto* map = app.add_subcommand("map", "integrate and ingest estimates into an atlas");
  map->add_option("--config", config_file, "JSON run configuration")->required();
  map->add_option("--out", out_dir, "output directory");
  map->add_option("--atlas", atlas_file, "atlas JSON file (default: outputs.atlas_json)");

  double t_target = 20.0;
  std::string method = "long_jump";
  double offset = 0.3;
  double radius = 0.3;
  int chords = 8;
  auto* value_at = app.add_subcommand("value-at", "solution value at a real t beyond poles");
  value_at->add_option("--config", config_file, "JSON run configuration")->required();
  value_at->add_option("--t", t_target, "target real t")->required();
  value_at->add_option("--method", method, "long_jump | pole_vault");
  value_at->add_option("--atlas", atlas_file, "atlas with confirmed real poles (vaulting)");
  value_at->add_option("--offset", offset, "long-jump imaginary offset");
  value_at->add_option("--radius", radius, "vault radius");
  value_at->add_option("--chords", chords, "chords per vault semicircle");

  std::string kind;
  std::string steps_file;
  std::string out_file = "plot.csv";
  auto* plot = app.add_subcommand("plot-data", "emit plot-ready CSV");
  plot->add_option("--kind", kind, "scatter | trace")->required();
  plot->add_option("--atlas", atlas_file, "atlas JSON (scatter)");
  plot->add_option("--steps", steps_file, "steps CSV (trace)");
  plot->add_option("--out", out_file, "output CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (integrate->parsed())
      return cmd_integrate(config_file, out_dir);
    if (map->parsed())
      return cmd_map(config_file, out_dir, atlas_file);
    if (value_at->parsed())
      return cmd_value_at(config_file, t_target, method, atlas_file, offset, radius, chords);
    if (plot->parsed())
      return cmd_plot_data(kind, atlas_file, steps_file, out_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
