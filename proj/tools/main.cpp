#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horoflow/flow.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/hyperbolic.hpp"
#include "horoflow/surface.hpp"
#include "horoflow/symmetric.hpp"
#include "horoflow/verify.hpp"

namespace hf = horoflow;
namespace fs = std::filesystem;

namespace {

constexpr double kMonotoneSlack = 1e-9;
constexpr double kIdentityTol = 1e-11;

std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  return hf::format_g17(x);
}

void write_records_json(const std::vector<hf::InequalityRecord>& records,
                        std::ostream& os, int indent) {
  std::string pad(indent, ' ');
  os << "[";
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << (i ? ",\n" : "\n") << pad << "  {\"id\":\"" << r.id << "\""
       << ",\"verdict\":\"" << hf::to_string(r.verdict) << "\""
       << ",\"hypotheses_ok\":" << (r.hypotheses_ok ? "true" : "false")
       << ",\"lhs\":" << json_number(r.lhs) << ",\"rhs\":" << json_number(r.rhs)
       << ",\"relative_gap\":" << json_number(r.relative_gap);
    if (!r.note.empty()) os << ",\"note\":\"" << r.note << "\"";
    os << "}";
  }
  os << "\n" << pad << "]";
}

double mean_radius(const hf::RadialGraph& g) {
  return std::accumulate(g.r.begin(), g.r.end(), 0.0) / g.r.size();
}

/// Monotone keys the run is expected to respect, per family and index.
std::vector<std::string> monotone_keys(const hf::RunConfig& cfg) {
  std::vector<std::string> keys;
  int n = cfg.dim, m = cfg.flow.m;
  if (cfg.flow.family == hf::FlowFamily::classical) {
    if (m + 1 <= n) keys.push_back("W" + std::to_string(m + 1));
    for (int k = 1; 2 * k + 1 <= n && m <= 2 * k + 1; ++k)
      keys.push_back("intLk_" + std::to_string(k));
    for (int k = m; k <= n; ++k) keys.push_back("intLpEk_" + std::to_string(k));
  } else {
    if (m + 1 <= n) keys.push_back("Wt" + std::to_string(m + 1));
    keys.push_back("intLpuEkt_" + std::to_string(m));
    if (m >= 2) keys.push_back("intLpuEkt_" + std::to_string(m - 1));
  }
  return keys;
}

int run_simulate(const hf::RunConfig& cfg) {
  hf::RadialGraph g0 = hf::build_initial(cfg);
  hf::RunResult result = hf::run(g0, cfg.flow);
  const hf::TimeSeries& series = result.series;

  fs::create_directories(cfg.out_dir);
  {
    std::ofstream csv(fs::path(cfg.out_dir) / "series.csv", std::ios::binary);
    hf::write_series_csv(series, cfg.dim, csv);
  }
  hf::GeometryFields ff = hf::geometry(result.final_graph);
  {
    std::ofstream snap(fs::path(cfg.out_dir) / "final_surface.tsv",
                       std::ios::binary);
    hf::write_snapshot(ff, snap);
  }

  hf::BallProfiles balls(cfg.dim);
  hf::FunctionalReport final_rep = hf::functional_report(ff, balls);
  auto records = hf::inequality_suite(ff, final_rep, balls, cfg.tol);

  bool failed = series.status == hf::RunStatus::blowup ||
                series.status == hf::RunStatus::convexity_lost;

  double predicted = std::numeric_limits<double>::quiet_NaN();
  if (!series.records.empty()) {
    const auto& first = series.records.front().report;
    int m = cfg.flow.m;
    try {
      predicted = (cfg.flow.family == hf::FlowFamily::classical)
                      ? balls.invert(hf::BallProfile::quermass, m,
                                     first.quermass[m])
                      : balls.invert(hf::BallProfile::quermass_shifted, m,
                                     first.quermass_shifted[m]);
    } catch (const std::exception&) {
    }
  }

  std::vector<std::pair<std::string, double>> mono;
  for (const auto& key : monotone_keys(cfg)) {
    double v = hf::monotonicity_violation(series, key);
    mono.emplace_back(key, v);
    if (v > kMonotoneSlack) failed = true;
  }
  for (const auto& rec : records)
    if (rec.verdict == hf::Verdict::violated) failed = true;

  hf::DecayFit fit;
  bool have_fit = false;
  try {
    fit = hf::decay_fit(series);
    have_fit = true;
  } catch (const hf::InsufficientData&) {
  }

  {
    std::ofstream js(fs::path(cfg.out_dir) / "summary.json", std::ios::binary);
    js << "{\n";
    js << "  \"status\": \"" << hf::to_string(series.status) << "\",\n";
    js << "  \"final_radius\": " << json_number(mean_radius(result.final_graph))
       << ",\n";
    js << "  \"predicted_radius\": " << json_number(predicted) << ",\n";
    js << "  \"alpha_fit\": " << (have_fit ? json_number(fit.alpha) : "null")
       << ",\n";
    js << "  \"alpha_r_squared\": "
       << (have_fit ? json_number(fit.r_squared) : "null") << ",\n";
    js << "  \"f_range\": {\"initial_min\": " << json_number(series.initial_f_min)
       << ", \"initial_max\": " << json_number(series.initial_f_max)
       << ", \"run_min\": " << json_number(series.run_f_min)
       << ", \"run_max\": " << json_number(series.run_f_max) << "},\n";
    js << "  \"monotonicity_violations\": {";
    for (size_t i = 0; i < mono.size(); ++i)
      js << (i ? ", " : "") << "\"" << mono[i].first
         << "\": " << json_number(mono[i].second);
    js << "},\n";
    js << "  \"inequalities\": ";
    write_records_json(records, js, 2);
    js << "\n}\n";
  }

  std::cout << "status: " << hf::to_string(series.status)
            << "  records: " << series.records.size()
            << "  final radius: " << mean_radius(result.final_graph) << "\n";
  return failed ? 1 : 0;
}

int run_inequalities(const hf::RunConfig& cfg, const std::string& at,
                     const std::string& flip_sign) {
  hf::RadialGraph g = hf::build_initial(cfg);
  if (at == "final") g = hf::run(g, cfg.flow).final_graph;
  hf::GeometryFields f = hf::geometry(g);
  hf::BallProfiles balls(cfg.dim);
  auto rep = hf::functional_report(f, balls);
  auto records = hf::inequality_suite(f, rep, balls, cfg.tol);

  if (!flip_sign.empty()) {
    // test hook: negate matching left-hand sides and reclassify
    for (auto& r : records) {
      if (r.id.rfind(flip_sign, 0) != 0 || !r.hypotheses_ok) continue;
      r.lhs = -r.lhs;
      r.relative_gap = (r.lhs - r.rhs) / std::max(1.0, std::abs(r.rhs));
      if (std::abs(r.relative_gap) <= cfg.tol.eq_tol)
        r.verdict = hf::Verdict::equality;
      else if (r.relative_gap < -cfg.tol.viol_tol)
        r.verdict = hf::Verdict::violated;
      else
        r.verdict = hf::Verdict::holds;
    }
  }

  write_records_json(records, std::cout, 0);
  std::cout << "\n";
  for (const auto& r : records)
    if (r.verdict == hf::Verdict::violated) return 1;
  return 0;
}

int run_identities(int n, int samples, std::uint64_t seed) {
  auto battery = hf::identity_battery(n, samples, seed);
  bool ok = battery.max_violation <= kIdentityTol;
  std::cout << "identity battery: n=" << n << " samples=" << samples
            << " seed=" << seed << "\n";
  for (const auto& [name, v] : battery.checks)
    std::cout << "  " << name << ": " << hf::format_g17(v) << "\n";
  std::cout << "max violation: " << hf::format_g17(battery.max_violation)
            << (ok ? "  (pass)" : "  (FAIL)") << "\n";
  return ok ? 0 : 1;
}

int run_ball_table(int n, double r_min, double r_max, int steps,
                   std::optional<int> only_k) {
  hf::BallProfiles balls(n);
  struct Col {
    hf::BallProfile p;
    int k;
    std::string name;
  };
  std::vector<Col> cols;
  auto add = [&](hf::BallProfile p, int k) {
    if (only_k && *only_k != k) return;
    cols.push_back({p, k, std::string(hf::to_string(p)) + std::to_string(k)});
  };
  for (int k = 0; k <= n; ++k) add(hf::BallProfile::quermass, k);
  for (int k = 0; k <= n; ++k) add(hf::BallProfile::quermass_shifted, k);
  for (int k = 0; 2 * k <= n; ++k) add(hf::BallProfile::gauss_bonnet, k);
  for (int k = 0; k <= n; ++k) add(hf::BallProfile::weighted_curvature, k);
  for (int k = 0; k <= n; ++k)
    add(hf::BallProfile::weighted_curvature_shifted, k);
  for (int k = 0; 2 * k <= n; ++k) add(hf::BallProfile::weighted_gauss_bonnet, k);

  std::cout << "r";
  for (const auto& c : cols) std::cout << '\t' << c.name;
  std::cout << "\n";
  for (int i = 0; i < steps; ++i) {
    double r = r_min + (r_max - r_min) * i / std::max(1, steps - 1);
    std::cout << hf::format_g17(r);
    for (const auto& c : cols)
      std::cout << '\t' << hf::format_g17(balls.value(c.p, c.k, r));
    std::cout << "\n";
  }
  return 0;
}

int run_minkowski(const hf::RunConfig& cfg) {
  hf::RadialGraph g = hf::build_initial(cfg);
  hf::GeometryFields f = hf::geometry(g);
  hf::BallProfiles balls(cfg.dim);
  auto rep = hf::functional_report(f, balls);
  double worst = 0.0;
  std::cout << "{\"rho\": [";
  for (size_t m = 0; m < rep.minkowski.size(); ++m) {
    std::cout << (m ? "," : "") << hf::format_g17(rep.minkowski[m]);
    worst = std::max(worst, std::abs(rep.minkowski[m]));
  }
  std::cout << "], \"rhot\": [";
  for (size_t m = 0; m < rep.minkowski_shifted.size(); ++m) {
    std::cout << (m ? "," : "") << hf::format_g17(rep.minkowski_shifted[m]);
    worst = std::max(worst, std::abs(rep.minkowski_shifted[m]));
  }
  std::cout << "], \"max_abs\": " << hf::format_g17(worst)
            << ", \"area\": " << hf::format_g17(rep.area) << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally constrained curvature flows of h-convex hypersurfaces "
               "in hyperbolic space"};
  app.require_subcommand(1);

  std::string config_path, at = "initial", flip_sign;
  int n = 5, samples = 1000, steps = 25;
  std::uint64_t seed = 42;
  double r_min = 0.1, r_max = 2.5;
  int only_k_value = -1;

  auto* sim = app.add_subcommand("simulate", "run a flow and write series/summary");
  sim->add_option("--config", config_path, "run configuration JSON")->required();

  auto* ineq = app.add_subcommand("inequalities", "evaluate the inequality suite");
  ineq->add_option("--config", config_path)->required();
  ineq->add_option("--at", at, "initial|final surface")
      ->check(CLI::IsMember({"initial", "final"}));
  ineq->add_option("--flip-sign", flip_sign,
                   "test hook: negate lhs of matching record ids");

  auto* ident = app.add_subcommand("identities", "symmetric-function battery");
  ident->add_option("--n", n, "dimension")->required();
  ident->add_option("--samples", samples);
  ident->add_option("--seed", seed);

  auto* ball = app.add_subcommand("ball-table", "dump geodesic-ball profiles");
  ball->add_option("--n", n, "dimension")->required();
  ball->add_option("--r-min", r_min);
  ball->add_option("--r-max", r_max);
  ball->add_option("--steps", steps);
  ball->add_option("--k", only_k_value, "restrict to one index");

  auto* mink = app.add_subcommand("minkowski", "Minkowski residual report");
  mink->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(hf::load_config(config_path));
    if (ineq->parsed())
      return run_inequalities(hf::load_config(config_path), at, flip_sign);
    if (ident->parsed()) return run_identities(n, samples, seed);
    if (ball->parsed())
      return run_ball_table(n, r_min, r_max, steps,
                            only_k_value >= 0
                                ? std::optional<int>(only_k_value)
                                : std::nullopt);
    if (mink->parsed()) return run_minkowski(hf::load_config(config_path));
  } catch (const hf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
