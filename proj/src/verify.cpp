#include "horoflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "horoflow/symmetric.hpp"

namespace horoflow {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
    case Verdict::hypotheses_unmet: return "hypotheses_unmet";
  }
  return "?";
}

namespace {

struct Hypotheses {
  double min_shifted = 0.0;
  bool h_convex = false;
  bool strictly_h_convex = false;
  bool mean_convex = false;
  int shifted_cone_order = 0;  // largest q with E_1..E_q(kt) > 0 pointwise
};

Hypotheses surface_hypotheses(const GeometryFields& f) {
  Hypotheses h;
  h.min_shifted = min_shifted_curvature(f);
  h.h_convex = h.min_shifted >= -1e-8;
  h.strictly_h_convex = h.min_shifted > 0.0;
  h.mean_convex = true;
  h.shifted_cone_order = f.dim;
  for (int p = 0; p < f.size(); ++p) {
    auto es = elementary_all(f.kappa_shifted_at(p));
    int order = 0;
    while (order < f.dim && es[order + 1] > 0.0) ++order;
    h.shifted_cone_order = std::min(h.shifted_cone_order, order);
    if (elementary(f.kappa_at(p), 1) <= 0.0) h.mean_convex = false;
  }
  return h;
}

Verdict classify(double gap, bool hyp_ok, const Tolerances& tol) {
  if (!hyp_ok) return Verdict::hypotheses_unmet;
  if (std::abs(gap) <= tol.eq_tol) return Verdict::equality;
  if (gap < -tol.viol_tol) return Verdict::violated;
  return Verdict::holds;
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

std::vector<InequalityRecord> inequality_suite(const GeometryFields& f,
                                               const FunctionalReport& rep,
                                               const BallProfiles& balls,
                                               const Tolerances& tol) {
  const int n = f.dim;
  const double omega_n = balls.sphere_area();
  const double area_ratio = rep.area / omega_n;
  Hypotheses hyp = surface_hypotheses(f);
  std::vector<InequalityRecord> out;

  auto emit = [&](std::string id, bool hyp_ok, std::string note, double lhs,
                  const std::function<double()>& rhs_fn) {
    InequalityRecord rec;
    rec.id = std::move(id);
    rec.hypotheses_ok = hyp_ok;
    rec.note = std::move(note);
    rec.lhs = lhs;
    try {
      rec.rhs = rhs_fn();
      rec.relative_gap = (rec.lhs - rec.rhs) / std::max(1.0, std::abs(rec.rhs));
      rec.verdict = classify(rec.relative_gap, hyp_ok, tol);
    } catch (const std::exception& e) {
      rec.rhs = std::numeric_limits<double>::quiet_NaN();
      rec.relative_gap = std::numeric_limits<double>::quiet_NaN();
      rec.verdict = Verdict::hypotheses_unmet;
      if (rec.note.empty()) rec.note = std::string("rhs evaluation: ") + e.what();
    }
    out.push_back(std::move(rec));
  };

  auto idx2 = [](const char* stem, int a, int b) {
    std::ostringstream os;
    os << stem << "(k=" << a << ",l=" << b << ")";
    return os.str();
  };
  auto idxm = [](const char* stem, int k, int m) {
    std::ostringstream os;
    os << stem << "(k=" << k << ",m=" << m << ")";
    return os.str();
  };
  auto idx1 = [](const char* stem, int k) {
    std::ostringstream os;
    os << stem << "(k=" << k << ")";
    return os.str();
  };

  std::string hnote = hyp.h_convex ? "" : "surface is not h-convex";
  std::string snote = hyp.strictly_h_convex ? "" : "surface is not strictly h-convex";

  // quermassintegral comparisons
  for (int k = 1; k <= n; ++k)
    for (int l = 0; l < k; ++l)
      emit(idx2("AF", k, l), hyp.h_convex, hnote, rep.quermass[k], [&, k, l] {
        double r = balls.invert(BallProfile::quermass, l, rep.quermass[l]);
        return balls.quermass(k, r);
      });

  // Gauss-Bonnet curvature integrals against quermassintegrals
  for (int k = 1; 2 * k + 1 <= n; ++k)
    for (int m = 0; m <= 2 * k + 1; ++m)
      emit(idxm("GWW", k, m), hyp.h_convex, hnote, rep.int_gb[k], [&, k, m] {
        double r = balls.invert(BallProfile::quermass, m, rep.quermass[m]);
        return balls.value(BallProfile::gauss_bonnet, k, r);
      });

  // weighted curvature integrals against quermassintegrals
  for (int k = 1; k <= n; ++k)
    for (int m = 0; m <= k; ++m)
      emit(idxm("WAF", k, m), hyp.h_convex, hnote, rep.int_em_cosh[k],
           [&, k, m] {
             double r = balls.invert(BallProfile::quermass, m, rep.quermass[m]);
             return balls.value(BallProfile::weighted_curvature, k, r);
           });

  // explicit area form of the weighted inequality
  for (int k = 1; k <= n; ++k)
    emit(idx1("GWW-CONJ", k), hyp.h_convex, hnote, rep.int_em_cosh[k], [&, k] {
      double e1 = std::pow(area_ratio, 2.0 * (n + 1) / (n * (k + 1.0)));
      double e2 = std::pow(area_ratio, 2.0 * (n - k) / (n * (k + 1.0)));
      return omega_n * std::pow(e1 + e2, 0.5 * (k + 1));
    });

  // Minkowski-type area form
  emit("BHW", hyp.mean_convex,
       hyp.mean_convex ? "" : "surface is not mean convex",
       rep.int_em_cosh[1] - rep.int_em_support[0], [&] {
         return omega_n * std::pow(area_ratio, (n - 1.0) / n);
       });

  // shifted quermassintegral comparisons
  for (int k = 1; k <= n; ++k)
    for (int l = 0; l < k; ++l)
      emit(idx2("SAF", k, l), hyp.strictly_h_convex, snote,
           rep.quermass_shifted[k], [&, k, l] {
             double r = balls.invert(BallProfile::quermass_shifted, l,
                                     rep.quermass_shifted[l]);
             return balls.quermass_shifted(k, r);
           });

  // shifted weighted curvature integrals
  auto cone_ok = [&](int q) { return hyp.shifted_cone_order >= q; };
  auto cone_note = [&](int q) {
    return hyp.shifted_cone_order >= q
               ? std::string()
               : "shifted curvature not in Gamma_" + std::to_string(q) + "^+";
  };

  for (int k = 1; k <= n; ++k)
    emit(idx1("SWAF-K", k), cone_ok(k), cone_note(k),
         rep.int_em_shifted_weight[k], [&, k] {
           double r = balls.invert(BallProfile::quermass_shifted, k,
                                   rep.quermass_shifted[k]);
           return balls.value(BallProfile::weighted_curvature_shifted, k, r);
         });

  for (int k = 1; k <= n - 1; ++k)
    emit(idx1("SWAF-K1", k), cone_ok(k + 1), cone_note(k + 1),
         rep.int_em_shifted_weight[k], [&, k] {
           double r = balls.invert(BallProfile::quermass_shifted, k + 1,
                                   rep.quermass_shifted[k + 1]);
           return balls.value(BallProfile::weighted_curvature_shifted, k, r);
         });

  for (int k = 1; 2 * k <= n - 1; ++k) {
    for (int l = 0; l <= k; ++l)
      emit(idx2("SWAF-COR-A", k, l), cone_ok(k), cone_note(k),
           rep.int_em_shifted_weight[k], [&, k, l] {
             double r = balls.invert(BallProfile::quermass_shifted, l,
                                     rep.quermass_shifted[l]);
             return balls.value(BallProfile::weighted_curvature_shifted, k, r);
           });
    for (int l = 0; l <= k + 1; ++l)
      emit(idx2("SWAF-COR-B", k, l), cone_ok(k + 1),
           cone_note(k + 1), rep.int_em_shifted_weight[k], [&, k, l] {
             double r = balls.invert(BallProfile::quermass_shifted, l,
                                     rep.quermass_shifted[l]);
             return balls.value(BallProfile::weighted_curvature_shifted, k, r);
           });
  }

  // weighted Gauss-Bonnet integrals; the statement's index bound is
  // (n-1)/4, records in ((n-1)/4, (n+1)/4] are emitted as unmet with a note.
  for (int k = 2; 4 * k <= n + 1; ++k) {
    bool stated = 4 * k <= n - 1;
    bool ok = stated && cone_ok(2 * k - 1);
    std::string note;
    if (!stated)
      note = "index k admissible only under the proof-side bound (n+1)/4";
    else if (!ok)
      note = cone_note(2 * k - 1);
    for (int l = 0; l < k; ++l)
      emit(idx2("ULK", k, l), ok, note, rep.int_gb_support[k], [&, k, l] {
        double r = balls.invert(BallProfile::quermass_shifted, l,
                                rep.quermass_shifted[l]);
        return balls.value(BallProfile::weighted_gauss_bonnet, k, r);
      });
    emit(idx1("ULK-AREA", k), ok, note, rep.int_gb_support[k], [&, k] {
      return binomial(n, 2 * k) * factorial(2 * k) * omega_n *
             std::pow(area_ratio, (n + 1.0 - 2 * k) / n);
    });
  }

  return out;
}

double monotonicity_violation(const TimeSeries& series, std::string_view key,
                              bool nonincreasing) {
  if (series.records.size() < 3)
    throw InsufficientData("monotonicity check needs at least 3 records");
  double scale = 0.0, worst = 0.0;
  double prev = 0.0;
  bool first = true;
  for (const auto& rec : series.records) {
    double x = report_value(rec.report, key);
    scale = std::max(scale, std::abs(x));
    if (!first) {
      double move = nonincreasing ? (x - prev) : (prev - x);
      worst = std::max(worst, move);
    }
    prev = x;
    first = false;
  }
  return worst <= 0.0 ? 0.0 : worst / std::max(scale, 1e-300);
}

DecayFit decay_fit(const TimeSeries& series) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& rec : series.records)
    if (rec.max_grad_sq > 1e-24)
      pts.emplace_back(rec.t, std::log(rec.max_grad_sq));
  if (pts.size() < 10)
    throw InsufficientData("decay fit needs at least 10 usable records");
  size_t start = pts.size() / 2;
  size_t count = pts.size() - start;
  double st = 0, sy = 0;
  for (size_t i = start; i < pts.size(); ++i) {
    st += pts[i].first;
    sy += pts[i].second;
  }
  double mt = st / count, my = sy / count;
  double stt = 0, sty = 0, syy = 0;
  for (size_t i = start; i < pts.size(); ++i) {
    double dt = pts[i].first - mt, dy = pts[i].second - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  DecayFit fit;
  fit.points_used = static_cast<int>(count);
  double slope = (stt > 0.0) ? sty / stt : 0.0;
  fit.alpha = -slope;
  double ss_res = syy - slope * sty;
  fit.r_squared = (syy > 1e-30) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::uint64_t SampleRng::next() {
  // splitmix64: identical sequences on every platform
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SampleRng::uniform(double a, double b) {
  double u = (next() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

int SampleRng::uniform_int(int a, int b) {
  return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1));
}

namespace {

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

IdentityBattery identity_battery(int dim, int samples, std::uint64_t seed) {
  if (dim < 2) throw std::domain_error("identity_battery: dimension >= 2");
  SampleRng rng(seed * 0x5851f42d4c957f2dull + dim);
  const int n = dim;

  std::vector<std::pair<std::string, double>> checks = {
      {"newton_contraction", 0.0}, {"newton_trace", 0.0},
      {"newton_square", 0.0},      {"homogeneity", 0.0},
      {"maclaurin_gap", 0.0},      {"quotient_trace_bounds", 0.0},
      {"quotient_square_bounds", 0.0}, {"gb_pair_positive", 0.0},
      {"gb_pair_inequality", 0.0}, {"gb_expansions_agree", 0.0}};
  auto bump = [&](const char* name, double v) {
    for (auto& [k, val] : checks)
      if (k == name) val = std::max(val, v);
  };

  std::vector<double> kap(n), kpos(n), kbig(n), scaled(n), shifted(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) {
      kap[i] = rng.uniform(-1.0, 3.0);
      kpos[i] = rng.uniform(0.05, 5.0);
      kbig[i] = rng.uniform(1.0 + 1e-6, 4.0);
    }

    auto e = elementary_all(kap);
    double e1 = e[1];
    for (int m = 1; m <= n; ++m) {
      auto grad = elementary_gradient(kap, m);
      double c1 = 0, c2 = 0, c3 = 0;
      for (int i = 0; i < n; ++i) {
        c1 += grad[i] * kap[i];
        c2 += grad[i];
        c3 += grad[i] * kap[i] * kap[i];
      }
      double em1 = (m + 1 <= n) ? e[m + 1] : 0.0;
      bump("newton_contraction", rel_diff(c1, m * e[m]));
      bump("newton_trace", rel_diff(c2, m * e[m - 1]));
      bump("newton_square", rel_diff(c3, n * e1 * e[m] - (n - m) * em1));
    }

    double c = rng.uniform(0.2, 2.0);
    for (int i = 0; i < n; ++i) scaled[i] = c * kap[i];
    auto esc = elementary_all(scaled);
    double cm = 1.0;
    for (int m = 1; m <= n; ++m) {
      cm *= c;
      bump("homogeneity", rel_diff(esc[m], cm * e[m]));
    }

    auto ep = elementary_all(kpos);
    for (int m = 1; m <= n; ++m) {
      for (int k = 1; k <= m; ++k) {
        double em1 = (m + 1 <= n) ? ep[m + 1] : 0.0;
        double gap = ep[k] * ep[m] - em1 * ep[k - 1];
        double scale = std::max(1.0, std::abs(ep[k] * ep[m]));
        bump("maclaurin_gap", std::max(0.0, -gap) / scale);
      }
      auto qg = quotient_gradient(kpos, m);
      double tr = 0, sq = 0;
      for (int i = 0; i < n; ++i) {
        tr += qg[i];
        sq += qg[i] * kpos[i] * kpos[i];
      }
      double fq = ep[m] / ep[m - 1];
      bump("quotient_trace_bounds",
           std::max({0.0, 1.0 - tr, tr - m}) / std::max(1.0, double(m)));
      double f2 = fq * fq;
      double hi = (n - m + 1) * f2;
      bump("quotient_square_bounds",
           std::max({0.0, f2 - sq, sq - hi}) / std::max(1.0, hi));
    }

    for (int k = 1; 2 * k + 1 <= n; ++k) {
      auto pair = gauss_bonnet_pair(kbig, k);
      bump("gb_pair_positive", std::max({0.0, -pair.lk, -pair.nk}));
      auto eb = elementary_all(kbig);
      double lhs = eb[2 * k + 1] * pair.lk - eb[2 * k] * pair.nk;
      double scale = std::max(1.0, std::abs(eb[2 * k] * pair.nk));
      bump("gb_pair_inequality", std::max(0.0, -lhs) / scale);
    }

    for (int i = 0; i < n; ++i) shifted[i] = kap[i] - 1.0;
    for (int k = 0; 2 * k <= n; ++k) {
      double a = gauss_bonnet(kap, k);
      double b = gauss_bonnet_from_shifted(shifted, k);
      bump("gb_expansions_agree", rel_diff(a, b));
    }
  }

  IdentityBattery out;
  out.checks = std::move(checks);
  out.samples = samples;
  for (const auto& [k, v] : out.checks) out.max_violation = std::max(out.max_violation, v);
  return out;
}

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok)
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key))
    throw ConfigError("missing key \"" + std::string(key) + "\" in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for \"" + std::string(key) + "\" in " + where);
  }
}

template <typename T>
T optional(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for \"" + std::string(key) + "\" in " + where);
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j,
                 {"n", "mode", "grid_N", "initial", "flow", "tolerances",
                  "seed", "out_dir"},
                 "config");

  RunConfig cfg;
  cfg.dim = require<int>(j, "n", "config");
  std::string mode = require<std::string>(j, "mode", "config");
  if (mode == "axisymmetric") cfg.mode = GridMode::axisymmetric;
  else if (mode == "full2d") cfg.mode = GridMode::full2d;
  else throw ConfigError("mode must be \"axisymmetric\" or \"full2d\"");
  cfg.grid_n = require<int>(j, "grid_N", "config");
  if (cfg.dim < 2) throw ConfigError("n must be >= 2");
  if (cfg.grid_n < 16) throw ConfigError("grid_N must be >= 16");
  if (cfg.mode == GridMode::full2d && cfg.dim != 2)
    throw ConfigError("full2d mode requires n = 2");

  const json& ini = j.at("initial");
  if (!ini.is_object()) throw ConfigError("\"initial\" must be an object");
  reject_unknown(ini, {"kind", "r0", "eps", "freq"}, "initial");
  cfg.initial.kind = require<std::string>(ini, "kind", "initial");
  if (cfg.initial.kind != "sphere" && cfg.initial.kind != "perturbed_sphere")
    throw ConfigError("initial.kind must be \"sphere\" or \"perturbed_sphere\"");
  cfg.initial.r0 = require<double>(ini, "r0", "initial");
  cfg.initial.eps = optional<double>(ini, "eps", 0.0, "initial");
  cfg.initial.freq = optional<int>(ini, "freq", 2, "initial");
  if (!(cfg.initial.r0 > 0.0)) throw ConfigError("initial.r0 must be positive");

  const json& fl = j.at("flow");
  if (!fl.is_object()) throw ConfigError("\"flow\" must be an object");
  reject_unknown(fl,
                 {"family", "m", "integrator", "cfl_safety", "t_max",
                  "stop_grad_sq", "record_every"},
                 "flow");
  std::string family = require<std::string>(fl, "family", "flow");
  if (family == "classical") cfg.flow.family = FlowFamily::classical;
  else if (family == "shifted") cfg.flow.family = FlowFamily::shifted;
  else throw ConfigError("flow.family must be \"classical\" or \"shifted\"");
  cfg.flow.m = require<int>(fl, "m", "flow");
  if (cfg.flow.m < 1 || cfg.flow.m > cfg.dim)
    throw ConfigError("flow.m must lie in 1..n");
  std::string integ = optional<std::string>(fl, "integrator", "rk4", "flow");
  if (integ == "euler") cfg.flow.integrator = Integrator::euler;
  else if (integ == "rk2") cfg.flow.integrator = Integrator::rk2;
  else if (integ == "rk4") cfg.flow.integrator = Integrator::rk4;
  else throw ConfigError("flow.integrator must be euler, rk2 or rk4");
  cfg.flow.cfl_safety = optional<double>(fl, "cfl_safety", 0.8, "flow");
  if (!(cfg.flow.cfl_safety > 0.0 && cfg.flow.cfl_safety <= 1.0))
    throw ConfigError("flow.cfl_safety must lie in (0,1]");
  cfg.flow.t_max = optional<double>(fl, "t_max", 10.0, "flow");
  if (!(cfg.flow.t_max > 0.0)) throw ConfigError("flow.t_max must be positive");
  cfg.flow.stop_grad_sq = optional<double>(fl, "stop_grad_sq", 1e-10, "flow");
  cfg.flow.record_every = optional<double>(fl, "record_every", 0.0, "flow");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("\"tolerances\" must be an object");
    reject_unknown(t, {"eq_tol", "viol_tol"}, "tolerances");
    cfg.tol.eq_tol = optional<double>(t, "eq_tol", 1e-6, "tolerances");
    cfg.tol.viol_tol = optional<double>(t, "viol_tol", 1e-8, "tolerances");
  }
  cfg.seed = optional<std::uint64_t>(j, "seed", 0, "config");
  cfg.out_dir = optional<std::string>(j, "out_dir", ".", "config");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RadialGraph build_initial(const RunConfig& cfg) {
  if (cfg.initial.kind == "sphere")
    return make_sphere(cfg.dim, cfg.mode, cfg.grid_n, cfg.initial.r0);
  return make_perturbed_sphere(cfg.dim, cfg.mode, cfg.grid_n, cfg.initial.r0,
                               cfg.initial.eps, cfg.initial.freq);
}

void write_series_csv(const TimeSeries& series, int dim, std::ostream& os) {
  os << "t,area";
  for (int k = 0; k <= dim; ++k) os << ",W" << k;
  for (int k = 0; k <= dim; ++k) os << ",Wt" << k;
  for (int k = 0; 2 * k <= dim; ++k) os << ",intLk_" << k;
  os << ",min_shift_curv,max_grad_sq,r_min,r_max,dt\n";
  for (const auto& rec : series.records) {
    os << format_g17(rec.t) << ',' << format_g17(rec.report.area);
    for (double w : rec.report.quermass) os << ',' << format_g17(w);
    for (double w : rec.report.quermass_shifted) os << ',' << format_g17(w);
    for (double w : rec.report.int_gb) os << ',' << format_g17(w);
    os << ',' << format_g17(rec.min_shifted_curvature) << ','
       << format_g17(rec.max_grad_sq) << ',' << format_g17(rec.r_min) << ','
       << format_g17(rec.r_max) << ',' << format_g17(rec.dt) << '\n';
  }
}

}  // namespace horoflow
