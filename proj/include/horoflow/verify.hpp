#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "horoflow/flow.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/hyperbolic.hpp"
#include "horoflow/surface.hpp"

namespace horoflow {

enum class Verdict { holds, equality, violated, hypotheses_unmet };
const char* to_string(Verdict v);

struct Tolerances {
  double eq_tol = 1e-6;    // |relative gap| below this counts as equality
  double viol_tol = 1e-8;  // gap below -viol_tol (and not equality) violates
};

struct InequalityRecord {
  std::string id;
  bool hypotheses_ok = false;
  std::string note;  // why hypotheses fail, or registry caveats
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_gap = 0.0;  // (lhs - rhs) / max(1, |rhs|)
  Verdict verdict = Verdict::hypotheses_unmet;
};

/// Evaluate the whole sharp-inequality registry on one surface, one record
/// per admissible index tuple.  Inadmissible combinations come back as
/// hypotheses_unmet, never as exceptions.  Right-hand sides go through the
/// geodesic-ball profile inversion except where the statement itself is an
/// explicit area form.
std::vector<InequalityRecord> inequality_suite(const GeometryFields& f,
                                               const FunctionalReport& rep,
                                               const BallProfiles& balls,
                                               const Tolerances& tol = {});

/// Largest uphill move of a recorded functional along a run, normalized by
/// the functional's scale over the series; 0 for a cleanly monotone series.
double monotonicity_violation(const TimeSeries& series, std::string_view key,
                              bool nonincreasing = true);

struct DecayFit {
  double alpha = 0.0;      // decay rate of max |D phi|^2
  double r_squared = 0.0;
  int points_used = 0;
};

/// Least-squares fit of ln(max |D phi|^2) against t over the final half of
/// the records above the 1e-24 round-off floor.  Throws InsufficientData
/// with fewer than 10 usable records.
DecayFit decay_fit(const TimeSeries& series);

/// Deterministic, platform-independent uniform generator for the seeded
/// sample batteries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform(double a, double b);
  int uniform_int(int a, int b);  // inclusive

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

struct IdentityBattery {
  std::vector<std::pair<std::string, double>> checks;  // name -> max violation
  double max_violation = 0.0;
  int samples = 0;
};

/// Seeded random battery over one dimension: Newton identities, quotient
/// bounds, Newton-MacLaurin gaps, the Gauss-Bonnet pair inequality and the
/// agreement of the two Gauss-Bonnet expansions.  Violations are relative.
IdentityBattery identity_battery(int dim, int samples, std::uint64_t seed);

struct InitialSpec {
  std::string kind = "sphere";  // sphere | perturbed_sphere
  double r0 = 1.0;
  double eps = 0.0;
  int freq = 2;
};

struct RunConfig {
  int dim = 2;
  GridMode mode = GridMode::axisymmetric;
  int grid_n = 128;
  InitialSpec initial;
  FlowSpec flow;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

/// Strict parser for the JSON run configuration: unknown keys anywhere are
/// rejected with ConfigError.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config(const std::string& path);

RadialGraph build_initial(const RunConfig& cfg);

/// Series CSV: t,area,W0..Wn,Wt0..Wtn,intLk_0..,min_shift_curv,max_grad_sq,
/// r_min,r_max,dt with 17-significant-digit decimals and LF line endings.
void write_series_csv(const TimeSeries& series, int dim, std::ostream& os);

}  // namespace horoflow
