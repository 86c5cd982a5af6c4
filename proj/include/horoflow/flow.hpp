#pragma once

#include <string>
#include <utility>
#include <vector>

#include "horoflow/functionals.hpp"
#include "horoflow/surface.hpp"

namespace horoflow {

enum class FlowFamily { classical, shifted };
enum class Integrator { euler, rk2, rk4 };

/// Which locally constrained flow to run and how to integrate it.
/// classical: speed lambda' E_{m-1}(k)/E_m(k) - u, conserves W_m;
/// shifted:   speed (lambda'-u) E_{m-1}(kt)/E_m(kt) - u, conserves Wt_m.
struct FlowSpec {
  FlowFamily family = FlowFamily::classical;
  int m = 1;
  Integrator integrator = Integrator::rk4;
  double cfl_safety = 0.8;       // fraction of the parabolic stability limit
  double t_max = 10.0;
  double stop_grad_sq = 1e-10;   // convergence threshold on max |D phi|^2
  double record_every = 0.0;     // <= 0: t_max/200
};

enum class RunStatus { converged, horizon, blowup, convexity_lost };
const char* to_string(RunStatus s);

struct FlowRecord {
  double t = 0.0;
  FunctionalReport report;
  double min_shifted_curvature = 0.0;
  double max_grad_sq = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  double dt = 0.0;
};

struct TimeSeries {
  std::vector<FlowRecord> records;
  RunStatus status = RunStatus::horizon;
  // range of the quotient F over the initial surface and over the whole run
  double initial_f_min = 0.0, initial_f_max = 0.0;
  double run_f_min = 0.0, run_f_max = 0.0;
};

/// Normal speed at one grid point.  Throws ConeViolation (annotated with the
/// point) when the family's curvature tuple leaves the Garding cone.
double speed_at(const GeometryFields& f, int p, const FlowSpec& spec);

/// Speed at every point; optionally reports the range of the quotient F.
std::vector<double> speed_field(const GeometryFields& f, const FlowSpec& spec,
                                double* f_min = nullptr,
                                double* f_max = nullptr);

/// Parabolic stability estimate
///   dt = cfl * dtheta^2 / (2 n max[(weight/F^2) max_i dF_i / lambda^2]),
/// floored at 1e-12.
double stable_dt(const GeometryFields& f, const FlowSpec& spec, double dtheta);

struct StepResult {
  RadialGraph graph;
  double dt_used = 0.0;
  int halvings = 0;
};

/// One explicit step of dr/dt = eta v with rejection: a result that leaves
/// the cone, contains non-finite values, or drops min shifted curvature
/// below -1e-6 is retried with dt/2, at most 20 times.  Throws
/// FlowStopped(blowup/convexity_lost) when retries are exhausted.
StepResult step(const RadialGraph& g, const FlowSpec& spec, double dt);

class FlowStopped : public std::runtime_error {
 public:
  FlowStopped(RunStatus s, const std::string& what)
      : std::runtime_error(what), status_(s) {}
  RunStatus status() const { return status_; }

 private:
  RunStatus status_;
};

struct RunResult {
  TimeSeries series;
  RadialGraph final_graph;
};

/// Integrate until max |D phi|^2 < stop_grad_sq or t >= t_max, recording
/// functionals on the record_every schedule.  Enforces the comparison
/// barrier r_min(t) >= r_min(0) - 1e-6 and r_max(t) <= r_max(0) + 1e-6.
RunResult run(const RadialGraph& g0, const FlowSpec& spec);

}  // namespace horoflow
