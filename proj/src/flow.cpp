#include "horoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "horoflow/symmetric.hpp"

namespace horoflow {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::horizon: return "horizon";
    case RunStatus::blowup: return "blowup";
    case RunStatus::convexity_lost: return "convexity_lost";
  }
  return "?";
}

namespace {

constexpr double kDtFloor = 1e-12;
constexpr double kStepConvexitySlack = -1e-6;
constexpr int kMaxHalvings = 20;

std::span<const double> flow_tuple(const GeometryFields& f, int p,
                                   const FlowSpec& spec) {
  return spec.family == FlowFamily::classical ? f.kappa_at(p)
                                              : f.kappa_shifted_at(p);
}

double flow_weight(const GeometryFields& f, int p, const FlowSpec& spec) {
  return spec.family == FlowFamily::classical ? f.lam_deriv[p]
                                              : f.lam_deriv[p] - f.u[p];
}

}  // namespace

double speed_at(const GeometryFields& f, int p, const FlowSpec& spec) {
  try {
    double quot = quotient(flow_tuple(f, p, spec), spec.m - 1, spec.m);
    return flow_weight(f, p, spec) * quot - f.u[p];
  } catch (const ConeViolation& e) {
    throw ConeViolation(e.index(), e.value(), p);
  }
}

std::vector<double> speed_field(const GeometryFields& f, const FlowSpec& spec,
                                double* f_min, double* f_max) {
  std::vector<double> eta(f.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int p = 0; p < f.size(); ++p) {
    eta[p] = speed_at(f, p, spec);
    if (f_min != nullptr || f_max != nullptr) {
      double fq = quotient(flow_tuple(f, p, spec), spec.m, spec.m - 1);
      lo = std::min(lo, fq);
      hi = std::max(hi, fq);
    }
  }
  if (f_min) *f_min = lo;
  if (f_max) *f_max = hi;
  return eta;
}

double stable_dt(const GeometryFields& f, const FlowSpec& spec, double dtheta) {
  double dmax = 0.0;
  for (int p = 0; p < f.size(); ++p) {
    auto tuple = flow_tuple(f, p, spec);
    if (cone_violation_index(tuple, spec.m) != 0) return kDtFloor;
    double fq = quotient(tuple, spec.m, spec.m - 1);
    auto grad = quotient_gradient(tuple, spec.m);
    double gmax = 0.0;
    for (double gi : grad) gmax = std::max(gmax, std::abs(gi));
    double w = std::max(flow_weight(f, p, spec), 0.0);
    double lam2 = f.lam[p] * f.lam[p];
    if (fq <= 0.0) return kDtFloor;
    dmax = std::max(dmax, w / (fq * fq) * gmax / lam2);
  }
  if (dmax <= 0.0) return kDtFloor;
  double dt = spec.cfl_safety * dtheta * dtheta / (2.0 * f.dim * dmax);
  return std::max(dt, kDtFloor);
}

namespace {

// dr/dt = eta v over the whole grid; throws ConeViolation on bad tuples.
std::vector<double> rhs(const RadialGraph& g, const FlowSpec& spec) {
  GeometryFields f = geometry(g);
  std::vector<double> out = speed_field(f, spec);
  for (int p = 0; p < f.size(); ++p) out[p] *= f.v[p];
  return out;
}

RadialGraph advanced(const RadialGraph& g, const std::vector<double>& dir,
                     double dt) {
  RadialGraph out = g;
  for (size_t i = 0; i < out.r.size(); ++i) out.r[i] += dt * dir[i];
  return out;
}

RadialGraph attempt(const RadialGraph& g, const FlowSpec& spec, double dt) {
  switch (spec.integrator) {
    case Integrator::euler: {
      return advanced(g, rhs(g, spec), dt);
    }
    case Integrator::rk2: {
      auto k1 = rhs(g, spec);
      auto k2 = rhs(advanced(g, k1, 0.5 * dt), spec);
      return advanced(g, k2, dt);
    }
    case Integrator::rk4: {
      auto k1 = rhs(g, spec);
      auto k2 = rhs(advanced(g, k1, 0.5 * dt), spec);
      auto k3 = rhs(advanced(g, k2, 0.5 * dt), spec);
      auto k4 = rhs(advanced(g, k3, dt), spec);
      std::vector<double> comb(k1.size());
      for (size_t i = 0; i < comb.size(); ++i)
        comb[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
      return advanced(g, comb, dt);
    }
  }
  throw std::logic_error("unknown integrator");
}

}  // namespace

StepResult step(const RadialGraph& g, const FlowSpec& spec, double dt) {
  bool convexity_was_last_failure = false;
  for (int halvings = 0; halvings <= kMaxHalvings; ++halvings) {
    bool ok = true;
    RadialGraph candidate;
    try {
      candidate = attempt(g, spec, dt);
      for (double r : candidate.r)
        if (!std::isfinite(r) || r <= 0.0) throw GeometryError("radius blow-up");
      GeometryFields f = geometry(candidate);
      double ms = min_shifted_curvature(f);
      if (ms < kStepConvexitySlack) {
        convexity_was_last_failure = true;
        ok = false;
      } else {
        // the family's cone must survive the step as well
        for (int p = 0; p < f.size() && ok; ++p)
          if (cone_violation_index(
                  spec.family == FlowFamily::classical ? f.kappa_at(p)
                                                       : f.kappa_shifted_at(p),
                  spec.m) != 0)
            ok = false;
        if (!ok) convexity_was_last_failure = false;
      }
    } catch (const ConeViolation&) {
      ok = false;
      convexity_was_last_failure = false;
    } catch (const GeometryError&) {
      ok = false;
      convexity_was_last_failure = false;
    }
    if (ok) return {std::move(candidate), dt, halvings};
    dt *= 0.5;
  }
  throw FlowStopped(convexity_was_last_failure ? RunStatus::convexity_lost
                                               : RunStatus::blowup,
                    "step rejected after dt halvings exhausted");
}

RunResult run(const RadialGraph& g0, const FlowSpec& spec) {
  if (spec.m < 1 || spec.m > g0.dim)
    throw std::domain_error("flow index m must lie in 1..n");
  BallProfiles balls(g0.dim);
  double record_every =
      spec.record_every > 0.0 ? spec.record_every : spec.t_max / 200.0;
  double dtheta = M_PI / g0.n_theta;

  RadialGraph g = g0;
  TimeSeries series;
  double t = 0.0;
  double next_record = 0.0;
  double dt_last = 0.0;
  double r_min0 = *std::min_element(g.r.begin(), g.r.end());
  double r_max0 = *std::max_element(g.r.begin(), g.r.end());
  constexpr double kBarrierTol = 1e-6;

  bool first = true;
  while (true) {
    GeometryFields f = geometry(g);
    double fmin, fmax;
    std::vector<double> eta = speed_field(f, spec, &fmin, &fmax);
    if (first) {
      series.initial_f_min = fmin;
      series.initial_f_max = fmax;
      series.run_f_min = fmin;
      series.run_f_max = fmax;
      first = false;
    } else {
      series.run_f_min = std::min(series.run_f_min, fmin);
      series.run_f_max = std::max(series.run_f_max, fmax);
    }

    double r_min = *std::min_element(g.r.begin(), g.r.end());
    double r_max = *std::max_element(g.r.begin(), g.r.end());
    if (r_min < r_min0 - kBarrierTol || r_max > r_max0 + kBarrierTol)
      throw FlowStopped(RunStatus::blowup,
                        "radial comparison barrier violated");

    double grad = max_gradient_sq(f);
    bool due = t + 1e-12 * record_every >= next_record;
    bool done_converged = grad < spec.stop_grad_sq;
    bool done_horizon = t >= spec.t_max;
    if (due || done_converged || done_horizon) {
      FlowRecord rec;
      rec.t = t;
      rec.report = functional_report(f, balls);
      rec.min_shifted_curvature = min_shifted_curvature(f);
      rec.max_grad_sq = grad;
      rec.r_min = r_min;
      rec.r_max = r_max;
      rec.dt = dt_last;
      series.records.push_back(std::move(rec));
      if (due) next_record = t + record_every;
    }
    if (done_converged) {
      series.status = RunStatus::converged;
      break;
    }
    if (done_horizon) {
      series.status = RunStatus::horizon;
      break;
    }

    double dt = stable_dt(f, spec, dtheta);
    if (dt <= kDtFloor * (1.0 + 1e-9)) {
      series.status = RunStatus::blowup;
      break;
    }
    dt = std::min(dt, spec.t_max - t);
    try {
      StepResult s = step(g, spec, dt);
      g = std::move(s.graph);
      dt_last = s.dt_used;
      t += s.dt_used;
    } catch (const FlowStopped& stop) {
      series.status = stop.status();
      break;
    }
  }
  return {std::move(series), std::move(g)};
}

}  // namespace horoflow
