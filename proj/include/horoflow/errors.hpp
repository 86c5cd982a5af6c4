#pragma once

#include <stdexcept>
#include <string>

namespace horoflow {

/// Thrown when a curvature tuple leaves the Garding cone required by a
/// quotient speed.  Carries the first failing symmetric-function index and,
/// when raised from a grid evaluation, the offending point.
class ConeViolation : public std::domain_error {
 public:
  ConeViolation(int index, double value, int point = -1)
      : std::domain_error("cone violation: E_" + std::to_string(index) +
                          " = " + std::to_string(value) +
                          (point >= 0 ? " at grid point " + std::to_string(point) : "")),
        index_(index), value_(value), point_(point) {}

  int index() const { return index_; }
  double value() const { return value_; }
  int point() const { return point_; }
  void set_point(int p) { point_ = p; }

 private:
  int index_;
  double value_;
  int point_;
};

/// Initial data failed horospherical-convexity validation.
class ConvexityError : public std::runtime_error {
 public:
  explicit ConvexityError(double min_shifted)
      : std::runtime_error("surface is not h-convex: min shifted curvature = " +
                           std::to_string(min_shifted)),
        min_shifted_(min_shifted) {}

  double min_shifted_curvature() const { return min_shifted_; }

 private:
  double min_shifted_;
};

/// Non-finite field values detected (signals blow-up to the time stepper).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A diagnostic fit was requested on too short a series.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace horoflow
