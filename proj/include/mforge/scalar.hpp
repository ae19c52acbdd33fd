// Scalar is a probability-or-score value that is either an exact rational or
// a double. Exactness is sticky: arithmetic stays exact unless a float is
// involved. ComparisonPolicy decides how two scalars are ordered, and
// cluster_levels builds the per-row tie structure used by the order and
// verify modules.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mforge/rational.hpp"

namespace mforge {

class Scalar {
 public:
  Scalar() : v_(Rat(0)) {}
  Scalar(Rat r) : v_(std::move(r)) {}        // NOLINT: implicit by design
  Scalar(double d) : v_(d) {}                // NOLINT
  Scalar(long n) : v_(Rat(n)) {}             // NOLINT

  bool is_exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rat() const { return std::get<Rat>(v_); }
  double as_double() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;

  bool is_zero() const;

  /// "a/b" for exact values, shortest round-trip decimal for floats.
  std::string str() const;

 private:
  std::variant<Rat, double> v_;
};

/// Three-way raw comparison: exact when both sides are exact, otherwise via
/// doubles with plain equality. Total order in either case.
int compare_raw(const Scalar& a, const Scalar& b);

struct ComparisonPolicy {
  enum class Mode { exact, float_eps };

  Mode mode = Mode::exact;
  double epsilon = 1e-12;  // relative: |u-v| <= eps * max(1,|u|,|v|)

  static ComparisonPolicy exact() { return {Mode::exact, 0.0}; }
  static ComparisonPolicy with_epsilon(double eps) { return {Mode::float_eps, eps}; }

  bool is_exact() const { return mode == Mode::exact; }

  /// Pairwise comparison; under float_eps, values within the relative
  /// tolerance compare equal. Not transitive under float_eps -- use
  /// cluster_levels wherever transitive equality matters.
  int compare(const Scalar& a, const Scalar& b) const;
};

/// Assigns each value a level id, 0 = smallest. Values in the same cluster
/// get the same level; under float_eps clusters are chained (each member is
/// within tolerance of its sorted neighbour), which makes equality
/// transitive inside one row. Under exact mode clusters are exact-equality
/// groups.
std::vector<int> cluster_levels(const std::vector<Scalar>& values,
                                const ComparisonPolicy& cmp);

}  // namespace mforge
