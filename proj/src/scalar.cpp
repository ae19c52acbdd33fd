#include "mforge/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mforge/errors.hpp"

namespace mforge {

double Scalar::as_double() const {
  return is_exact() ? rat().to_double() : std::get<double>(v_);
}

namespace {

template <typename ExactOp, typename FloatOp>
Scalar combine(const Scalar& a, const Scalar& b, ExactOp exact_op, FloatOp float_op) {
  if (a.is_exact() && b.is_exact()) return Scalar(exact_op(a.rat(), b.rat()));
  return Scalar(float_op(a.as_double(), b.as_double()));
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  return combine(*this, o, [](const Rat& x, const Rat& y) { return x + y; },
                 [](double x, double y) { return x + y; });
}

Scalar Scalar::operator-(const Scalar& o) const {
  return combine(*this, o, [](const Rat& x, const Rat& y) { return x - y; },
                 [](double x, double y) { return x - y; });
}

Scalar Scalar::operator*(const Scalar& o) const {
  return combine(*this, o, [](const Rat& x, const Rat& y) { return x * y; },
                 [](double x, double y) { return x * y; });
}

Scalar Scalar::operator/(const Scalar& o) const {
  return combine(*this, o, [](const Rat& x, const Rat& y) { return x / y; },
                 [](double x, double y) { return x / y; });
}

bool Scalar::is_zero() const {
  return is_exact() ? rat().is_zero() : std::get<double>(v_) == 0.0;
}

std::string Scalar::str() const {
  if (is_exact()) return rat().str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v_));
  return buf;
}

int compare_raw(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto c = a.rat() <=> b.rat();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const double x = a.as_double();
  const double y = b.as_double();
  if (std::isnan(x) || std::isnan(y)) throw ValidationError("NaN in scalar comparison");
  return x < y ? -1 : (x > y ? 1 : 0);
}

namespace {

bool within_epsilon(double u, double v, double eps) {
  return std::abs(u - v) <= eps * std::max({1.0, std::abs(u), std::abs(v)});
}

}  // namespace

int ComparisonPolicy::compare(const Scalar& a, const Scalar& b) const {
  if (mode == Mode::exact) return compare_raw(a, b);
  const double x = a.as_double();
  const double y = b.as_double();
  if (std::isnan(x) || std::isnan(y)) throw ValidationError("NaN in scalar comparison");
  if (within_epsilon(x, y, epsilon)) return 0;
  return x < y ? -1 : 1;
}

std::vector<int> cluster_levels(const std::vector<Scalar>& values,
                                const ComparisonPolicy& cmp) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare_raw(values[a], values[b]);
    return c != 0 ? c < 0 : a < b;  // stable tie-break keeps runs deterministic
  });

  std::vector<int> level(n, 0);
  int current = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const Scalar& prev = values[idx[k - 1]];
    const Scalar& cur = values[idx[k]];
    bool same;
    if (cmp.is_exact()) {
      same = compare_raw(prev, cur) == 0;
    } else {
      same = within_epsilon(prev.as_double(), cur.as_double(), cmp.epsilon);
    }
    if (!same) ++current;
    level[idx[k]] = current;
  }
  return level;
}

}  // namespace mforge
