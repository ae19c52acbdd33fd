#include "mforge/channel.hpp"

#include <cmath>
#include <cstdlib>

#include "mforge/errors.hpp"

namespace mforge {

namespace {

const Rat kHalf(1, 2);

bool in_unit_interval(const Scalar& v) {
  if (v.is_exact()) return v.rat().sign() >= 0 && v.rat() <= Rat(1);
  const double d = v.as_double();
  return d >= 0.0 && d <= 1.0;
}

void check_axis_sum(const Scalar& sum, bool exact, const char* what, int index) {
  if (exact) {
    if (!(sum.rat() == Rat(1)))
      throw ValidationError(std::string(what) + " " + std::to_string(index) +
                            " sums to " + sum.str() + ", expected 1");
  } else {
    if (std::abs(sum.as_double() - 1.0) > 1e-9)
      throw ValidationError(std::string(what) + " " + std::to_string(index) +
                            " sums to " + sum.str() + ", expected 1 within 1e-9");
  }
}

}  // namespace

ChannelMatrix ChannelMatrix::from_entries(Space space, std::vector<std::vector<Scalar>> entries,
                                          StochasticAxis axis) {
  const int n = space.size();
  if (entries.size() != static_cast<std::size_t>(n))
    throw ValidationError("matrix row count does not match space size");
  bool all_exact = true;
  for (const auto& row : entries) {
    if (row.size() != static_cast<std::size_t>(n))
      throw ValidationError("matrix is not square");
    for (const auto& v : row) {
      if (!in_unit_interval(v)) throw ValidationError("probability outside [0,1]: " + v.str());
      all_exact = all_exact && v.is_exact();
    }
  }
  if (axis == StochasticAxis::received_row) {
    for (int x = 0; x < n; ++x) {
      Scalar sum(Rat(0));
      for (int y = 0; y < n; ++y) sum = sum + entries[x][y];
      check_axis_sum(sum, all_exact, "row", x);
    }
  } else if (axis == StochasticAxis::sent_column) {
    for (int y = 0; y < n; ++y) {
      Scalar sum(Rat(0));
      for (int x = 0; x < n; ++x) sum = sum + entries[x][y];
      check_axis_sum(sum, all_exact, "column", y);
    }
  }
  return ChannelMatrix(std::move(space), std::move(entries), axis, all_exact);
}

SymbolChannel::SymbolChannel(Scalar p01, Scalar p10)
    : p01_(std::move(p01)), p10_(std::move(p10)) {
  for (const Scalar* p : {&p01_, &p10_}) {
    const bool ok = p->is_exact() ? (p->rat().sign() >= 0 && p->rat() < kHalf)
                                  : (p->as_double() >= 0.0 && p->as_double() < 0.5);
    if (!ok)
      throw ParameterOutOfRange("flip probability " + p->str() +
                                " outside [0, 1/2) breaks channel reasonableness");
  }
}

Scalar SymbolChannel::prob(int received, int sent) const {
  if (sent == 0) return received == 1 ? p01_ : Scalar(Rat(1)) - p01_;
  return received == 0 ? p10_ : Scalar(Rat(1)) - p10_;
}

SymbolChannel make_channel(ChannelKind kind, const Scalar& p, const Scalar& q) {
  SymbolChannel ch(p, q);  // range-checks both parameters
  const bool p_zero = p.is_zero();
  const bool q_zero = q.is_zero();
  switch (kind) {
    case ChannelKind::BAC:
      if (p_zero || q_zero)
        throw KindMismatch("BAC requires both flip probabilities nonzero");
      if (compare_raw(p, q) == 0)
        throw KindMismatch("BAC requires p != q (equal probabilities are a BSC)");
      break;
    case ChannelKind::BSC:
      if (compare_raw(p, q) != 0) throw KindMismatch("BSC requires p = q");
      if (p_zero) throw KindMismatch("BSC requires a nonzero flip probability");
      break;
    case ChannelKind::Z:
      if (p_zero == q_zero)
        throw KindMismatch("Z-channel requires exactly one zero flip probability");
      break;
  }
  return ch;
}

ChannelMatrix expand_product(const ProductChannelSpec& spec, std::size_t space_cap) {
  if (spec.length < 1) throw ParameterOutOfRange("codeword length must be >= 1");
  if (spec.length >= 63 || (std::size_t{1} << spec.length) > space_cap)
    throw SpaceTooLarge("2^" + std::to_string(spec.length) + " codewords exceed the cap of " +
                        std::to_string(space_cap) + " (see METRIC_FORGE_MAX_SPACE)");
  const int m = spec.length;

  // Kronecker growth: the m-bit matrix is the symbol matrix tensored with the
  // (m-1)-bit matrix, with the symbol factor addressing the leading bit.
  std::vector<std::vector<Scalar>> cur{{spec.symbol.prob(0, 0), spec.symbol.prob(0, 1)},
                                       {spec.symbol.prob(1, 0), spec.symbol.prob(1, 1)}};
  for (int step = 1; step < m; ++step) {
    const std::size_t half = cur.size();
    const std::size_t n = half * 2;
    std::vector<std::vector<Scalar>> next(n, std::vector<Scalar>(n, Scalar(Rat(0))));
    for (int xb = 0; xb < 2; ++xb) {
      for (int yb = 0; yb < 2; ++yb) {
        const Scalar factor = spec.symbol.prob(xb, yb);
        for (std::size_t x = 0; x < half; ++x) {
          for (std::size_t y = 0; y < half; ++y) {
            next[static_cast<std::size_t>(xb) * half + x]
                [static_cast<std::size_t>(yb) * half + y] = factor * cur[x][y];
          }
        }
      }
    }
    cur = std::move(next);
  }

  return ChannelMatrix::from_entries(Space::binary_words(m), std::move(cur),
                                     StochasticAxis::sent_column);
}

PartialScore::PartialScore(Space space)
    : space_(std::move(space)),
      values_(static_cast<std::size_t>(space_.size()) * static_cast<std::size_t>(space_.size())) {}

void PartialScore::set(int x, int y, Scalar value) {
  if (x == y) throw ValidationError("score domain excludes the diagonal");
  if (x < 0 || y < 0 || x >= size() || y >= size())
    throw ValidationError("score index out of range");
  if (!value.is_exact() && !std::isfinite(value.as_double()))
    throw ValidationError("score values must be finite");
  auto& slot = values_[flat(x, y)];
  if (!slot.has_value()) ++domain_size_;
  all_exact_ = all_exact_ && value.is_exact();
  slot = std::move(value);
}

bool PartialScore::contains(int x, int y) const {
  if (x == y || x < 0 || y < 0 || x >= size() || y >= size()) return false;
  return values_[flat(x, y)].has_value();
}

const Scalar& PartialScore::at(int x, int y) const { return *values_[flat(x, y)]; }

ComparisonPolicy PartialScore::default_policy(double epsilon) const {
  return all_exact_ ? ComparisonPolicy::exact() : ComparisonPolicy::with_epsilon(epsilon);
}

PartialScore score_from_channel(const ChannelMatrix& ch) {
  PartialScore f(ch.space());
  const int n = ch.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y) f.set(x, y, ch.prob(x, y));
    }
  }
  return f;
}

namespace {

int word_bit(int word, int position, int length) { return (word >> (length - 1 - position)) & 1; }

}  // namespace

CyclicSum cyclic_sum(const ProductChannelSpec& spec, const std::vector<int>& seq, int position) {
  const int n = static_cast<int>(seq.size());
  const int m = spec.length;
  if (n < 2) throw ParameterOutOfRange("cyclic sequence needs length >= 2");
  if (position < 0 || position >= m) throw ParameterOutOfRange("symbol position out of range");
  for (int w : seq) {
    if (w < 0 || w >= (1 << m)) throw ParameterOutOfRange("codeword out of range");
  }

  CyclicSum out;
  out.exact = spec.symbol.all_exact();
  auto add_factor = [&](int received, int sent, long direction) {
    const Scalar p = spec.symbol.prob(received, sent);
    if (p.is_zero())
      throw ZeroProbabilityFactor("Pr(" + std::to_string(received) + "|" + std::to_string(sent) +
                                  ") = 0 at position " + std::to_string(position));
    if (out.exact) {
      auto [it, inserted] = out.ledger.try_emplace(p.rat(), 0);
      it->second += direction;
      if (it->second == 0) out.ledger.erase(it);
    }
    out.value += static_cast<double>(direction) * std::log(p.as_double());
  };

  for (int i = 0; i < n; ++i) {
    const int xi = word_bit(seq[static_cast<std::size_t>(i)], position, m);
    const int prev = word_bit(seq[static_cast<std::size_t>((i + n - 1) % n)], position, m);
    const int next = word_bit(seq[static_cast<std::size_t>((i + 1) % n)], position, m);
    add_factor(xi, prev, +1);
    add_factor(xi, next, -1);
  }
  return out;
}

}  // namespace mforge
