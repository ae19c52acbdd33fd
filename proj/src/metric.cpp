#include "mforge/metric.hpp"

#include <utility>

#include "mforge/errors.hpp"

namespace mforge {

namespace {

const Rat kOne(1);
const Rat kThird(1, 3);

}  // namespace

Semimetric::Semimetric(Space space, std::vector<Scalar> by_pair)
    : space_(std::move(space)), by_pair_(std::move(by_pair)) {
  const int expected = pair_count(space_.size());
  if (static_cast<int>(by_pair_.size()) != expected)
    throw ValidationError("semimetric needs one value per unordered pair");
  for (std::size_t i = 0; i < by_pair_.size(); ++i) {
    const Scalar& v = by_pair_[i];
    const bool positive = v.is_exact() ? v.rat().sign() > 0 : v.as_double() > 0.0;
    if (!positive) throw ValidationError("semimetric values must be positive off the diagonal");
    all_exact_ = all_exact_ && v.is_exact();
    if (compare_raw(v, by_pair_[static_cast<std::size_t>(min_id_)]) < 0)
      min_id_ = static_cast<int>(i);
    if (compare_raw(v, by_pair_[static_cast<std::size_t>(max_id_)]) > 0)
      max_id_ = static_cast<int>(i);
  }
}

Semimetric Semimetric::from_pair_values(Space space, std::vector<Scalar> by_pair) {
  return Semimetric(std::move(space), std::move(by_pair));
}

Scalar Semimetric::at(int x, int y) const {
  if (x == y) return Scalar(Rat(0));
  return at_pair(pair_id(space_.size(), UnorderedPair::of(x, y)));
}

MatchedMetric MatchedMetric::from_pair_values(Space space, std::vector<Scalar> by_pair,
                                              Scalar delta,
                                              std::optional<LinearExtension> provenance) {
  check_delta(delta);
  const int n = space.size();
  if (static_cast<int>(by_pair.size()) != pair_count(n))
    throw ValidationError("metric needs one value per unordered pair");

  // Band containment; with delta < 1/3 this already implies the triangle
  // inequality for every triple.
  const Scalar low = Scalar(Rat(1)) - delta;
  const Scalar high = Scalar(Rat(1)) + delta;
  for (const Scalar& v : by_pair) {
    if (compare_raw(v, low) < 0 || compare_raw(v, high) > 0)
      throw ValidationError("metric value " + v.str() + " outside the band [1-delta, 1+delta]");
  }

  if (provenance) {
    if (!(provenance->space() == space))
      throw SpaceMismatch("provenance extension lives on a different space");
    // Strict value order must reproduce the rank order.
    const auto& order = provenance->order();
    for (std::size_t k = 1; k < order.size(); ++k) {
      const int prev = pair_id(n, order[k - 1]);
      const int cur = pair_id(n, order[k]);
      if (compare_raw(by_pair[static_cast<std::size_t>(prev)],
                      by_pair[static_cast<std::size_t>(cur)]) >= 0)
        throw ValidationError("metric values do not follow the provenance order");
    }
  }
  return MatchedMetric(std::move(space), std::move(by_pair), std::move(delta),
                       std::move(provenance));
}

Scalar MatchedMetric::at(int x, int y) const {
  if (x == y) return Scalar(Rat(0));
  return at_pair(pair_id(space_.size(), UnorderedPair::of(x, y)));
}

Semimetric semimetric_from_extension(const LinearExtension& ext) {
  const int n = ext.space().size();
  std::vector<Scalar> by_pair(static_cast<std::size_t>(pair_count(n)), Scalar(Rat(0)));
  for (int id = 0; id < pair_count(n); ++id) {
    by_pair[static_cast<std::size_t>(id)] = Scalar(Rat(ext.rank1(pair_from_id(n, id))));
  }
  return Semimetric::from_pair_values(ext.space(), std::move(by_pair));
}

void check_delta(const Scalar& delta) {
  bool ok;
  if (delta.is_exact()) {
    ok = delta.rat().sign() > 0 && delta.rat() < kThird;
  } else {
    ok = delta.as_double() > 0.0 && delta.as_double() < 1.0 / 3.0;
  }
  if (!ok)
    throw DeltaOutOfRange("delta = " + delta.str() + " must lie strictly inside (0, 1/3)");
}

MatchedMetric band_metric(const Semimetric& e, const Scalar& delta,
                          std::optional<LinearExtension> provenance) {
  check_delta(delta);
  const Scalar& lo = e.min_value();
  const Scalar& hi = e.max_value();
  const bool degenerate = compare_raw(lo, hi) == 0;

  std::vector<Scalar> by_pair;
  by_pair.reserve(e.pair_values().size());
  if (degenerate) {
    // All off-diagonal values equal: the only order-preserving image is a
    // constant; use the band center.
    for (std::size_t i = 0; i < e.pair_values().size(); ++i) by_pair.push_back(Scalar(kOne));
  } else {
    const Scalar one(kOne);
    const Scalar two(Rat(2));
    const Scalar span = hi - lo;
    for (const Scalar& v : e.pair_values()) {
      by_pair.push_back(one - delta + two * delta * ((v - lo) / span));
    }
  }
  return MatchedMetric::from_pair_values(e.space(), std::move(by_pair), delta,
                                         std::move(provenance));
}

std::variant<MatchedMetric, CycleWitness> synthesize(const ChannelMatrix& ch,
                                                     const Scalar& delta,
                                                     std::optional<ComparisonPolicy> cmp) {
  check_delta(delta);
  const PartialScore f = score_from_channel(ch);
  const ComparisonPolicy policy = cmp.value_or(f.default_policy());
  const PairPreferenceGraph graph = build_graph(f, policy);
  if (auto witness = find_violation_cycle(graph)) return std::move(*witness);
  LinearExtension ext = linear_extension(graph);
  Semimetric e = semimetric_from_extension(ext);
  return band_metric(e, delta, std::move(ext));
}

}  // namespace mforge
