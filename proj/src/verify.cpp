#include "mforge/verify.hpp"

#include <algorithm>

#include "mforge/errors.hpp"

namespace mforge {

std::vector<CompatViolation> verify_compatibility(const PartialScore& f, const MatchedMetric& d,
                                                  const ComparisonPolicy& cmp) {
  if (!(f.space() == d.space()))
    throw SpaceMismatch("score and metric live on different spaces");
  const int n = f.size();
  std::vector<CompatViolation> violations;

  std::vector<int> members;
  std::vector<Scalar> values;
  for (int x = 0; x < n; ++x) {
    members.clear();
    values.clear();
    for (int y = 0; y < n; ++y) {
      if (y != x && f.contains(x, y)) {
        members.push_back(y);
        values.push_back(f.at(x, y));
      }
    }
    const std::vector<int> level = cluster_levels(values, cmp);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (i == j || level[i] <= level[j]) continue;
        // f(x, y_i) > f(x, y_j): the metric must strictly agree.
        const Scalar& dy = d.at_pair(pair_id(n, UnorderedPair::of(x, members[i])));
        const Scalar& dz = d.at_pair(pair_id(n, UnorderedPair::of(x, members[j])));
        if (cmp.compare(dy, dz) >= 0)
          violations.push_back(CompatViolation{x, members[i], members[j]});
      }
    }
  }
  return violations;
}

namespace {

std::vector<int> members_at_level(const std::vector<int>& members, const std::vector<int>& level,
                                  int wanted) {
  std::vector<int> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (level[i] == wanted) out.push_back(members[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

MatchReport verify_matched(const ChannelMatrix& ch, const MatchedMetric& d,
                           std::optional<ComparisonPolicy> cmp) {
  if (!(ch.space() == d.space()))
    throw SpaceMismatch("channel and metric live on different spaces");
  const ComparisonPolicy policy = cmp.value_or(
      ch.all_exact() ? ComparisonPolicy::exact() : ComparisonPolicy::with_epsilon(1e-12));
  const int n = ch.size();

  MatchReport report;
  bool all_equal = true;
  bool all_contained = true;
  std::vector<int> members(static_cast<std::size_t>(n - 1));
  std::vector<Scalar> p_row;
  std::vector<Scalar> d_row;
  for (int x = 0; x < n; ++x) {
    int k = 0;
    p_row.clear();
    d_row.clear();
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      members[static_cast<std::size_t>(k++)] = y;
      p_row.push_back(ch.prob(x, y));
      d_row.push_back(d.at_pair(pair_id(n, UnorderedPair::of(x, y))));
    }
    const std::vector<int> p_level = cluster_levels(p_row, policy);
    const std::vector<int> d_level = cluster_levels(d_row, policy);
    const int p_max = *std::max_element(p_level.begin(), p_level.end());

    PerElementMatch row;
    row.x = x;
    row.argmax_p = members_at_level(members, p_level, p_max);
    row.argmin_d = members_at_level(members, d_level, 0);
    row.contained = std::includes(row.argmax_p.begin(), row.argmax_p.end(),
                                  row.argmin_d.begin(), row.argmin_d.end());
    row.equal = row.argmin_d == row.argmax_p;
    all_equal = all_equal && row.equal;
    all_contained = all_contained && row.contained;
    if (!row.contained) {
      for (int y : row.argmin_d) {
        if (!std::binary_search(row.argmax_p.begin(), row.argmax_p.end(), y)) {
          report.counterexamples.push_back(
              MatchCounterexample{x, y, d.at(x, y), ch.prob(x, y)});
        }
      }
    }
    report.per_x.push_back(std::move(row));
  }
  report.overall = all_equal ? MatchVerdict::strong_matched
                             : (all_contained ? MatchVerdict::weak_matched
                                              : MatchVerdict::not_matched);
  return report;
}

namespace {

struct OrderingEnumerator {
  const ChannelMatrix& ch;
  int pairs;
  Rat delta{1, 4};
  std::vector<int> tier;  // tier id per pair id
  std::vector<Scalar> tier_values;
  StrongExistence result;

  bool try_assignment(int tier_count) {
    // Tier t of T maps to 1 - delta + 2*delta*t/(T-1); a single tier sits at
    // the band center. Any such assignment is a valid band metric.
    tier_values.clear();
    for (int t = 0; t < tier_count; ++t) {
      if (tier_count == 1) {
        tier_values.push_back(Scalar(Rat(1)));
      } else {
        tier_values.push_back(Scalar(Rat(1) - delta +
                                     Rat(2) * delta * Rat(t) / Rat(tier_count - 1)));
      }
    }
    std::vector<Scalar> by_pair;
    by_pair.reserve(static_cast<std::size_t>(pairs));
    for (int p = 0; p < pairs; ++p)
      by_pair.push_back(tier_values[static_cast<std::size_t>(tier[static_cast<std::size_t>(p)])]);
    MatchedMetric d =
        MatchedMetric::from_pair_values(ch.space(), std::move(by_pair), Scalar(delta));
    ++result.orderings_checked;
    if (verify_matched(ch, d).overall != MatchVerdict::strong_matched) return false;

    WeakOrdering witness;
    witness.tiers.assign(static_cast<std::size_t>(tier_count), {});
    for (int p = 0; p < pairs; ++p) {
      witness.tiers[static_cast<std::size_t>(tier[static_cast<std::size_t>(p)])].push_back(
          pair_from_id(ch.space().size(), p));
    }
    result.exists = true;
    result.witness = std::move(witness);
    return true;
  }

  // Lexicographic assignments with surjectivity pruning: every one of the
  // tier_count labels must still be reachable from the remaining positions.
  bool assign(int pos, int used_mask, int tier_count) {
    if (pos == pairs) return try_assignment(tier_count);
    const int remaining = pairs - pos;
    for (int t = 0; t < tier_count; ++t) {
      const int mask = used_mask | (1 << t);
      int missing = 0;
      for (int u = 0; u < tier_count; ++u) missing += ((mask >> u) & 1) ? 0 : 1;
      if (missing > remaining - 1) continue;
      tier[static_cast<std::size_t>(pos)] = t;
      if (assign(pos + 1, mask, tier_count)) return true;
    }
    return false;
  }
};

}  // namespace

StrongExistence strong_exists_bruteforce(const ChannelMatrix& ch, bool allow_large) {
  const int pairs = pair_count(ch.size());
  if (!allow_large && pairs > kStrongOracleMaxPairs)
    throw OracleScaleExceeded("strong-existence oracle guarded to C(N,2) <= " +
                              std::to_string(kStrongOracleMaxPairs) + " pairs, got " +
                              std::to_string(pairs));

  OrderingEnumerator en{ch, pairs};
  en.tier.assign(static_cast<std::size_t>(pairs), 0);
  for (int tier_count = 1; tier_count <= pairs; ++tier_count) {
    if (en.assign(0, 0, tier_count)) break;
  }
  return std::move(en.result);
}

}  // namespace mforge
