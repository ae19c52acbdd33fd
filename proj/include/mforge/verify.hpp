// Definition-level checks: compatibility of a metric with a score, weak and
// strong matchedness reports, and the exhaustive weak-ordering search for
// strong matched metrics on tiny spaces.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mforge/channel.hpp"
#include "mforge/metric.hpp"
#include "mforge/order.hpp"

namespace mforge {

/// A triple where f strictly orders the two pairs but d does not order them
/// the same strict way.
struct CompatViolation {
  int x;
  int y;  // f(x,y) > f(x,z) ...
  int z;  // ... but not d(x,y) < d(x,z)
};

/// Exhaustive over all ordered triples with both pairs in the score domain;
/// empty result means the Theorem 1 conclusion holds.
std::vector<CompatViolation> verify_compatibility(const PartialScore& f, const MatchedMetric& d,
                                                  const ComparisonPolicy& cmp);

enum class MatchVerdict { strong_matched, weak_matched, not_matched };

struct PerElementMatch {
  int x;
  std::vector<int> argmin_d;  // ascending element ids
  std::vector<int> argmax_p;
  bool contained = false;  // argmin_d subset of argmax_p
  bool equal = false;
};

struct MatchCounterexample {
  int x;
  int y;  // member of argmin_d(x) outside argmax_p(x)
  Scalar d_value;
  Scalar p_value;
};

struct MatchReport {
  MatchVerdict overall = MatchVerdict::not_matched;
  std::vector<PerElementMatch> per_x;
  std::vector<MatchCounterexample> counterexamples;

  bool at_least_weak() const { return overall != MatchVerdict::not_matched; }
};

/// Weak iff argmin_d(x) is contained in argmax_P(x) for every x, strong iff
/// they are equal for every x. Sets are computed with the channel's
/// comparison mode unless one is supplied.
MatchReport verify_matched(const ChannelMatrix& ch, const MatchedMetric& d,
                           std::optional<ComparisonPolicy> cmp = std::nullopt);

/// Total preorder on pairs: tier 0 is closest. The search space for the
/// strong-existence oracle; every tier assignment is realizable as a band
/// metric, and every metric induces one such ordering.
struct WeakOrdering {
  std::vector<std::vector<UnorderedPair>> tiers;
};

struct StrongExistence {
  bool exists = false;
  std::optional<WeakOrdering> witness;
  std::uint64_t orderings_checked = 0;
};

inline constexpr int kStrongOracleMaxPairs = 8;

/// Enumerates every weak ordering of the pair set (tier counts ascending,
/// assignments lexicographic), realizes each as a tie-permitting band
/// metric, and reports the first strong-matched one.
StrongExistence strong_exists_bruteforce(const ChannelMatrix& ch, bool allow_large = false);

}  // namespace mforge
