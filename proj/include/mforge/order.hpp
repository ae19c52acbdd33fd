// Order theory over unordered pairs: the strict preference digraph built
// from a score, cycle detection (the construction's premise), deterministic
// linear extension, and the exhaustive sequence oracle.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mforge/channel.hpp"
#include "mforge/errors.hpp"
#include "mforge/scalar.hpp"
#include "mforge/space.hpp"

namespace mforge {

struct UnorderedPair {
  int lo = 0;
  int hi = 0;  // invariant: lo < hi

  static UnorderedPair of(int a, int b);
  bool contains(int e) const { return e == lo || e == hi; }
  int other(int e) const { return e == lo ? hi : lo; }

  friend bool operator==(const UnorderedPair&, const UnorderedPair&) = default;
  friend auto operator<=>(const UnorderedPair&, const UnorderedPair&) = default;
};

int pair_count(int n);
/// Index of a pair in the lexicographic (lo, hi) enumeration.
int pair_id(int n, const UnorderedPair& p);
UnorderedPair pair_from_id(int n, int id);

/// Pairs {x,y}, {x,z} whose scores tie at the shared element x.
struct TieGroup {
  int shared_element;
  std::vector<UnorderedPair> pairs;
};

/// Strict digraph on all C(N,2) unordered pairs. An edge a -> b means a and
/// b share exactly one element x and f(x, other(a)) > f(x, other(b)): a is
/// strictly closer, so a must precede b in any compatible order.
class PairPreferenceGraph {
 public:
  const Space& space() const { return space_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const UnorderedPair& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<UnorderedPair>& nodes() const { return nodes_; }
  const std::vector<int>& successors(int id) const { return adj_[static_cast<std::size_t>(id)]; }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<TieGroup>& tie_groups() const { return tie_groups_; }
  std::size_t tied_pair_count() const;

 private:
  friend PairPreferenceGraph build_graph(const PartialScore&, const ComparisonPolicy&);

  Space space_ = Space::with_size(2);
  std::vector<UnorderedPair> nodes_;
  std::vector<std::vector<int>> adj_;
  std::vector<TieGroup> tie_groups_;
  std::size_t edge_count_ = 0;
};

PairPreferenceGraph build_graph(const PartialScore& f, const ComparisonPolicy& cmp);

struct PairInequality {
  int subject;  // x in f(x, closer) > f(x, farther)
  int closer;
  int farther;
};

/// A closed chain of strict preferences. The element sequence satisfies all
/// premise inequalities while the final one contradicts the required
/// conclusion, so no compatible metric can exist.
struct CycleWitness {
  Space space = Space::with_size(2);
  std::vector<UnorderedPair> pair_cycle;     // z_i, consecutive strict edges, closing
  std::vector<int> element_sequence;         // x_i shared by z_i and z_{i+1}
  std::vector<PairInequality> inequalities;  // one per edge; the last is the contradiction

  int length() const { return static_cast<int>(pair_cycle.size()); }
  std::string to_text() const;
};

/// Builds the canonical witness from a cyclic element sequence
/// (z_i = {x_{i-1}, x_i}); both the cycle detector and the brute-force
/// oracle reduce to this form.
CycleWitness witness_from_elements(const Space& space, const std::vector<int>& cycle);

/// None iff the strict digraph is acyclic; otherwise a shortest cycle,
/// deterministically chosen.
std::optional<CycleWitness> find_violation_cycle(const PairPreferenceGraph& gr);

/// Total order on all pairs with integer ranks as the order embedding g.
class LinearExtension {
 public:
  LinearExtension(Space space, std::vector<UnorderedPair> order);

  const Space& space() const { return space_; }
  const std::vector<UnorderedPair>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }

  /// 1-based rank; g(pair) = rank as an exact integer.
  int rank1(const UnorderedPair& p) const;

 private:
  Space space_;
  std::vector<UnorderedPair> order_;
  std::vector<int> rank_by_id_;
};

struct CycleExists : Error {
  explicit CycleExists(CycleWitness w);
  CycleWitness witness;
};

/// Deterministic topological order: among available nodes the smallest under
/// lexicographic (lo, hi) is emitted first. Throws CycleExists (with the
/// witness) when the premise fails.
LinearExtension linear_extension(const PairPreferenceGraph& gr);

inline constexpr int kOracleMaxElements = 6;
inline constexpr int kOracleMaxLength = 8;

/// Exhaustive and independent of the digraph machinery: enumerates cyclic
/// element sequences (adjacent elements distinct) and checks the premise
/// chain directly with raw comparisons. Depth-first, elements ascending, so
/// the returned witness is reproducible.
std::optional<CycleWitness> premise_bruteforce(const PartialScore& f, int max_len,
                                               bool allow_large = false);

}  // namespace mforge
