#include "mforge/order.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>

namespace mforge {

UnorderedPair UnorderedPair::of(int a, int b) {
  if (a == b) throw ValidationError("unordered pair needs two distinct elements");
  return a < b ? UnorderedPair{a, b} : UnorderedPair{b, a};
}

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_id(int n, const UnorderedPair& p) {
  return p.lo * (2 * n - p.lo - 1) / 2 + (p.hi - p.lo - 1);
}

UnorderedPair pair_from_id(int n, int id) {
  int lo = 0;
  int row = n - 1;  // pairs with this lo
  while (id >= row) {
    id -= row;
    ++lo;
    --row;
  }
  return UnorderedPair{lo, lo + 1 + id};
}

std::size_t PairPreferenceGraph::tied_pair_count() const {
  std::size_t total = 0;
  for (const auto& g : tie_groups_) total += g.pairs.size();
  return total;
}

PairPreferenceGraph build_graph(const PartialScore& f, const ComparisonPolicy& cmp) {
  PairPreferenceGraph gr;
  gr.space_ = f.space();
  const int n = f.size();
  const int pairs = pair_count(n);
  gr.nodes_.reserve(static_cast<std::size_t>(pairs));
  for (int lo = 0; lo < n; ++lo) {
    for (int hi = lo + 1; hi < n; ++hi) gr.nodes_.push_back(UnorderedPair{lo, hi});
  }
  gr.adj_.assign(static_cast<std::size_t>(pairs), {});

  // One row per shared element x: cluster the scores f(x, .), then emit an
  // edge for every strictly ordered pair of clusters and a tie group per
  // cluster of size >= 2. Pairs with (x, y) outside the domain simply do not
  // appear in the row (incomparability case 2).
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
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (level[i] == level[j]) continue;
        const std::size_t closer = level[i] > level[j] ? i : j;  // higher score, shorter distance
        const std::size_t farther = closer == i ? j : i;
        const int src = pair_id(n, UnorderedPair::of(x, members[closer]));
        const int dst = pair_id(n, UnorderedPair::of(x, members[farther]));
        gr.adj_[static_cast<std::size_t>(src)].push_back(dst);
        ++gr.edge_count_;
      }
    }

    int max_level = -1;
    for (int l : level) max_level = std::max(max_level, l);
    for (int l = 0; l <= max_level; ++l) {
      TieGroup group{x, {}};
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (level[i] == l) group.pairs.push_back(UnorderedPair::of(x, members[i]));
      }
      if (group.pairs.size() >= 2) {
        std::sort(group.pairs.begin(), group.pairs.end());
        gr.tie_groups_.push_back(std::move(group));
      }
    }
  }

  for (auto& succ : gr.adj_) std::sort(succ.begin(), succ.end());
  return gr;
}

std::string CycleWitness::to_text() const {
  std::string out;
  const auto lab = [&](int e) { return space.label(e); };
  for (std::size_t i = 0; i < pair_cycle.size(); ++i) {
    if (i) out += " -> ";
    out += "{" + lab(pair_cycle[i].lo) + "," + lab(pair_cycle[i].hi) + "}";
  }
  out += " -> {" + lab(pair_cycle[0].lo) + "," + lab(pair_cycle[0].hi) + "}\n";
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    const auto& q = inequalities[i];
    out += "f(" + lab(q.subject) + "," + lab(q.closer) + ") > f(" + lab(q.subject) + "," +
           lab(q.farther) + ")";
    out += i + 1 == inequalities.size() ? "  [contradicts the premise]\n" : "\n";
  }
  return out;
}

CycleWitness witness_from_elements(const Space& space, const std::vector<int>& cycle) {
  const int len = static_cast<int>(cycle.size());
  CycleWitness w;
  w.space = space;
  w.element_sequence = cycle;
  w.pair_cycle.reserve(static_cast<std::size_t>(len));
  w.inequalities.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    const int prev = cycle[static_cast<std::size_t>((i + len - 1) % len)];
    const int cur = cycle[static_cast<std::size_t>(i)];
    const int next = cycle[static_cast<std::size_t>((i + 1) % len)];
    // pair_cycle[i] = {x_{i-1}, x_i}; inequalities[i] is the edge
    // pair_cycle[i] -> pair_cycle[i+1], pivoting on their shared x_i.
    w.pair_cycle.push_back(UnorderedPair::of(prev, cur));
    w.inequalities.push_back(PairInequality{cur, prev, next});
  }
  return w;
}

namespace {

// Iterative Tarjan; returns the SCC id per node, ids in reverse topological
// discovery order. Node counts reach C(N,2), so no recursion.
std::vector<int> strongly_connected_components(const PairPreferenceGraph& gr, int& scc_count) {
  const int n = gr.node_count();
  constexpr int kUnvisited = -1;
  std::vector<int> index(static_cast<std::size_t>(n), kUnvisited);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), kUnvisited);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  struct Frame {
    int node;
    std::size_t next_child;
  };
  std::vector<Frame> call;
  int next_index = 0;
  scc_count = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& fr = call.back();
      const int v = fr.node;
      if (fr.next_child == 0) {
        index[static_cast<std::size_t>(v)] = lowlink[static_cast<std::size_t>(v)] = next_index++;
        stack.push_back(v);
        on_stack[static_cast<std::size_t>(v)] = 1;
      }
      const auto& succ = gr.successors(v);
      bool descended = false;
      while (fr.next_child < succ.size()) {
        const int w = succ[fr.next_child++];
        if (index[static_cast<std::size_t>(w)] == kUnvisited) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<std::size_t>(w)]) {
          lowlink[static_cast<std::size_t>(v)] =
              std::min(lowlink[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
        }
      }
      if (descended) continue;
      if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = scc_count;
          if (w == v) break;
        }
        ++scc_count;
      }
      call.pop_back();
      if (!call.empty()) {
        auto& parent = call.back();
        lowlink[static_cast<std::size_t>(parent.node)] =
            std::min(lowlink[static_cast<std::size_t>(parent.node)],
                     lowlink[static_cast<std::size_t>(v)]);
      }
    }
  }
  return comp;
}

}  // namespace

std::optional<CycleWitness> find_violation_cycle(const PairPreferenceGraph& gr) {
  const int n_elems = gr.space().size();
  int scc_count = 0;
  const std::vector<int> comp = strongly_connected_components(gr, scc_count);

  std::vector<int> comp_size(static_cast<std::size_t>(scc_count), 0);
  for (int c : comp) ++comp_size[static_cast<std::size_t>(c)];

  // Shortest cycle over all nontrivial SCCs: BFS from every member node,
  // restricted to its SCC. A globally shortest cycle never chains two edges
  // on the same shared element (the within-row shortcut edge would yield a
  // shorter one), so consecutive pairs overlap in exactly one element and
  // the element sequence below is well defined.
  std::vector<int> best_cycle;
  const int node_count = gr.node_count();
  std::vector<int> dist(static_cast<std::size_t>(node_count));
  std::vector<int> parent(static_cast<std::size_t>(node_count));
  for (int start = 0; start < node_count; ++start) {
    const int c = comp[static_cast<std::size_t>(start)];
    if (comp_size[static_cast<std::size_t>(c)] < 2) continue;
    if (!best_cycle.empty() && static_cast<int>(best_cycle.size()) <= 3) break;  // minimum possible
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(start)] = 0;
    std::deque<int> queue{start};
    int closing = -1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      if (!best_cycle.empty() &&
          dist[static_cast<std::size_t>(v)] + 1 >= static_cast<int>(best_cycle.size()))
        break;
      for (int w : gr.successors(v)) {
        if (comp[static_cast<std::size_t>(w)] != c) continue;
        if (w == start) {
          closing = v;
          queue.clear();
          break;
        }
        if (dist[static_cast<std::size_t>(w)] == -1) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(w)] = v;
          queue.push_back(w);
        }
      }
    }
    if (closing == -1) continue;
    std::vector<int> cycle;
    for (int v = closing; v != start; v = parent[static_cast<std::size_t>(v)]) cycle.push_back(v);
    cycle.push_back(start);
    std::reverse(cycle.begin(), cycle.end());
    if (best_cycle.empty() || cycle.size() < best_cycle.size()) best_cycle = std::move(cycle);
  }

  if (best_cycle.empty()) return std::nullopt;

  // Canonical start: the smallest pair id in the cycle.
  const auto first = std::min_element(best_cycle.begin(), best_cycle.end());
  std::rotate(best_cycle.begin(), first, best_cycle.end());

  const int len = static_cast<int>(best_cycle.size());
  std::vector<int> elements;
  elements.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    const UnorderedPair& a = gr.node(best_cycle[static_cast<std::size_t>(i)]);
    const UnorderedPair& b = gr.node(best_cycle[static_cast<std::size_t>((i + 1) % len)]);
    const int shared = b.contains(a.lo) ? a.lo : a.hi;
    assert(b.contains(shared) && !(b.contains(a.lo) && b.contains(a.hi)));
    elements.push_back(shared);  // x_i = z_i cap z_{i+1}
  }
  CycleWitness w = witness_from_elements(gr.space(), elements);
  (void)n_elems;
  assert(w.pair_cycle.size() == best_cycle.size());
  assert(pair_id(n_elems, w.pair_cycle[0]) == best_cycle[0]);
  return w;
}

LinearExtension::LinearExtension(Space space, std::vector<UnorderedPair> order)
    : space_(std::move(space)), order_(std::move(order)) {
  const int n = space_.size();
  rank_by_id_.assign(static_cast<std::size_t>(pair_count(n)), 0);
  if (static_cast<int>(order_.size()) != pair_count(n))
    throw ValidationError("linear extension must order every pair");
  for (std::size_t pos = 0; pos < order_.size(); ++pos) {
    int& slot = rank_by_id_[static_cast<std::size_t>(pair_id(n, order_[pos]))];
    if (slot != 0) throw ValidationError("linear extension repeats a pair");
    slot = static_cast<int>(pos) + 1;
  }
}

int LinearExtension::rank1(const UnorderedPair& p) const {
  return rank_by_id_[static_cast<std::size_t>(pair_id(space_.size(), p))];
}

CycleExists::CycleExists(CycleWitness w)
    : Error("preference cycle of length " + std::to_string(w.length()) +
            " prevents a linear extension"),
      witness(std::move(w)) {}

LinearExtension linear_extension(const PairPreferenceGraph& gr) {
  if (auto w = find_violation_cycle(gr)) throw CycleExists(std::move(*w));

  const int nodes = gr.node_count();
  std::vector<int> indegree(static_cast<std::size_t>(nodes), 0);
  for (int v = 0; v < nodes; ++v) {
    for (int w : gr.successors(v)) ++indegree[static_cast<std::size_t>(w)];
  }
  // Node ids are already lexicographic in (lo, hi), so a min-heap on ids
  // realizes the documented tie-break.
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < nodes; ++v) {
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<UnorderedPair> order;
  order.reserve(static_cast<std::size_t>(nodes));
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(gr.node(v));
    for (int w : gr.successors(v)) {
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
  }
  assert(static_cast<int>(order.size()) == nodes);
  return LinearExtension(gr.space(), std::move(order));
}

namespace {

struct PremiseSearch {
  const PartialScore& f;
  int n;
  int max_len;
  std::vector<int> seq;

  bool strictly_greater(int x, int a, int b) const {
    if (!f.contains(x, a) || !f.contains(x, b)) return false;
    return compare_raw(f.at(x, a), f.at(x, b)) > 0;
  }

  // Valid closure: the wrap-around inequality and the violated conclusion.
  bool closes() const {
    const std::size_t len = seq.size();
    if (len < 2 || seq.back() == seq.front()) return false;
    if (!strictly_greater(seq[0], seq[len - 1], seq[1])) return false;
    return strictly_greater(seq[len - 1], seq[len - 2], seq[0]);
  }

  bool dfs() {
    if (seq.size() >= 2 && closes()) return true;
    if (static_cast<int>(seq.size()) == max_len) return false;
    for (int next = 0; next < n; ++next) {
      if (next == seq.back()) continue;  // adjacent elements distinct
      // Interior inequality f(x_{k-1}, x_{k-2}) > f(x_{k-1}, x_k) must hold
      // for every extension and closure of this prefix.
      if (seq.size() >= 2 &&
          !strictly_greater(seq[seq.size() - 1], seq[seq.size() - 2], next))
        continue;
      seq.push_back(next);
      if (dfs()) return true;
      seq.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<CycleWitness> premise_bruteforce(const PartialScore& f, int max_len,
                                               bool allow_large) {
  const int n = f.size();
  if (!allow_large && (n > kOracleMaxElements || max_len > kOracleMaxLength))
    throw OracleScaleExceeded("premise oracle guarded to |X| <= " +
                              std::to_string(kOracleMaxElements) + ", max_len <= " +
                              std::to_string(kOracleMaxLength));
  if (max_len < 2) return std::nullopt;

  PremiseSearch search{f, n, max_len, {}};
  for (int first = 0; first < n; ++first) {
    search.seq.assign(1, first);
    if (search.dfs()) return witness_from_elements(f.space(), search.seq);
  }
  return std::nullopt;
}

}  // namespace mforge
