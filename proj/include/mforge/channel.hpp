// Finite channels: explicit conditional-probability matrices, binary symbol
// channels with product extensions over codewords, the score function
// f(x,y) = Pr(x|y), and the per-position cyclic log-sum.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mforge/scalar.hpp"
#include "mforge/space.hpp"

namespace mforge {

enum class StochasticAxis { sent_column, received_row, none };

/// N x N conditional probabilities, entry (x, y) = Pr(x | y) = probability of
/// receiving x given that y was sent. The declared axis records which
/// marginal sums to one; it is validated, never normalized.
class ChannelMatrix {
 public:
  static ChannelMatrix from_entries(Space space, std::vector<std::vector<Scalar>> entries,
                                    StochasticAxis axis);

  const Space& space() const { return space_; }
  int size() const { return space_.size(); }
  StochasticAxis axis() const { return axis_; }
  bool axis_unchecked() const { return axis_ == StochasticAxis::none; }
  bool all_exact() const { return all_exact_; }

  const Scalar& prob(int received, int sent) const {
    return entries_[static_cast<std::size_t>(received)][static_cast<std::size_t>(sent)];
  }
  const std::vector<std::vector<Scalar>>& entries() const { return entries_; }

 private:
  ChannelMatrix(Space space, std::vector<std::vector<Scalar>> entries, StochasticAxis axis,
                bool all_exact)
      : space_(std::move(space)), entries_(std::move(entries)), axis_(axis),
        all_exact_(all_exact) {}

  Space space_;
  std::vector<std::vector<Scalar>> entries_;
  StochasticAxis axis_;
  bool all_exact_;
};

enum class ChannelKind { BAC, BSC, Z };

/// Binary symbol channel. Reasonableness (each symbol is likelier to survive
/// than to flip) bounds both flip probabilities below 1/2.
class SymbolChannel {
 public:
  SymbolChannel(Scalar p01, Scalar p10);

  const Scalar& p01() const { return p01_; }  // Pr(receive 1 | sent 0)
  const Scalar& p10() const { return p10_; }  // Pr(receive 0 | sent 1)

  /// Pr(received | sent) for single bits.
  Scalar prob(int received, int sent) const;

  bool all_exact() const { return p01_.is_exact() && p10_.is_exact(); }

 private:
  Scalar p01_;
  Scalar p10_;
};

/// Validates kind-specific constraints: BAC needs two distinct nonzero flip
/// probabilities, BSC equal ones, Z exactly one zero.
SymbolChannel make_channel(ChannelKind kind, const Scalar& p, const Scalar& q);

struct ProductChannelSpec {
  SymbolChannel symbol;
  int length = 1;  // m >= 1; induced space has 2^m words
};

inline constexpr std::size_t kDefaultSpaceCap = std::size_t{1} << 12;

/// Materializes the product channel over all 2^m codewords,
/// entry (x, y) = prod_j Pr(x(j) | y(j)). Column-stochastic by construction.
ChannelMatrix expand_product(const ProductChannelSpec& spec,
                             std::size_t space_cap = kDefaultSpaceCap);

/// The score f on ordered pairs minus the diagonal. The domain may be
/// partial; scores from channels are total on X^2 - diagonal.
class PartialScore {
 public:
  explicit PartialScore(Space space);

  const Space& space() const { return space_; }
  int size() const { return space_.size(); }

  void set(int x, int y, Scalar value);
  bool contains(int x, int y) const;
  const Scalar& at(int x, int y) const;  // pre: contains(x, y)

  std::size_t domain_size() const { return domain_size_; }
  bool all_exact() const { return all_exact_; }

  /// Exact policy when every value is exact, float-epsilon otherwise.
  ComparisonPolicy default_policy(double epsilon = 1e-12) const;

 private:
  std::size_t flat(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(space_.size()) +
           static_cast<std::size_t>(y);
  }

  Space space_;
  std::vector<std::optional<Scalar>> values_;
  std::size_t domain_size_ = 0;
  bool all_exact_ = true;
};

/// f(x,y) = Pr(x|y) for all x != y; values are copied out of the matrix.
PartialScore score_from_channel(const ChannelMatrix& ch);

/// s_j around a cyclic codeword sequence. In exact mode the value is carried
/// as a ledger of per-symbol factors with net exponents; full cancellation
/// is literal zero. The float evaluation is always available.
struct CyclicSum {
  bool exact = true;
  std::map<Rat, long> ledger;  // factor -> net exponent, zeros erased
  double value = 0.0;          // float evaluation of the same sum

  bool exact_zero() const { return exact && ledger.empty(); }
};

CyclicSum cyclic_sum(const ProductChannelSpec& spec, const std::vector<int>& seq, int position);

}  // namespace mforge
