// Semimetric realization of a linear extension and the band construction
// that turns any semimetric into a metric with the same strict value order.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mforge/channel.hpp"
#include "mforge/order.hpp"
#include "mforge/scalar.hpp"
#include "mforge/space.hpp"

namespace mforge {

/// Symmetric, zero exactly on the diagonal, positive off it. No triangle
/// inequality. Values are stored per unordered pair.
class Semimetric {
 public:
  static Semimetric from_pair_values(Space space, std::vector<Scalar> by_pair);

  const Space& space() const { return space_; }
  int size() const { return space_.size(); }
  const Scalar& at_pair(int id) const { return by_pair_[static_cast<std::size_t>(id)]; }
  Scalar at(int x, int y) const;  // 0 on the diagonal
  const std::vector<Scalar>& pair_values() const { return by_pair_; }

  const Scalar& min_value() const { return by_pair_[static_cast<std::size_t>(min_id_)]; }
  const Scalar& max_value() const { return by_pair_[static_cast<std::size_t>(max_id_)]; }
  bool all_exact() const { return all_exact_; }

 private:
  Semimetric(Space space, std::vector<Scalar> by_pair);

  Space space_;
  std::vector<Scalar> by_pair_;
  int min_id_ = 0;
  int max_id_ = 0;
  bool all_exact_ = true;
};

/// A metric with every off-diagonal value inside [1-delta, 1+delta] for some
/// delta < 1/3, which makes the triangle inequality unconditional. Carries
/// the linear extension it was built from when there is one.
class MatchedMetric {
 public:
  static MatchedMetric from_pair_values(Space space, std::vector<Scalar> by_pair, Scalar delta,
                                        std::optional<LinearExtension> provenance = {});

  const Space& space() const { return space_; }
  int size() const { return space_.size(); }
  const Scalar& delta() const { return delta_; }
  const Scalar& at_pair(int id) const { return by_pair_[static_cast<std::size_t>(id)]; }
  Scalar at(int x, int y) const;  // 0 on the diagonal
  const std::vector<Scalar>& pair_values() const { return by_pair_; }
  const std::optional<LinearExtension>& provenance() const { return provenance_; }

 private:
  MatchedMetric(Space space, std::vector<Scalar> by_pair, Scalar delta,
                std::optional<LinearExtension> provenance)
      : space_(std::move(space)), by_pair_(std::move(by_pair)), delta_(std::move(delta)),
        provenance_(std::move(provenance)) {}

  Space space_;
  std::vector<Scalar> by_pair_;
  Scalar delta_;
  std::optional<LinearExtension> provenance_;
};

/// e(x,y) = g({x,y}) with g the extension's rank; zero diagonal.
Semimetric semimetric_from_extension(const LinearExtension& ext);

/// Affine strictly increasing map of off-diagonal values onto
/// [1-delta, 1+delta]; all equal values collapse to the band center 1.
/// Exact rational output whenever the inputs are exact.
MatchedMetric band_metric(const Semimetric& e, const Scalar& delta,
                          std::optional<LinearExtension> provenance = {});

void check_delta(const Scalar& delta);

/// End-to-end construction for a channel: either the matched metric or the
/// cycle witness showing why none exists along this construction.
std::variant<MatchedMetric, CycleWitness> synthesize(
    const ChannelMatrix& ch, const Scalar& delta,
    std::optional<ComparisonPolicy> cmp = std::nullopt);

}  // namespace mforge
