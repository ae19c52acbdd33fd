// File formats: channel and metric JSON (exact rationals as "a/b" strings,
// floats as numbers), cycle witness and match report JSON, CSV export.
#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"
#include "mforge/channel.hpp"
#include "mforge/metric.hpp"
#include "mforge/order.hpp"
#include "mforge/verify.hpp"

namespace mforge {

using ordered_json = nlohmann::ordered_json;

ordered_json scalar_to_json(const Scalar& v);
Scalar scalar_from_json(const nlohmann::json& j);

/// Accepts both explicit matrices ({"labels", "matrix", "stochastic_axis"})
/// and parametric product specs ({"kind", "p", "q", "m"}).
ChannelMatrix channel_from_json(const nlohmann::json& j,
                                std::size_t space_cap = kDefaultSpaceCap);
ordered_json channel_to_json(const ChannelMatrix& ch);

ordered_json metric_to_json(const MatchedMetric& d);
MatchedMetric metric_from_json(const nlohmann::json& j);
std::string metric_to_csv(const MatchedMetric& d);

ordered_json witness_to_json(const CycleWitness& w);
ordered_json report_to_json(const MatchReport& report, const Space& space);
ordered_json ordering_to_json(const WeakOrdering& ordering, const Space& space);

ChannelMatrix load_channel_file(const std::string& path,
                                std::size_t space_cap = kDefaultSpaceCap);
MatchedMetric load_metric_file(const std::string& path);

/// Whole-file write via temp file + rename in the target directory.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mforge
