#include "mforge/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mforge/errors.hpp"

namespace mforge {

ordered_json scalar_to_json(const Scalar& v) {
  if (v.is_exact()) return ordered_json(v.str());
  return ordered_json(v.as_double());
}

Scalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Scalar(Rat::parse(j.get<std::string>()));
  if (j.is_number()) return Scalar(j.get<double>());
  throw ParseError("expected a number or an \"a/b\" string, got " + j.dump());
}

namespace {

StochasticAxis axis_from_string(const std::string& s) {
  if (s == "sent-column") return StochasticAxis::sent_column;
  if (s == "received-row") return StochasticAxis::received_row;
  if (s == "none") return StochasticAxis::none;
  throw ParseError("unknown stochastic_axis: " + s);
}

std::string axis_to_string(StochasticAxis axis) {
  switch (axis) {
    case StochasticAxis::sent_column: return "sent-column";
    case StochasticAxis::received_row: return "received-row";
    case StochasticAxis::none: return "none";
  }
  return "none";
}

ChannelKind kind_from_string(const std::string& s) {
  if (s == "BAC") return ChannelKind::BAC;
  if (s == "BSC") return ChannelKind::BSC;
  if (s == "Z") return ChannelKind::Z;
  throw ParseError("unknown channel kind: " + s);
}

std::vector<std::vector<Scalar>> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    std::vector<Scalar> out;
    for (const auto& cell : row) out.push_back(scalar_from_json(cell));
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace

ChannelMatrix channel_from_json(const nlohmann::json& j, std::size_t space_cap) {
  if (!j.is_object()) throw ParseError("channel file must hold a JSON object");
  if (j.contains("kind")) {
    const ChannelKind kind = kind_from_string(j.at("kind").get<std::string>());
    const Scalar p = j.contains("p") ? scalar_from_json(j.at("p")) : Scalar(Rat(0));
    const Scalar q = j.contains("q") ? scalar_from_json(j.at("q"))
                                     : (kind == ChannelKind::BSC ? p : Scalar(Rat(0)));
    if (!j.contains("m")) throw ParseError("product spec needs a codeword length \"m\"");
    const int m = j.at("m").get<int>();
    return expand_product(ProductChannelSpec{make_channel(kind, p, q), m}, space_cap);
  }
  if (!j.contains("matrix")) throw ParseError("channel file needs \"matrix\" or \"kind\"");
  auto entries = matrix_from_json(j.at("matrix"));
  const int n = static_cast<int>(entries.size());
  Space space = j.contains("labels")
                    ? Space::with_labels(j.at("labels").get<std::vector<std::string>>())
                    : Space::with_size(n);
  const StochasticAxis axis =
      j.contains("stochastic_axis")
          ? axis_from_string(j.at("stochastic_axis").get<std::string>())
          : StochasticAxis::none;
  if (static_cast<std::size_t>(space.size()) > space_cap)
    throw SpaceTooLarge("channel space exceeds the cap of " + std::to_string(space_cap));
  return ChannelMatrix::from_entries(std::move(space), std::move(entries), axis);
}

ordered_json channel_to_json(const ChannelMatrix& ch) {
  ordered_json out;
  out["labels"] = ch.space().labels();
  ordered_json matrix = ordered_json::array();
  for (const auto& row : ch.entries()) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(scalar_to_json(v));
    matrix.push_back(std::move(r));
  }
  out["matrix"] = std::move(matrix);
  out["stochastic_axis"] = axis_to_string(ch.axis());
  return out;
}

ordered_json metric_to_json(const MatchedMetric& d) {
  ordered_json out;
  out["labels"] = d.space().labels();
  out["delta"] = scalar_to_json(d.delta());
  const int n = d.size();
  ordered_json matrix = ordered_json::array();
  for (int x = 0; x < n; ++x) {
    ordered_json row = ordered_json::array();
    for (int y = 0; y < n; ++y) row.push_back(scalar_to_json(d.at(x, y)));
    matrix.push_back(std::move(row));
  }
  out["matrix"] = std::move(matrix);
  if (d.provenance()) {
    ordered_json order = ordered_json::array();
    for (const auto& p : d.provenance()->order()) {
      order.push_back(ordered_json::array(
          {d.space().label(p.lo), d.space().label(p.hi)}));
    }
    out["provenance"] = std::move(order);
  }
  return out;
}

MatchedMetric metric_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("delta") || !j.contains("labels"))
    throw ParseError("metric file needs \"labels\", \"delta\" and \"matrix\"");
  Space space = Space::with_labels(j.at("labels").get<std::vector<std::string>>());
  const Scalar delta = scalar_from_json(j.at("delta"));
  auto entries = matrix_from_json(j.at("matrix"));
  const int n = space.size();
  if (static_cast<int>(entries.size()) != n)
    throw ParseError("metric matrix does not match the label count");
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != n) throw ParseError("metric matrix is not square");
  }
  for (int x = 0; x < n; ++x) {
    if (!entries[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)].is_zero())
      throw ParseError("metric diagonal must be zero");
    for (int y = x + 1; y < n; ++y) {
      if (compare_raw(entries[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)],
                      entries[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]) != 0)
        throw ParseError("metric matrix must be symmetric");
    }
  }
  std::vector<Scalar> by_pair;
  by_pair.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int lo = 0; lo < n; ++lo) {
    for (int hi = lo + 1; hi < n; ++hi)
      by_pair.push_back(entries[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)]);
  }

  std::optional<LinearExtension> provenance;
  if (j.contains("provenance")) {
    std::vector<UnorderedPair> order;
    for (const auto& item : j.at("provenance")) {
      if (!item.is_array() || item.size() != 2) throw ParseError("bad provenance entry");
      const int a = space.index_of(item[0].get<std::string>());
      const int b = space.index_of(item[1].get<std::string>());
      if (a < 0 || b < 0) throw ParseError("provenance label outside the space");
      order.push_back(UnorderedPair::of(a, b));
    }
    provenance = LinearExtension(space, std::move(order));
  }
  return MatchedMetric::from_pair_values(std::move(space), std::move(by_pair), delta,
                                         std::move(provenance));
}

std::string metric_to_csv(const MatchedMetric& d) {
  std::ostringstream out;
  const int n = d.size();
  for (int y = 0; y < n; ++y) out << (y ? "," : "") << d.space().label(y);
  out << "\n";
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) out << (y ? "," : "") << d.at(x, y).str();
    out << "\n";
  }
  return out.str();
}

ordered_json witness_to_json(const CycleWitness& w) {
  ordered_json out;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : w.pair_cycle) {
    pairs.push_back(ordered_json::array({w.space.label(p.lo), w.space.label(p.hi)}));
  }
  out["pairs"] = std::move(pairs);
  ordered_json elements = ordered_json::array();
  for (int e : w.element_sequence) elements.push_back(w.space.label(e));
  out["elements"] = std::move(elements);
  ordered_json ineqs = ordered_json::array();
  for (const auto& q : w.inequalities) {
    ineqs.push_back("f(" + w.space.label(q.subject) + "," + w.space.label(q.closer) + ") > f(" +
                    w.space.label(q.subject) + "," + w.space.label(q.farther) + ")");
  }
  out["inequalities"] = std::move(ineqs);
  return out;
}

namespace {

ordered_json label_list(const std::vector<int>& ids, const Space& space) {
  ordered_json out = ordered_json::array();
  for (int id : ids) out.push_back(space.label(id));
  return out;
}

}  // namespace

ordered_json report_to_json(const MatchReport& report, const Space& space) {
  ordered_json out;
  switch (report.overall) {
    case MatchVerdict::strong_matched: out["overall"] = "strong-matched"; break;
    case MatchVerdict::weak_matched: out["overall"] = "weak-matched"; break;
    case MatchVerdict::not_matched: out["overall"] = "not-matched"; break;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.per_x) {
    ordered_json r;
    r["x"] = space.label(row.x);
    r["argmin_d"] = label_list(row.argmin_d, space);
    r["argmax_P"] = label_list(row.argmax_p, space);
    r["verdict"] = row.equal ? "strong" : (row.contained ? "weak" : "violated");
    rows.push_back(std::move(r));
  }
  out["per_x"] = std::move(rows);
  ordered_json cex = ordered_json::array();
  for (const auto& c : report.counterexamples) {
    ordered_json e;
    e["x"] = space.label(c.x);
    e["y"] = space.label(c.y);
    e["d"] = scalar_to_json(c.d_value);
    e["P"] = scalar_to_json(c.p_value);
    cex.push_back(std::move(e));
  }
  out["counterexamples"] = std::move(cex);
  return out;
}

ordered_json ordering_to_json(const WeakOrdering& ordering, const Space& space) {
  ordered_json tiers = ordered_json::array();
  for (const auto& tier : ordering.tiers) {
    ordered_json t = ordered_json::array();
    for (const auto& p : tier) {
      t.push_back(ordered_json::array({space.label(p.lo), space.label(p.hi)}));
    }
    tiers.push_back(std::move(t));
  }
  ordered_json out;
  out["tiers"] = std::move(tiers);
  return out;
}

ChannelMatrix load_channel_file(const std::string& path, std::size_t space_cap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open channel file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
  return channel_from_json(j, space_cap);
}

MatchedMetric load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open metric file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
  return metric_from_json(j);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw Error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot move " + tmp + " into place");
}

}  // namespace mforge
