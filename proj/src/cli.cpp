#include "mforge/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mforge/channel.hpp"
#include "mforge/errors.hpp"
#include "mforge/json_io.hpp"
#include "mforge/metric.hpp"
#include "mforge/order.hpp"
#include "mforge/verify.hpp"

namespace mforge {

namespace {

std::size_t space_cap_from_env() {
  if (const char* raw = std::getenv("METRIC_FORGE_MAX_SPACE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 2)
      throw ParseError("METRIC_FORGE_MAX_SPACE must be an integer >= 2");
    return static_cast<std::size_t>(v);
  }
  return kDefaultSpaceCap;
}

struct ChannelInput {
  std::string file;
  std::string bac;
  std::string bsc;
  std::string z;

  bool inline_spec() const { return !bac.empty() || !bsc.empty() || !z.empty(); }
};

void add_channel_options(CLI::App* cmd, ChannelInput& in) {
  auto* file = cmd->add_option("--channel", in.file, "channel or product-spec JSON file");
  auto* bac = cmd->add_option("--bac", in.bac, "inline BAC spec, e.g. p=1/10,q=1/5,m=3");
  auto* bsc = cmd->add_option("--bsc", in.bsc, "inline BSC spec, e.g. p=1/4,m=2");
  auto* z = cmd->add_option("--z", in.z, "inline Z-channel spec, e.g. p=0,q=1/4,m=2");
  file->excludes(bac)->excludes(bsc)->excludes(z);
  bac->excludes(bsc)->excludes(z);
  bsc->excludes(z);
}

ProductChannelSpec parse_inline_spec(ChannelKind kind, const std::string& text) {
  std::optional<Scalar> p;
  std::optional<Scalar> q;
  std::optional<int> m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in spec: " + item);
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "p") {
      p = Scalar(Rat::parse(value));
    } else if (key == "q") {
      q = Scalar(Rat::parse(value));
    } else if (key == "m") {
      m = std::stoi(value);
    } else {
      throw ParseError("unknown key in inline spec: " + key);
    }
  }
  if (!p || !m) throw ParseError("inline spec needs at least p=... and m=...");
  if (!q) {
    if (kind != ChannelKind::BSC) throw ParseError("inline spec needs q=...");
    q = p;
  }
  return ProductChannelSpec{make_channel(kind, *p, *q), *m};
}

std::optional<ProductChannelSpec> resolve_product_spec(const ChannelInput& in) {
  if (!in.bac.empty()) return parse_inline_spec(ChannelKind::BAC, in.bac);
  if (!in.bsc.empty()) return parse_inline_spec(ChannelKind::BSC, in.bsc);
  if (!in.z.empty()) return parse_inline_spec(ChannelKind::Z, in.z);
  return std::nullopt;
}

ChannelMatrix resolve_channel(const ChannelInput& in, std::size_t cap) {
  if (auto spec = resolve_product_spec(in)) return expand_product(*spec, cap);
  if (in.file.empty())
    throw ParseError("no channel given; use --channel or an inline --bac/--bsc/--z spec");
  return load_channel_file(in.file, cap);
}

struct ModeOptions {
  std::string mode = "auto";  // auto picks exact when every input is exact
  double epsilon = 1e-12;
};

void add_mode_options(CLI::App* cmd, ModeOptions& mode) {
  cmd->add_option("--mode", mode.mode, "comparison mode: exact or float")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  cmd->add_option("--epsilon", mode.epsilon, "relative tolerance in float mode")
      ->check(CLI::PositiveNumber);
}

ComparisonPolicy resolve_policy(const ModeOptions& mode, bool inputs_exact) {
  if (mode.mode == "exact") return ComparisonPolicy::exact();
  if (mode.mode == "float") return ComparisonPolicy::with_epsilon(mode.epsilon);
  return inputs_exact ? ComparisonPolicy::exact() : ComparisonPolicy::with_epsilon(mode.epsilon);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

std::string verdict_name(MatchVerdict v) {
  switch (v) {
    case MatchVerdict::strong_matched: return "strong-matched";
    case MatchVerdict::weak_matched: return "weak-matched";
    case MatchVerdict::not_matched: return "not-matched";
  }
  return "?";
}

void print_match_table(const MatchReport& report, const Space& space, std::ostream& out) {
  const auto set_text = [&](const std::vector<int>& ids) {
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ",";
      s += space.label(ids[i]);
    }
    return s + "}";
  };
  std::size_t w_x = 1, w_min = 8, w_max = 8;
  std::vector<std::array<std::string, 4>> rows;
  for (const auto& row : report.per_x) {
    std::array<std::string, 4> r{space.label(row.x), set_text(row.argmin_d),
                                 set_text(row.argmax_p),
                                 row.equal ? "strong" : (row.contained ? "weak" : "violated")};
    w_x = std::max(w_x, r[0].size());
    w_min = std::max(w_min, r[1].size());
    w_max = std::max(w_max, r[2].size());
    rows.push_back(std::move(r));
  }
  out << std::left << std::setw(static_cast<int>(w_x)) << "x" << " | "
      << std::setw(static_cast<int>(w_min)) << "argmin_d" << " | "
      << std::setw(static_cast<int>(w_max)) << "argmax_P" << " | verdict\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(w_x)) << r[0] << " | "
        << std::setw(static_cast<int>(w_min)) << r[1] << " | "
        << std::setw(static_cast<int>(w_max)) << r[2] << " | " << r[3] << "\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_synthesize(const ChannelInput& input, const ModeOptions& mode, const std::string& delta_s,
                   const std::string& out_path, const std::string& format, std::ostream& out) {
  const std::size_t cap = space_cap_from_env();
  const ChannelMatrix ch = resolve_channel(input, cap);
  const Scalar delta(Rat::parse(delta_s));
  check_delta(delta);
  const PartialScore f = score_from_channel(ch);
  const ComparisonPolicy policy = resolve_policy(mode, f.all_exact());

  const PairPreferenceGraph graph = build_graph(f, policy);
  if (auto witness = find_violation_cycle(graph)) {
    out << "no matched metric: preference cycle of length " << witness->length() << "\n";
    out << witness->to_text();
    emit(dump(witness_to_json(*witness)), out_path, out);
    return kExitNoMetric;
  }
  LinearExtension ext = linear_extension(graph);
  const Semimetric e = semimetric_from_extension(ext);
  const MatchedMetric d = band_metric(e, delta, std::move(ext));

  out << "space: " << ch.size() << " words, " << graph.node_count() << " pairs\n";
  out << "strict edges: " << graph.edge_count() << ", tie groups: " << graph.tie_groups().size()
      << " (" << graph.tied_pair_count() << " tied pairs)\n";
  out << "delta: " << delta.str() << "\n";
  if (format == "csv") {
    emit(metric_to_csv(d), out_path, out);
  } else {
    emit(dump(metric_to_json(d)), out_path, out);
  }
  if (!out_path.empty()) out << "metric written to " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& channel_path, const std::string& metric_path,
               const ModeOptions& mode, std::ostream& out) {
  const std::size_t cap = space_cap_from_env();
  const ChannelMatrix ch = load_channel_file(channel_path, cap);
  const MatchedMetric d = load_metric_file(metric_path);
  const PartialScore f = score_from_channel(ch);
  const ComparisonPolicy policy = resolve_policy(mode, f.all_exact());

  const auto violations = verify_compatibility(f, d, policy);
  const MatchReport report = verify_matched(ch, d, policy);
  print_match_table(report, ch.space(), out);
  out << "compatibility violations: " << violations.size() << "\n";
  for (std::size_t i = 0; i < violations.size() && i < 10; ++i) {
    const auto& v = violations[i];
    out << "  f(" << ch.space().label(v.x) << "," << ch.space().label(v.y) << ") > f("
        << ch.space().label(v.x) << "," << ch.space().label(v.z) << ") but d does not agree\n";
  }
  out << "overall: " << verdict_name(report.overall) << "\n";
  if (!violations.empty() || report.overall == MatchVerdict::not_matched)
    return kExitVerifyFailed;
  if (report.overall == MatchVerdict::weak_matched)
    out << "note: weak-matched (argmin contained in argmax; equality fails for some x)\n";
  return kExitOk;
}

int cmd_analyze(const ChannelInput& input, const ModeOptions& mode, std::uint64_t seed,
                int samples, std::ostream& out) {
  const std::size_t cap = space_cap_from_env();
  const auto product = resolve_product_spec(input);
  const ChannelMatrix ch =
      product ? expand_product(*product, cap) : resolve_channel(input, cap);
  const PartialScore f = score_from_channel(ch);
  const ComparisonPolicy policy = resolve_policy(mode, f.all_exact());
  const PairPreferenceGraph graph = build_graph(f, policy);

  out << "space: " << ch.size() << " elements, " << graph.node_count() << " unordered pairs\n";
  out << "score domain: " << f.domain_size() << " ordered pairs ("
      << (f.all_exact() ? "exact" : "float") << " values)\n";
  out << "strict edges: " << graph.edge_count() << "\n";
  out << "tie groups: " << graph.tie_groups().size() << " (" << graph.tied_pair_count()
      << " tied pairs)\n";
  if (auto witness = find_violation_cycle(graph)) {
    out << "premise: violated, shortest cycle length " << witness->length() << "\n";
    out << witness->to_text();
  } else {
    out << "premise: holds (digraph acyclic), matched metric constructible\n";
  }

  if (product) {
    // Spot-check the per-position cyclic identity on random sequences.
    std::mt19937_64 rng(seed);
    const int m = product->length;
    const int words = 1 << m;
    double worst = 0.0;
    bool all_exact_zero = true;
    for (int s = 0; s < samples; ++s) {
      const int len = 2 + static_cast<int>(rng() % 7);  // n in 2..8
      std::vector<int> seq(static_cast<std::size_t>(len));
      for (auto& w : seq) w = static_cast<int>(rng() % static_cast<std::uint64_t>(words));
      for (int j = 0; j < m; ++j) {
        const CyclicSum s_j = cyclic_sum(*product, seq, j);
        worst = std::max(worst, std::abs(s_j.value));
        all_exact_zero = all_exact_zero && (!s_j.exact || s_j.exact_zero());
      }
    }
    out << "cyclic sums over " << samples << " random sequences: max |s_j| = "
        << std::scientific << std::setprecision(3) << worst
        << (all_exact_zero ? " (all exactly zero)" : "") << "\n";
  }
  return kExitOk;
}

int cmd_oracle_premise(const ChannelInput& input, const ModeOptions& mode, int max_len,
                       bool allow_large, const std::string& out_path, std::ostream& out) {
  const std::size_t cap = space_cap_from_env();
  const ChannelMatrix ch = resolve_channel(input, cap);
  const PartialScore f = score_from_channel(ch);
  const int effective_max = max_len > 0 ? max_len : kOracleMaxLength;
  (void)mode;
  if (auto witness = premise_bruteforce(f, effective_max, allow_large)) {
    out << "violation: found (sequence length " << witness->length() << ")\n";
    out << witness->to_text();
    if (!out_path.empty()) emit(dump(witness_to_json(*witness)), out_path, out);
  } else {
    out << "violation: none up to length " << effective_max << "\n";
  }
  return kExitOk;
}

int cmd_oracle_strong(const ChannelInput& input, bool allow_large, const std::string& out_path,
                      std::ostream& out) {
  const std::size_t cap = space_cap_from_env();
  const ChannelMatrix ch = resolve_channel(input, cap);
  const StrongExistence result = strong_exists_bruteforce(ch, allow_large);
  out << "exists: " << (result.exists ? "true" : "false") << "\n";
  out << "weak orderings checked: " << result.orderings_checked << "\n";
  if (result.witness) {
    const auto j = ordering_to_json(*result.witness, ch.space());
    out << "witness tiers (closest first): " << j["tiers"].dump() << "\n";
    if (!out_path.empty()) emit(dump(j), out_path, out);
  }
  return kExitOk;
}

ChannelMatrix three_word_demo_channel() {
  const auto r = [](long n, long d) { return Scalar(Rat(n, d)); };
  std::vector<std::vector<Scalar>> entries{
      {r(1, 2), r(1, 4), r(1, 4)},
      {r(1, 6), r(1, 2), r(1, 3)},
      {r(1, 3), r(1, 6), r(1, 2)},
  };
  return ChannelMatrix::from_entries(Space::with_labels({"a", "b", "c"}), std::move(entries),
                                     StochasticAxis::received_row);
}

int cmd_selftest(std::ostream& out) {
  int failures = 0;
  const auto check = [&](bool ok, const std::string& what) {
    out << (ok ? "ok" : "FAIL") << ": " << what << "\n";
    if (!ok) ++failures;
  };

  // Three-word demo channel: weak but not strong matched, no strong metric
  // exists at all.
  const ChannelMatrix demo = three_word_demo_channel();
  const auto result = synthesize(demo, Scalar(Rat(1, 4)));
  const auto* metric = std::get_if<MatchedMetric>(&result);
  check(metric != nullptr, "3-word channel synthesis produces a metric");
  if (metric) {
    const MatchReport report = verify_matched(demo, *metric);
    check(report.overall == MatchVerdict::weak_matched,
          "3-word channel metric is weak-matched but not strong");
    const auto violations =
        verify_compatibility(score_from_channel(demo), *metric, ComparisonPolicy::exact());
    check(violations.empty(), "3-word channel metric is order compatible");
    check(compare_raw(metric->at(0, 2), Scalar(Rat(3, 4))) == 0 &&
              compare_raw(metric->at(1, 2), Scalar(Rat(1))) == 0 &&
              compare_raw(metric->at(0, 1), Scalar(Rat(5, 4))) == 0,
          "3-word channel metric values are 3/4, 1, 5/4");
  }
  const StrongExistence strong = strong_exists_bruteforce(demo);
  check(!strong.exists && strong.orderings_checked == 13,
        "no strong metric among the 13 weak orderings of 3 pairs");
  check(!premise_bruteforce(score_from_channel(demo), 6).has_value(),
        "premise oracle finds no violating sequence");

  // Small asymmetric product channels end to end.
  for (int m = 1; m <= 4; ++m) {
    const ProductChannelSpec spec{make_channel(ChannelKind::BAC, Scalar(Rat(1, 10)),
                                               Scalar(Rat(1, 5))),
                                  m};
    const ChannelMatrix ch = expand_product(spec);
    const auto res = synthesize(ch, Scalar(Rat(1, 4)));
    const auto* d = std::get_if<MatchedMetric>(&res);
    bool ok = d != nullptr;
    if (ok) {
      ok = verify_compatibility(score_from_channel(ch), *d, ComparisonPolicy::exact()).empty();
      ok = ok && verify_matched(ch, *d).at_least_weak();
    }
    check(ok, "asymmetric product channel m=" + std::to_string(m) + " synthesis + verification");
  }

  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"matched-metric construction and verification for finite channels"};
  app.require_subcommand(1);

  ChannelInput syn_input;
  ModeOptions syn_mode;
  std::string syn_delta = "1/4";
  std::string syn_out;
  std::string syn_format = "json";
  auto* syn = app.add_subcommand("synthesize", "construct a matched metric or a cycle witness");
  add_channel_options(syn, syn_input);
  add_mode_options(syn, syn_mode);
  syn->add_option("--delta", syn_delta, "band half-width, rational in (0, 1/3)");
  syn->add_option("--out", syn_out, "output file (default: stdout)");
  syn->add_option("--format", syn_format, "metric output format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string ver_channel;
  std::string ver_metric;
  ModeOptions ver_mode;
  auto* ver = app.add_subcommand("verify", "check a metric file against a channel");
  ver->add_option("--channel", ver_channel, "channel JSON file")->required();
  ver->add_option("--metric", ver_metric, "metric JSON file")->required();
  add_mode_options(ver, ver_mode);

  ChannelInput ana_input;
  ModeOptions ana_mode;
  std::uint64_t ana_seed = 42;
  int ana_samples = 20;
  auto* ana = app.add_subcommand("analyze", "graph statistics and cyclic-sum spot checks");
  add_channel_options(ana, ana_input);
  add_mode_options(ana, ana_mode);
  ana->add_option("--seed", ana_seed, "seed for random cyclic sequences");
  ana->add_option("--samples", ana_samples, "number of random sequences")
      ->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "brute-force oracles for small spaces");
  oracle->require_subcommand(1);

  ChannelInput orp_input;
  ModeOptions orp_mode;
  int orp_max_len = 0;
  bool orp_allow_large = false;
  std::string orp_out;
  auto* orp = oracle->add_subcommand("premise", "exhaustive premise violation search");
  add_channel_options(orp, orp_input);
  add_mode_options(orp, orp_mode);
  orp->add_option("--max-len", orp_max_len, "maximum sequence length (default 8)");
  orp->add_flag("--allow-large", orp_allow_large, "lift the oracle scale guard");
  orp->add_option("--out", orp_out, "write the witness JSON here");

  ChannelInput ors_input;
  bool ors_allow_large = false;
  std::string ors_out;
  auto* ors = oracle->add_subcommand("strong-exists",
                                     "exhaustive strong matched-metric existence search");
  add_channel_options(ors, ors_input);
  ors->add_flag("--allow-large", ors_allow_large, "lift the oracle scale guard");
  ors->add_option("--out", ors_out, "write the witness ordering JSON here");

  auto* self = app.add_subcommand("selftest", "run the built-in end-to-end checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (syn->parsed())
      return cmd_synthesize(syn_input, syn_mode, syn_delta, syn_out, syn_format, out);
    if (ver->parsed()) return cmd_verify(ver_channel, ver_metric, ver_mode, out);
    if (ana->parsed()) return cmd_analyze(ana_input, ana_mode, ana_seed, ana_samples, out);
    if (orp->parsed())
      return cmd_oracle_premise(orp_input, orp_mode, orp_max_len, orp_allow_large, orp_out, out);
    if (ors->parsed()) return cmd_oracle_strong(ors_input, ors_allow_large, ors_out, out);
    if (self->parsed()) return cmd_selftest(out);
  } catch (const OracleScaleExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleScale;
  } catch (const CycleExists& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoMetric;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "error: no subcommand\n";
  return kExitInputError;
}

}  // namespace mforge
