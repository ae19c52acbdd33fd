#include <random>

#include "doctest.h"
#include "mforge/channel.hpp"
#include "mforge/errors.hpp"
#include "test_support.hpp"

using namespace mforge;
using mforge::testing::hamming;
using mforge::testing::rat;
using mforge::testing::three_word_channel;

TEST_CASE("make_channel validates kind against parameters") {
  const SymbolChannel bac = make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5));
  CHECK(bac.p01().rat() == Rat(1, 10));
  CHECK(bac.p10().rat() == Rat(1, 5));

  CHECK_THROWS_AS(make_channel(ChannelKind::BSC, rat(1, 10), rat(1, 5)), KindMismatch);
  CHECK_THROWS_AS(make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 10)), KindMismatch);
  CHECK_THROWS_AS(make_channel(ChannelKind::BAC, rat(0), rat(1, 5)), KindMismatch);
  CHECK_THROWS_AS(make_channel(ChannelKind::Z, rat(1, 10), rat(1, 5)), KindMismatch);
  CHECK_THROWS_AS(make_channel(ChannelKind::Z, rat(0), rat(0)), KindMismatch);
  CHECK_THROWS_AS(make_channel(ChannelKind::BSC, rat(0), rat(0)), KindMismatch);

  const SymbolChannel z = make_channel(ChannelKind::Z, rat(0), rat(1, 4));
  CHECK(z.p01().is_zero());
  CHECK(z.p10().rat() == Rat(1, 4));

  // Reasonableness: flips at or above 1/2 are rejected before kind checks.
  CHECK_THROWS_AS(make_channel(ChannelKind::BAC, rat(1, 2), rat(1, 5)), ParameterOutOfRange);
  CHECK_THROWS_AS(make_channel(ChannelKind::BSC, rat(3, 5), rat(3, 5)), ParameterOutOfRange);
  CHECK_THROWS_AS(make_channel(ChannelKind::BAC, rat(-1, 10), rat(1, 5)), ParameterOutOfRange);
}

TEST_CASE("expand_product: single symbol") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 1};
  const ChannelMatrix ch = expand_product(spec);
  CHECK(ch.size() == 2);
  CHECK(ch.axis() == StochasticAxis::sent_column);
  CHECK(ch.prob(0, 0).rat() == Rat(9, 10));
  CHECK(ch.prob(0, 1).rat() == Rat(1, 5));
  CHECK(ch.prob(1, 0).rat() == Rat(1, 10));
  CHECK(ch.prob(1, 1).rat() == Rat(4, 5));
}

TEST_CASE("expand_product: per-bit products and labels") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 2};
  const ChannelMatrix ch = expand_product(spec);
  CHECK(ch.size() == 4);
  CHECK(ch.space().labels() == std::vector<std::string>{"00", "01", "10", "11"});
  // Pr(00|01) = Pr(0|0) * Pr(0|1) = (9/10)(1/5)
  CHECK(ch.prob(0, 1).rat() == Rat(9, 50));
}

TEST_CASE("expand_product matches the naive per-bit oracle exhaustively") {
  const SymbolChannel sym = make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5));
  for (int m = 1; m <= 4; ++m) {
    const ChannelMatrix ch = expand_product(ProductChannelSpec{sym, m});
    const int n = 1 << m;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        Scalar expected = rat(1);
        for (int j = 0; j < m; ++j) {
          expected = expected * sym.prob((x >> (m - 1 - j)) & 1, (y >> (m - 1 - j)) & 1);
        }
        CHECK(compare_raw(ch.prob(x, y), expected) == 0);
      }
    }
  }
}

TEST_CASE("expand_product columns sum to one exactly") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(3, 10), rat(1, 20)), 4};
  const ChannelMatrix ch = expand_product(spec);
  for (int y = 0; y < ch.size(); ++y) {
    Scalar sum = rat(0);
    for (int x = 0; x < ch.size(); ++x) sum = sum + ch.prob(x, y);
    CHECK(sum.rat() == Rat(1));
  }
}

TEST_CASE("expand_product respects the space cap") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 13};
  CHECK_THROWS_AS(expand_product(spec), SpaceTooLarge);
  CHECK_THROWS_AS(expand_product(ProductChannelSpec{spec.symbol, 5}, 16), SpaceTooLarge);
  CHECK_NOTHROW(expand_product(ProductChannelSpec{spec.symbol, 4}, 16));
}

TEST_CASE("channel matrix validation") {
  CHECK_THROWS_AS(ChannelMatrix::from_entries(
                      Space::with_size(2), {{rat(1), rat(2)}, {rat(0), rat(1)}},
                      StochasticAxis::none),
                  ValidationError);
  // declared row-stochastic but rows do not sum to 1
  CHECK_THROWS_AS(ChannelMatrix::from_entries(
                      Space::with_size(2), {{rat(1, 2), rat(1, 4)}, {rat(1, 2), rat(3, 4)}},
                      StochasticAxis::received_row),
                  ValidationError);
  const ChannelMatrix none = ChannelMatrix::from_entries(
      Space::with_size(2), {{rat(1, 2), rat(1, 4)}, {rat(1, 2), rat(3, 4)}},
      StochasticAxis::none);
  CHECK(none.axis_unchecked());
}

TEST_CASE("score_from_channel copies off-diagonal probabilities") {
  SUBCASE("three-word channel") {
    const PartialScore f = score_from_channel(three_word_channel());
    CHECK(f.domain_size() == 6);
    CHECK(f.at(0, 1).rat() == Rat(1, 4));  // f(a,b)
    CHECK(f.at(0, 2).rat() == Rat(1, 4));  // f(a,c)
    CHECK(f.at(1, 2).rat() == Rat(1, 3));  // f(b,c)
    CHECK(f.at(2, 0).rat() == Rat(1, 3));  // f(c,a)
    CHECK(f.at(1, 0).rat() == Rat(1, 6));  // f(b,a)
    CHECK(f.at(2, 1).rat() == Rat(1, 6));  // f(c,b)
    CHECK_FALSE(f.contains(0, 0));
  }
  SUBCASE("float 2x2 matrix") {
    const ChannelMatrix ch = ChannelMatrix::from_entries(
        Space::with_size(2), {{Scalar(0.9), Scalar(0.2)}, {Scalar(0.1), Scalar(0.8)}},
        StochasticAxis::sent_column);
    const PartialScore f = score_from_channel(ch);
    CHECK(f.at(0, 1).as_double() == doctest::Approx(0.2));
    CHECK(f.at(1, 0).as_double() == doctest::Approx(0.1));
    CHECK_FALSE(f.all_exact());
    CHECK(f.default_policy().mode == ComparisonPolicy::Mode::float_eps);
  }
  SUBCASE("product channel score") {
    const ChannelMatrix ch =
        expand_product(ProductChannelSpec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 2});
    const PartialScore f = score_from_channel(ch);
    CHECK(f.at(0, 1).rat() == Rat(9, 50));
    CHECK(f.default_policy().mode == ComparisonPolicy::Mode::exact);
  }
}

TEST_CASE("cyclic sum vanishes") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 2};

  SUBCASE("identical codewords") {
    const CyclicSum s = cyclic_sum(spec, {2, 2, 2, 2}, 0);
    CHECK(s.exact_zero());
    CHECK(s.value == doctest::Approx(0.0));
  }
  SUBCASE("00 -> 01 -> 11 at position 1") {
    const CyclicSum s = cyclic_sum(spec, {0b00, 0b01, 0b11}, 1);
    CHECK(s.exact_zero());
  }
  SUBCASE("seeded random sequences, every position") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
      const int m = 1 + static_cast<int>(rng() % 8);
      const ProductChannelSpec wide{spec.symbol, m};
      const int len = 2 + static_cast<int>(rng() % 7);
      std::vector<int> seq(static_cast<std::size_t>(len));
      for (auto& w : seq) w = static_cast<int>(rng() % (1u << m));
      for (int j = 0; j < m; ++j) {
        const CyclicSum s = cyclic_sum(wide, seq, j);
        CHECK(s.exact_zero());
        CHECK(std::abs(s.value) <= 1e-9);
      }
    }
  }
  SUBCASE("float symbol probabilities") {
    const ProductChannelSpec fspec{SymbolChannel(Scalar(0.1), Scalar(0.2)), 3};
    const CyclicSum s = cyclic_sum(fspec, {0b000, 0b011, 0b101, 0b110}, 1);
    CHECK_FALSE(s.exact);
    CHECK(std::abs(s.value) <= 1e-9);
  }
}

TEST_CASE("cyclic sum preconditions and zero factors") {
  const ProductChannelSpec spec{make_channel(ChannelKind::BAC, rat(1, 10), rat(1, 5)), 2};
  CHECK_THROWS_AS(cyclic_sum(spec, {1}, 0), ParameterOutOfRange);
  CHECK_THROWS_AS(cyclic_sum(spec, {0, 1}, 2), ParameterOutOfRange);
  CHECK_THROWS_AS(cyclic_sum(spec, {0, 7}, 0), ParameterOutOfRange);

  // A Z-channel cycle through the forbidden transition hits a log of zero.
  const ProductChannelSpec z{make_channel(ChannelKind::Z, rat(0), rat(1, 4)), 1};
  CHECK_THROWS_AS(cyclic_sum(z, {0, 1}, 0), ZeroProbabilityFactor);
}

TEST_CASE("BSC likelihood is monotone in Hamming distance") {
  for (const long denom : {10L, 4L}) {
    const SymbolChannel sym = make_channel(ChannelKind::BSC, rat(1, denom), rat(1, denom));
    for (int m = 1; m <= 5; ++m) {
      const ChannelMatrix ch = expand_product(ProductChannelSpec{sym, m});
      const int n = 1 << m;
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          for (int z = 0; z < n; ++z) {
            if (hamming(x, y) < hamming(x, z)) {
              CHECK(compare_raw(ch.prob(x, y), ch.prob(x, z)) > 0);
            }
          }
        }
      }
    }
  }
}
