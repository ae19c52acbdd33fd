#include "doctest.h"
#include "mforge/errors.hpp"
#include "mforge/scalar.hpp"

using namespace mforge;

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rat::parse("9/10").str() == "9/10");
  CHECK(Rat::parse("2/4").str() == "1/2");
  CHECK(Rat::parse("-3/9").str() == "-1/3");
  CHECK(Rat::parse("7").str() == "7");
  CHECK(Rat::parse("0.25").str() == "1/4");
  CHECK(Rat::parse("-0.5").str() == "-1/2");
  CHECK(Rat::parse("1.20").str() == "6/5");
  CHECK_THROWS_AS(Rat::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rat::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rat::parse(""), ParseError);
  CHECK_THROWS_AS(Rat::parse("1.2.3"), ParseError);
}

TEST_CASE("rational arithmetic stays exact") {
  const Rat a(1, 10);
  const Rat b(1, 5);
  CHECK((a * b).str() == "1/50");
  CHECK((Rat(9, 10) * b).str() == "9/50");
  CHECK((a + b).str() == "3/10");
  CHECK((b - a).str() == "1/10");
  CHECK((a / b).str() == "1/2");
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(2, 6) == Rat(1, 3));
  CHECK_THROWS_AS(a / Rat(0), ParameterOutOfRange);
}

TEST_CASE("scalar exactness is sticky until a float appears") {
  const Scalar e = Scalar(Rat(1, 4)) * Scalar(Rat(2, 3));
  CHECK(e.is_exact());
  CHECK(e.rat() == Rat(1, 6));
  const Scalar f = Scalar(Rat(1, 4)) * Scalar(0.5);
  CHECK_FALSE(f.is_exact());
  CHECK(f.as_double() == doctest::Approx(0.125));
}

TEST_CASE("raw comparison is exact for rationals") {
  // These straddle a double rounding boundary: as doubles they collide.
  const Scalar a(Rat(1000000000000000001L, 3000000000000000000L));
  const Scalar b(Rat(1, 3));
  CHECK(a.as_double() == b.as_double());
  CHECK(compare_raw(a, b) > 0);
}

TEST_CASE("policy comparison under epsilon") {
  const ComparisonPolicy cmp = ComparisonPolicy::with_epsilon(1e-9);
  CHECK(cmp.compare(Scalar(1.0), Scalar(1.0 + 1e-12)) == 0);
  CHECK(cmp.compare(Scalar(1.0), Scalar(1.1)) < 0);
  CHECK(cmp.compare(Scalar(2.0), Scalar(1.0)) > 0);
}

TEST_CASE("cluster levels group exact ties") {
  const std::vector<Scalar> row{Scalar(Rat(1, 4)), Scalar(Rat(1, 6)), Scalar(Rat(1, 4)),
                                Scalar(Rat(1, 3))};
  const auto level = cluster_levels(row, ComparisonPolicy::exact());
  CHECK(level == std::vector<int>{1, 0, 1, 2});
}

TEST_CASE("cluster levels chain float near-ties transitively") {
  // Adjacent gaps are below tolerance while the extremes differ by more;
  // chaining still puts all three in one cluster, keeping equality
  // transitive inside the row.
  const double eps = 1e-12;
  const std::vector<Scalar> row{Scalar(1.0), Scalar(1.0 + 0.9e-12), Scalar(1.0 + 1.8e-12),
                                Scalar(2.0)};
  const auto level = cluster_levels(row, ComparisonPolicy::with_epsilon(eps));
  CHECK(level == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("scalar rendering") {
  CHECK(Scalar(Rat(3, 4)).str() == "3/4");
  CHECK(Scalar(Rat(5)).str() == "5");
  CHECK(Scalar(0.25).str() == "0.25");
}
