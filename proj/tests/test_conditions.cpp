#include <doctest.h>

#include <json.hpp>

#include "intrec/conditions.hpp"
#include "intrec/errors.hpp"
#include "intrec/kernel_enum.hpp"
#include "intrec/oracle.hpp"
#include "intrec/regions.hpp"

using namespace intrec;

TEST_CASE("difference regions") {
  CHECK(region_of(3, -1, 2) == Region::S4Plus);
  CHECK(region_of(2, -1, 2) == Region::S2Plus);
  CHECK(region_of(1, -1, 2) == Region::S1Plus);
  CHECK(region_of(-1, -1, 2) == Region::S1Minus);
  CHECK(region_of(-2, -1, 2) == Region::S3Minus);
  CHECK(region_of(-3, -1, 2) == Region::S4Minus);
  CHECK(region_of(0, -1, 2) == std::nullopt);
  CHECK(region_of(4, -1, 2) == std::nullopt);
  std::size_t covered = 0;
  for (const auto& iv : region_intervals(-1, 2)) {
    covered += static_cast<std::size_t>(Integer(iv.hi - iv.lo + 1).get_ui());
  }
  CHECK(covered == 6);
}

TEST_CASE("membership in C(l,u)") {
  const IntVector l{0, 0, 0};
  const IntVector u{1, 1, 1};
  // binary boxes: +1 lies in S2+, -1 in S3-
  CHECK(in_C({1, -1, 0}, 1, l, u));
  CHECK_FALSE(in_C({1, -1, 1}, 1, l, u));
  CHECK(in_C({1, -1, 1}, 2, l, u));
  const auto p = region_profile({1, -1, 0}, l, u);
  CHECK(p.level(2) == 1);
  CHECK(p.level(3) == 1);
  CHECK(p.level(4) == 0);
  CHECK_THROWS_AS(region_profile({2, 0, 0}, l, u), PreconditionError);
}

TEST_CASE("kernel enumeration matches brute force") {
  RationalMatrix a{{1, 2}};
  const auto pts = kernel_points(a, {-2, -2}, {2, 2});
  CHECK(pts == std::vector<IntVector>{{-2, 1}, {0, 0}, {2, -1}});
  CHECK(pts == brute_kernel_points(a, {-2, -2}, {2, 2}));
  RationalMatrix b{{2, 3, 6}, {1, -1, 1}};
  CHECK(kernel_points(b, {-4, -4, -4}, {5, 3, 4}) ==
        brute_kernel_points(b, {-4, -4, -4}, {5, 3, 4}));
  EnumerationBudget tiny;
  tiny.max_points = 1;
  CHECK_THROWS_AS(kernel_points(RationalMatrix{{2, 3, 6}}, {-3, -3, -3}, {3, 3, 3}, tiny),
                  BudgetExceeded);
  CHECK_THROWS_AS(for_each_lattice_point({{0, 1}, {1, 0}}, {-1, -1}, {1, 1}, {},
                                         [](const IntVector&) { return true; }),
                  PreconditionError);
}

TEST_CASE("l0 goodness for Z^n and Z^n_+ with (2,3,6)") {
  RationalMatrix a{{2, 3, 6}};
  const auto z = is_s_good_l0(a, 1, ConstraintSet::integers(3));
  CHECK(z.route == "spark");
  CHECK_FALSE(z.good);
  REQUIRE(z.witness);
  CHECK(multiply(a, *z.witness) == RationalVector{0});
  const auto zp = is_s_good_l0(a, 1, ConstraintSet::nonneg_integers(3));
  CHECK_FALSE(zp.good);
  CHECK_FALSE(is_s_good_l0(a, 1, ConstraintSet::nonneg_integers(3), {Method::Milp}).good);
  CHECK_FALSE(is_s_good_l0(a, 1, ConstraintSet::nonneg_reals(3)).good);
  CHECK(is_s_good_l0(a, 0, ConstraintSet::integers(3)).good);
}

TEST_CASE("l0 goodness over boxes: routes agree with the definition") {
  RationalMatrix a{{1, 2}};
  const auto x = ConstraintSet::symmetric_box({1, 1});
  const auto oracle = is_s_good_l0(a, 1, x, {Method::Oracle});
  const auto milp = is_s_good_l0(a, 1, x, {Method::Milp});
  const auto brute = brute_goodness(a, 1, x);
  CHECK(oracle.good);
  CHECK(milp.good);
  CHECK(brute.good);
  const auto wide = ConstraintSet::symmetric_box({2, 2});
  CHECK_FALSE(is_s_good_l0(a, 1, wide, {Method::Oracle}).good);
  CHECK_FALSE(is_s_good_l0(a, 1, wide, {Method::Milp}).good);
  const auto bad = brute_goodness(a, 1, wide);
  CHECK_FALSE(bad.good);
  REQUIRE(bad.partner);
  REQUIRE(bad.witness);
  CHECK(multiply(a, *bad.witness) == RationalVector{0});
  CHECK_THROWS_AS(is_s_good_l0(a, 1, ConstraintSet::box_reals({-1, -1}, {1, 1})), Unsupported);
  CHECK_THROWS_AS(is_s_good_l0(a, 1, ConstraintSet::integers(2), {Method::Lp}), Unsupported);
}

TEST_CASE("binary goodness via the dedicated model") {
  RationalMatrix dep{{1, 0, 1}, {0, 1, 1}};
  CHECK(is_s_good_l0(dep, 1, ConstraintSet::binary(3), {Method::Milp}).good);
  const auto v = is_s_good_l0(dep, 2, ConstraintSet::binary(3), {Method::Milp});
  CHECK_FALSE(v.good);
  REQUIRE(v.witness);
  CHECK(multiply(dep, *v.witness) == RationalVector{0, 0});
  CHECK(brute_goodness(dep, 1, ConstraintSet::binary(3)).good);
  CHECK_FALSE(brute_goodness(dep, 2, ConstraintSet::binary(3)).good);
}

TEST_CASE("nullspace properties") {
  RationalMatrix a{{2, 3, 6}};
  CHECK_FALSE(is_s_good_l1(a, 1, ConstraintSet::integers(3)).good);
  CHECK_FALSE(is_s_good_l1(a, 1, ConstraintSet::nonneg_integers(3)).good);
  RationalMatrix a12{{1, 2}};
  const auto v = nsp_check(
      a12, NspQuery::for_support(NspVariant::Nsp, ConstraintSet::symmetric_box({2, 2}), Support({0})));
  CHECK_FALSE(v.good);
  REQUIRE(v.witness);
  CHECK(((*v.witness == IntVector{-2, 1}) || (*v.witness == IntVector{2, -1})));
  CHECK(is_s_good_l1(a12, 1, ConstraintSet::symmetric_box({1, 1})).good);
  CHECK(brute_goodness_l1(a12, 1, ConstraintSet::symmetric_box({1, 1})).good);
  CHECK(split_nsp_plus_check(a12, {-1, -1}, {1, 1}, Support({0}), 0).good);
  // a 2x4 matrix with kernel spanned by (1,1,-1,-1) and (1,-1,1,-1)-like vectors
  RationalMatrix b{{1, 0, 1, 0}, {0, 1, 0, 1}};
  CHECK_FALSE(nsp_check(b, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::reals(4), 2)).good);
  // every kernel vector of (1,1,1) sums to zero
  CHECK_FALSE(nsp_check(RationalMatrix{{1, 1, 1}},
                        NspQuery::of_order(NspVariant::NspPlus, ConstraintSet::reals(3), 1))
                  .good);
  CHECK(nsp_check(RationalMatrix{{1, -1}},
                  NspQuery::of_order(NspVariant::NspPlus, ConstraintSet::reals(2), 1))
            .good);
}

TEST_CASE("individual recovery") {
  RationalMatrix a{{2, 3, 6}};
  CHECK(indiv_recoverable({1, 1, 1}, a, ConstraintSet::nonneg_integers(3)).good);
  CHECK(indiv_recoverable({0, 0, Rational(11, 6)}, a, ConstraintSet::nonneg_reals(3)).good);
  const auto bad = indiv_recoverable({Rational(11, 2), 0, 0}, a, ConstraintSet::nonneg_reals(3));
  CHECK_FALSE(bad.good);
  REQUIRE(bad.witness);
  CHECK(multiply(a, *bad.witness) == RationalVector{0});
  CHECK_FALSE(indiv_recoverable({4, 1, 0}, a, ConstraintSet::nonneg_integers(3)).good);
  CHECK(indiv_recoverable({1, 0}, RationalMatrix{{1, 2}}, ConstraintSet::symmetric_box({1, 1})).good);
  CHECK_THROWS_AS(indiv_recoverable({5, 0, 0}, a, ConstraintSet::nonneg_box({4, 4, 4})),
                  PreconditionError);
}

TEST_CASE("delta-ary encoding") {
  const IntVector u{2, 2};
  const auto a = delta_ary_matrix(u);
  CHECK(a == RationalMatrix{{1, 3}});
  CHECK(delta_ary_decode(a, 7, u) == IntVector{1, 2});
  CHECK_THROWS_AS(delta_ary_decode(a, 9, u), NotInRange);
  CHECK(is_s_good_l0(a, 2, ConstraintSet::nonneg_box(u)).good);
}

TEST_CASE("verdict json") {
  RationalMatrix a{{2, 3, 6}};
  const auto v = is_s_good_l0(a, 1, ConstraintSet::integers(3));
  const auto j = nlohmann::json::parse(verdict_to_json(v));
  CHECK(j["verdict"] == "not-good");
  CHECK(j["route"] == "spark");
  CHECK(parse_method("oracle") == Method::Oracle);
  CHECK_THROWS_AS(parse_method("guess"), ParseError);
}
