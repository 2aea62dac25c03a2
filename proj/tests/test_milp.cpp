#include <doctest.h>

#include "intrec/errors.hpp"
#include "intrec/formulations.hpp"
#include "intrec/lp_model.hpp"
#include "intrec/milp.hpp"
#include "intrec/simplex.hpp"

using namespace intrec;

namespace {

LpModel small_lp() {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0
  LpModel m;
  m.sense = Sense::Maximize;
  const auto x = m.add_variable("x", Rational(0), std::nullopt, false, 1);
  const auto y = m.add_variable("y", Rational(0), std::nullopt, false, 1);
  m.add_row({{x, 1}, {y, 2}}, Relation::LessEqual, 4);
  m.add_row({{x, 3}, {y, 1}}, Relation::LessEqual, 6);
  return m;
}

}  // namespace

TEST_CASE("simplex solves a small LP exactly under both pricing rules") {
  for (auto pricing : {Pricing::Bland, Pricing::Dantzig}) {
    SimplexOptions opts;
    opts.pricing = pricing;
    const auto r = solve_lp(small_lp(), opts);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.value == Rational(14, 5));
    CHECK(*r.solution == RationalVector{Rational(8, 5), Rational(6, 5)});
  }
}

TEST_CASE("simplex detects infeasible and unbounded LPs") {
  LpModel inf;
  const auto x = inf.add_variable("x", Rational(0), Rational(1), false, 1);
  inf.add_row({{x, 1}}, Relation::GreaterEqual, 2);
  CHECK(solve_lp(inf).status == SolveStatus::Infeasible);

  LpModel unb;
  unb.sense = Sense::Maximize;
  const auto y = unb.add_variable("y", Rational(0), std::nullopt, false, 1);
  const auto z = unb.add_variable("z", Rational(0), std::nullopt, false, 0);
  unb.add_row({{y, 1}, {z, -1}}, Relation::Equal, 0);
  CHECK(solve_lp(unb).status == SolveStatus::Unbounded);
}

TEST_CASE("lp text round trip") {
  auto m = small_lp();
  m.integer[0] = true;
  m.upper[0] = Rational(5);
  const auto back = parse_lp_text(to_lp_text(m));
  CHECK(back.num_vars() == 2);
  CHECK(back.num_rows() == 2);
  CHECK(back.integer[0]);
  CHECK(*back.upper[0] == 5);
  CHECK(solve_milp(back).value == solve_milp(m).value);
}

TEST_CASE("branch and bound on a knapsack") {
  // max 5a + 4b + 3c s.t. 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8, binary
  LpModel m;
  m.sense = Sense::Maximize;
  const auto a = m.add_binary("a", 5);
  const auto b = m.add_binary("b", 4);
  const auto c = m.add_binary("c", 3);
  m.add_row({{a, 2}, {b, 3}, {c, 1}}, Relation::LessEqual, 5);
  m.add_row({{a, 4}, {b, 1}, {c, 2}}, Relation::LessEqual, 11);
  m.add_row({{a, 3}, {b, 4}, {c, 2}}, Relation::LessEqual, 8);
  const auto r = solve_milp(m);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.value == 9);
  CHECK(m.is_feasible(*r.solution));
}

TEST_CASE("milp rejects unbounded integers and honours cutoffs") {
  LpModel m;
  m.add_variable("x", Rational(0), std::nullopt, true, 1);
  CHECK_THROWS_AS(solve_milp(m), UnboundedIntegral);

  LpModel k;
  k.sense = Sense::Maximize;
  const auto x = k.add_variable("x", Rational(0), Rational(10), true, 1);
  k.add_row({{x, 2}}, Relation::LessEqual, 9);
  MilpOptions opts;
  opts.cutoff = Rational(0);
  const auto r = solve_milp(k, opts);
  CHECK((r.status == SolveStatus::Feasible || r.status == SolveStatus::Optimal));
  CHECK(*r.value > 0);
}

TEST_CASE("P0 and P1 formulations over nonnegative integers") {
  RationalMatrix a{{2, 3, 6}};
  FormulationOptions fo;
  fo.derive_bounds = true;
  RecoveryInstance p0(a, {11}, ConstraintSet::nonneg_integers(3), Objective::L0);
  const auto m0 = build_p0(p0, fo);
  const auto r0 = solve_milp(m0.model);
  REQUIRE(r0.status == SolveStatus::Optimal);
  CHECK(*r0.value == 2);
  CHECK(p0.is_feasible(m0.signal(*r0.solution)));
  CHECK(is_unique_optimum(m0.model, *r0.solution, m0.signal_variables()) == false);

  RecoveryInstance p1(a, {11}, ConstraintSet::nonneg_integers(3), Objective::L1);
  const auto m1 = build_p1(p1, fo);
  const auto r1 = solve_milp(m1.model);
  REQUIRE(r1.status == SolveStatus::Optimal);
  CHECK(*r1.value == 3);
  CHECK(m1.signal(*r1.solution) == RationalVector{1, 1, 1});
  CHECK(is_unique_optimum(m1.model, *r1.solution, m1.signal_variables()) == true);

  CHECK_THROWS_AS(build_p0(p0), MissingBounds);
}

TEST_CASE("P1 over a symmetric box uses the split") {
  RationalMatrix a{{1, 2}};
  RecoveryInstance inst(a, {-1}, ConstraintSet::symmetric_box({1, 1}), Objective::L1);
  const auto m = build_p1(inst);
  const auto r = solve_milp(m.model);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.value == 1);
  CHECK(m.signal(*r.solution) == RationalVector{-1, 0});
}

TEST_CASE("goodness formulations") {
  // identity: every s is good
  RationalMatrix eye{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(*solve_milp(build_goodness_binary(eye, 3)).value == 0);
  CHECK(solve_milp(build_goodness_binary_alt(eye, 3)).status == SolveStatus::Infeasible);
  CHECK(*solve_milp(build_goodness_unit_box(eye, 3)).value == 0);
  CHECK(solve_milp(build_goodness_general(eye, 3, {-2, -2, -2}, {2, 2, 2})).status ==
        SolveStatus::Infeasible);
  // columns 1 + 2 = column 3
  RationalMatrix dep{{1, 0, 1}, {0, 1, 1}};
  CHECK(*solve_milp(build_goodness_binary(dep, 2)).value == 3);
  CHECK(*solve_milp(build_goodness_binary(dep, 1)).value == 0);
  CHECK(solve_milp(build_goodness_binary_alt(dep, 2)).status != SolveStatus::Infeasible);
  CHECK(solve_milp(build_goodness_general(dep, 2, {0, 0, 0}, {1, 1, 1})).status !=
        SolveStatus::Infeasible);
}

TEST_CASE("uniqueness cut excludes exactly one point") {
  LpModel m;
  const auto x = m.add_variable("x", Rational(0), Rational(2), true, 0);
  const auto y = m.add_variable("y", Rational(0), Rational(2), true, 0);
  m.add_row({{x, 1}, {y, 1}}, Relation::Equal, 2);
  const auto cut = add_uniqueness_cut(m, {1, 1});
  const auto r = solve_milp(cut);
  REQUIRE(r.solution);
  CHECK((((*r.solution)[0] != 1) || ((*r.solution)[1] != 1)));
  CHECK(is_unique_optimum(m, {1, 1}, {x, y}) == false);
  CHECK(is_unique_optimum(pin_objective(m, 0), {1, 1}, {x, y}) == false);
}
