#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "intrec/conditions.hpp"
#include "intrec/errors.hpp"
#include "intrec/experiment.hpp"
#include "intrec/formulations.hpp"
#include "intrec/io.hpp"
#include "intrec/linalg.hpp"
#include "intrec/milp.hpp"
#include "intrec/oracle.hpp"
#include "intrec/simplex.hpp"
#include "intrec/support.hpp"

using namespace intrec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

const auto kDir = scratch_dir("intrec_acceptance");

std::map<int, std::vector<std::string>> g_cli_calls;
std::map<std::string, CliRun> g_cli_cache;

/// Runs a CLI command and records it for the determinism check.
CliRun cli(int criterion, const std::string& args) {
  g_cli_calls[criterion].push_back(args);
  auto it = g_cli_cache.find(args);
  if (it == g_cli_cache.end()) {
    it = g_cli_cache.emplace(args, run_cli(args)).first;
  }
  return it->second;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

RationalMatrix a236() { return RationalMatrix{{2, 3, 6}}; }

RationalMatrix cyclic3() { return RationalMatrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}; }

RationalMatrix example5_wide() {
  return RationalMatrix{{1, 1, 0, 0, 0, 0},
                        {1, 0, 1, 0, 0, 0},
                        {0, 1, 1, 1, 0, 0},
                        {0, 1, 1, 0, 1, 0},
                        {0, 1, 1, 0, 0, 1}};
}

FormulationOptions derived() {
  FormulationOptions fo;
  fo.derive_bounds = true;
  return fo;
}

struct Solved {
  SolveResult result;
  RecoveryModel model;
  std::optional<RationalVector> x;
};

Solved milp_solve(const RecoveryInstance& inst) {
  auto rm = inst.objective == Objective::L0 ? build_p0(inst, derived()) : build_p1(inst, derived());
  auto r = solve_milp(rm.model);
  std::optional<RationalVector> x;
  if (r.solution) {
    x = rm.signal(*r.solution);
  }
  return {std::move(r), std::move(rm), std::move(x)};
}

std::optional<bool> milp_unique(const Solved& s) {
  return is_unique_optimum(s.model.model, *s.result.solution, s.model.signal_variables());
}

// A = (2,3,6), b = 11.
Outcome criterion1() {
  Outcome o;
  const auto a = a236();
  const RationalVector b{11};
  const auto start = Clock::now();

  RecoveryInstance p0z(a, b, ConstraintSet::nonneg_integers(3), Objective::L0);
  const auto s0 = milp_solve(p0z);
  o.require(s0.result.status == SolveStatus::Optimal && *s0.result.value == 2,
            "P0(Z+) optimum is not 2");
  o.require(s0.x && p0z.is_feasible(*s0.x), "P0(Z+) solution infeasible");
  const auto oracle0 = brute_solve(p0z, {0, 0, 0}, {5, 3, 1});
  o.require(oracle0.result.value && *oracle0.result.value == 2, "oracle P0(Z+) optimum is not 2");
  o.require(oracle0.optima == std::vector<RationalVector>{{1, 3, 0}, {4, 1, 0}},
            "oracle P0(Z+) optimal set is not {(4,1,0),(1,3,0)}");
  o.require(s0.x && std::find(oracle0.optima.begin(), oracle0.optima.end(), *s0.x) !=
                        oracle0.optima.end(),
            "MILP P0(Z+) optimum outside the oracle's optimal set");

  RecoveryInstance p1z(a, b, ConstraintSet::nonneg_integers(3), Objective::L1);
  const auto s1 = milp_solve(p1z);
  o.require(s1.result.status == SolveStatus::Optimal && *s1.result.value == 3,
            "P1(Z+) optimum is not 3");
  o.require(s1.x == RationalVector{1, 1, 1}, "P1(Z+) solution is not (1,1,1)");
  o.require(milp_unique(s1) == true, "P1(Z+) optimum not unique");
  const auto oracle1 = brute_solve(p1z, {0, 0, 0}, {5, 3, 1});
  o.require(oracle1.optima == std::vector<RationalVector>{{1, 1, 1}}, "oracle P1(Z+) disagrees");

  RecoveryInstance p1r(a, b, ConstraintSet::nonneg_reals(3), Objective::L1);
  const auto s1r = milp_solve(p1r);
  o.require(s1r.result.status == SolveStatus::Optimal && *s1r.result.value == Rational(11, 6),
            "P1(R+) optimum is not 11/6");
  o.require(s1r.x == RationalVector{0, 0, Rational(11, 6)}, "P1(R+) solution is not (0,0,11/6)");
  o.require(milp_unique(s1r) == true, "P1(R+) optimum not unique");

  RecoveryInstance p0r(a, b, ConstraintSet::nonneg_reals(3), Objective::L0);
  const auto s0r = milp_solve(p0r);
  o.require(s0r.result.status == SolveStatus::Optimal && *s0r.result.value == 1,
            "P0(R+) optimum is not 1");
  const auto oracle0r = brute_solve_continuous_l0(p0r);
  o.require(oracle0r.result.value && *oracle0r.result.value == 1 && oracle0r.optimal_count == 3,
            "oracle P0(R+) does not find three optima of value 1");
  o.require(oracle0r.optima == std::vector<RationalVector>{{0, 0, Rational(11, 6)},
                                                           {0, Rational(11, 3), 0},
                                                           {Rational(11, 2), 0, 0}},
            "oracle P0(R+) optima differ");
  o.require(milp_unique(s0r) == false, "P0(R+) optimum wrongly reported unique");

  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s exceeds 1 s");
  return o;
}

// cyclic 3x3 and the 5x6 matrix, b = 1.
Outcome criterion2() {
  Outcome o;
  const auto start = Clock::now();
  const auto cyc = cyclic3();
  const RationalVector ones3(3, Rational(1));
  for (auto obj : {Objective::L0, Objective::L1}) {
    RecoveryInstance pz(cyc, ones3, ConstraintSet::nonneg_integers(3), obj);
    o.require(milp_solve(pz).result.status == SolveStatus::Infeasible,
              "cyclic: integral problem not infeasible");
    o.require(brute_solve(pz, {0, 0, 0}, {1, 1, 1}).result.status == SolveStatus::Infeasible,
              "cyclic: oracle finds an integral point");
  }
  RecoveryInstance pr(cyc, ones3, ConstraintSet::nonneg_reals(3), Objective::L1);
  const auto sr = milp_solve(pr);
  const RationalVector half(3, Rational(1, 2));
  o.require(sr.result.status == SolveStatus::Optimal && sr.x == half,
            "cyclic: continuous solution is not 1/2 * 1");
  o.require(milp_unique(sr) == true, "cyclic: continuous solution not unique");

  const auto w = example5_wide();
  const RationalVector ones5(5, Rational(1));
  RecoveryInstance p1z(w, ones5, ConstraintSet::nonneg_integers(6), Objective::L1);
  const auto sz = milp_solve(p1z);
  o.require(sz.result.status == SolveStatus::Optimal && *sz.result.value == 4,
            "5x6: P1(Z+) optimum is not 4");
  const RationalVector xz{1, 0, 0, 1, 1, 1};
  o.require(p1z.is_feasible(xz) && p1z.value_of(xz) == 4,
            "5x6: (1,0,0,1,1,1) is not an optimum of P1(Z+)");
  const auto oz = brute_solve(p1z, IntVector(6, Integer(0)), IntVector(6, Integer(1)));
  o.require(oz.result.value && *oz.result.value == 4 &&
                std::find(oz.optima.begin(), oz.optima.end(), xz) != oz.optima.end(),
            "5x6: oracle disagrees on P1(Z+)");
  RecoveryInstance p1r(w, ones5, ConstraintSet::nonneg_reals(6), Objective::L1);
  const auto sr6 = milp_solve(p1r);
  o.require(sr6.result.status == SolveStatus::Optimal && *sr6.result.value == Rational(3, 2),
            "5x6: P1(R+) optimum is not 3/2");
  const RationalVector xr{Rational(1, 2), Rational(1, 2), Rational(1, 2), 0, 0, 0};
  o.require(p1r.is_feasible(xr) && p1r.value_of(xr) == Rational(3, 2),
            "5x6: (1/2,1/2,1/2,0,0,0) is not an optimum of P1(R+)");
  o.require(sr6.x && l0_norm(*sr6.x) < 4, "5x6: continuous optimum is not sparser");

  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s exceeds 1 s");
  return o;
}

struct SmallInstance {
  RationalMatrix a;
  ConstraintSet x;
  RationalVector b;
  Objective objective;
};

SmallInstance random_small(std::mt19937_64& rng) {
  const auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
  };
  const auto m = static_cast<std::size_t>(pick(1, 4));
  const auto n = static_cast<std::size_t>(pick(2, 8));
  const bool binary_entries = pick(0, 1) == 0;
  RationalMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = binary_entries ? pick(0, 1) : pick(-2, 2);
    }
  }
  // keep the box small enough for exhaustive enumeration
  const long max_width = n <= 4 ? 6 : n <= 6 ? 4 : 2;
  IntVector l(n);
  IntVector u(n);
  const long kind = pick(0, 2);
  for (std::size_t j = 0; j < n; ++j) {
    long lo = 0;
    long hi = 0;
    do {
      lo = kind == 1 ? 0 : pick(-3, 0);
      hi = pick(0, 3);
      if (kind == 2) {
        hi = std::max(hi, 1L);
        lo = -hi;
      }
    } while (lo >= hi || hi - lo > max_width);
    l[j] = lo;
    u[j] = hi;
  }
  ConstraintSet x = kind == 0   ? ConstraintSet::box_integers(l, u)
                    : kind == 1 ? ConstraintSet::nonneg_box(u)
                                : ConstraintSet::symmetric_box(u);
  RationalVector b(m);
  if (pick(0, 3) == 0) {
    for (auto& v : b) {
      v = pick(-3, 3);
    }
  } else {
    IntVector x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      x0[j] = pick(l[j].get_si(), u[j].get_si());
    }
    b = multiply(a, x0);
  }
  return {a, x, b, pick(0, 1) == 0 ? Objective::L0 : Objective::L1};
}

Outcome criterion3() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t instances = 0;
  std::size_t solve_disagreements = 0;
  std::size_t goodness_checks = 0;
  std::size_t goodness_disagreements = 0;
  for (int k = 0; k < 240; ++k) {
    const auto inst = random_small(rng);
    RecoveryInstance ri(inst.a, inst.b, inst.x, inst.objective);
    const auto oracle = brute_solve(ri);
    const auto rm = inst.objective == Objective::L0 ? build_p0(ri) : build_p1(ri);
    const auto r = solve_milp(rm.model);
    ++instances;
    bool agree = r.status == oracle.result.status;
    if (agree && r.status == SolveStatus::Optimal) {
      const auto x = rm.signal(*r.solution);
      agree = *r.value == *oracle.result.value && ri.is_feasible(x) && ri.value_of(x) == *r.value;
    }
    if (!agree) {
      ++solve_disagreements;
      o.require(false, "solve disagreement on instance " + std::to_string(k));
    }
    for (std::size_t s = 1; s <= std::min<std::size_t>(2, inst.a.cols()); ++s) {
      const auto brute = brute_goodness(inst.a, s, inst.x);
      const auto by_oracle = is_s_good_l0(inst.a, s, inst.x, {Method::Oracle});
      const auto by_milp = is_s_good_l0(inst.a, s, inst.x, {Method::Milp});
      ++goodness_checks;
      if (!(by_oracle.conclusive && by_milp.conclusive && brute.good == by_oracle.good &&
            brute.good == by_milp.good)) {
        ++goodness_disagreements;
        o.require(false, "goodness disagreement on instance " + std::to_string(k) + " s=" +
                             std::to_string(s));
      }
    }
  }
  const double t = seconds_since(start);
  o.notes.push_back(std::to_string(instances) + " instances, " + std::to_string(goodness_checks) +
                    " goodness checks, " + std::to_string(solve_disagreements + goodness_disagreements) +
                    " disagreements");
  o.require(instances >= 200, "fewer than 200 instances");
  o.require(t < 600, "runtime " + std::to_string(t) + " s exceeds 10 min");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto start = Clock::now();
  const auto r = cli(4, "reproduce --table II --scale desk --deterministic --format csv");
  const double t = seconds_since(start);
  o.require(r.code == 0, "CLI exit code " + std::to_string(r.code));
  const auto rows = parse_csv(r.out);
  o.require(!rows.empty() && rows[0] == std::vector<std::string>{"s", "value", "time_s", "unique"},
            "unexpected header");
  std::vector<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 4) {
      o.require(false, "malformed row " + std::to_string(i));
      continue;
    }
    seen.push_back(row[0]);
    o.require(row[1] == row[0], "s=" + row[0] + ": value " + row[1]);
    o.require(row[3] == "true", "s=" + row[0] + ": uniqueness cut did not make the model infeasible");
  }
  std::vector<std::string> expected;
  for (int s = 5; s <= 60; s += 5) {
    expected.push_back(std::to_string(s));
  }
  o.require(seen == expected, "grid is not 5,10,...,60");
  o.notes.push_back("64x128, " + std::to_string(seen.size()) + " rows, " +
                    std::to_string(static_cast<int>(t)) + " s");
  o.require(t < 1200, "runtime exceeds 20 min");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto r = cli(5, "reproduce --table I --scale desk --deterministic --format csv");
  o.require(r.code == 0, "CLI exit code " + std::to_string(r.code));
  const auto rows = parse_csv(r.out);
  o.require(!rows.empty() && rows[0] == std::vector<std::string>{"s", "best_objective", "time_s"},
            "unexpected header");
  std::vector<int> pattern;  // 0 good, 1 positive
  std::string trace;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3 || rows[i][1] == "inconclusive") {
      o.require(false, "row " + std::to_string(i) + " inconclusive or malformed");
      continue;
    }
    const auto value = parse_rational(rows[i][1]);
    o.require(value >= 0, "negative objective");
    pattern.push_back(value > 0 ? 1 : 0);
    trace += (trace.empty() ? "" : " ") + rows[i][0] + ":" + rows[i][1];
  }
  const bool monotone = std::is_sorted(pattern.begin(), pattern.end());
  const auto first_positive = std::find(pattern.begin(), pattern.end(), 1);
  o.require(monotone, "objective is not 0 up to a threshold and positive after it");
  o.require(!pattern.empty() && pattern.front() == 0, "no good sparsity level in the grid");
  o.require(first_positive != pattern.end(), "no positive objective in the grid");
  if (monotone && first_positive != pattern.end() && first_positive != pattern.begin()) {
    const auto last_good = static_cast<std::size_t>(first_positive - pattern.begin());
    o.notes.push_back("12x24, largest good s = " + rows[last_good][0] + "; " + trace);
  }
  return o;
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, bool binary) {
  RationalMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = binary ? static_cast<long>(uniform_below(rng, 2))
                       : static_cast<long>(uniform_below(rng, 5)) - 2;
    }
  }
  return a;
}

std::vector<RationalMatrix> suite_matrices() {
  std::vector<RationalMatrix> out{a236(), RationalMatrix{{1, 2}}, cyclic3(),
                                  RationalMatrix{{1, 0, 1}, {0, 1, 1}},
                                  RationalMatrix{{1, 1, 1, 1}, {1, 2, 3, 4}}};
  std::mt19937_64 rng(77);
  for (int k = 0; k < 36; ++k) {
    const std::size_t m = 1 + uniform_below(rng, 2);
    const std::size_t n = 3 + uniform_below(rng, 3);
    out.push_back(random_matrix(rng, m, n, k % 3 == 0));
  }
  return out;
}

long minor_bound(const RationalMatrix& a) {
  // Hadamard bound on the entries of a primitive circuit vector
  long alpha = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      alpha = std::max(alpha, Rational(abs(a(i, j))).get_num().get_si());
    }
  }
  double best = 1;
  for (std::size_t r = 1; r <= a.rows(); ++r) {
    best = std::max(best, std::pow(static_cast<double>(r), r / 2.0) * std::pow(alpha, r));
  }
  return std::max(1L, static_cast<long>(best));
}

Outcome criterion6() {
  Outcome o;
  std::size_t counterexamples = 0;
  const auto fail = [&](const std::string& what) {
    ++counterexamples;
    o.require(false, what);
  };

  // (a) spark(A) > 2s iff (s,Z^n,0)-good, decided from the definition
  std::size_t spark_checks = 0;
  for (const auto& a : suite_matrices()) {
    const auto sp = spark(a);
    const long k = minor_bound(a);
    const auto box = ConstraintSet::symmetric_box(IntVector(a.cols(), Integer(k)));
    for (std::size_t s = 1; 2 * s <= a.cols() + 1; ++s) {
      const bool by_spark = !sp || *sp > 2 * s;
      const bool by_definition = brute_goodness(a, s, box).good;
      const bool by_checker = is_s_good_l0(a, s, ConstraintSet::integers(a.cols())).good;
      ++spark_checks;
      if (by_spark != by_definition || by_spark != by_checker) {
        fail("(a) spark/goodness mismatch");
      }
    }
  }

  // (b) implications between the NSP variants and l1 recovery; (c) l1-good implies l0-good
  std::size_t arrow_checks = 0;
  std::size_t prop_checks = 0;
  std::mt19937_64 rng(4242);
  for (int k = 0; k < 60; ++k) {
    const std::size_t m = 1 + uniform_below(rng, 3);
    const std::size_t n = 3 + uniform_below(rng, 3);
    const auto a = random_matrix(rng, m, n, k % 4 == 0);
    IntVector l(n);
    IntVector u(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = 1 + static_cast<long>(uniform_below(rng, 2));
      l[j] = -static_cast<long>(uniform_below(rng, 3));
    }
    IntVector width(n);
    for (std::size_t j = 0; j < n; ++j) {
      width[j] = u[j] - l[j];
    }
    const auto diff_box = ConstraintSet::symmetric_box(width);
    const auto sym_u = ConstraintSet::symmetric_box(u);
    const auto box_lu = ConstraintSet::box_integers(l, u);
    const auto box_0u = ConstraintSet::nonneg_box(u);
    for (std::size_t s = 1; s <= 2; ++s) {
      const bool nsp_z =
          nsp_check(a, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::integers(n), s)).good;
      const bool nsp_box = nsp_check(a, NspQuery::of_order(NspVariant::Nsp, diff_box, s)).good;
      const bool nspp_z =
          nsp_check(a, NspQuery::of_order(NspVariant::NspPlus, ConstraintSet::integers(n), s)).good;
      const bool nspp_u = nsp_check(a, NspQuery::of_order(NspVariant::NspPlus, sym_u, s)).good;
      const bool split = split_nsp_plus_check(a, l, u, std::nullopt, s).good;
      const bool rec_lu = brute_goodness_l1(a, s, box_lu).good;
      const bool rec_0u = brute_goodness_l1(a, s, box_0u).good;
      arrow_checks += 7;
      if (nsp_z && !nsp_box) fail("(b) NSP(Z^n) without NSP([l-u,u-l]_Z)");
      if (nsp_box && !rec_lu) fail("(b) NSP([l-u,u-l]_Z) without recovery over [l,u]_Z");
      if (split != rec_lu) fail("(b) split NSP+ differs from recovery over [l,u]_Z");
      if (nsp_z && !nspp_z) fail("(b) NSP(Z^n) without NSP+(Z^n)");
      if (nspp_z && !nspp_u) fail("(b) NSP+(Z^n) without NSP+([-u,u]_Z)");
      if (nspp_u != rec_0u) fail("(b) NSP+([-u,u]_Z) differs from recovery over [0,u]_Z");
      if (nsp_z && !rec_lu) fail("(b) NSP(Z^n) without recovery over [l,u]_Z");

      for (const auto& x : {box_lu, box_0u, sym_u}) {
        ++prop_checks;
        if (brute_goodness_l1(a, s, x).good && !brute_goodness(a, s, x).good) {
          fail("(c) l1-good but not l0-good over " + x.describe());
        }
        if (is_s_good_l1(a, s, x).good && !is_s_good_l0(a, s, x).good) {
          fail("(c) checkers: l1-good but not l0-good over " + x.describe());
        }
      }
      for (const auto& x : {ConstraintSet::integers(n), ConstraintSet::nonneg_integers(n)}) {
        ++prop_checks;
        if (is_s_good_l1(a, s, x).good && !is_s_good_l0(a, s, x).good) {
          fail("(c) checkers: l1-good but not l0-good over " + x.describe());
        }
      }
    }
  }

  // (d) delta-ary round trip
  std::size_t round_trips = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    IntVector u(n, Integer(1));
    while (true) {
      const auto a = delta_ary_matrix(u);
      IntVector x(n, Integer(0));
      while (true) {
        const auto b = multiply(a, x)[0];
        ++round_trips;
        if (delta_ary_decode(a, b, u) != x) {
          fail("(d) delta-ary round trip failed");
        }
        std::size_t i = 0;
        while (i < n && x[i] == u[i]) {
          x[i] = 0;
          ++i;
        }
        if (i == n) break;
        x[i] += 1;
      }
      std::size_t i = 0;
      while (i < n && u[i] == 3) {
        u[i] = 1;
        ++i;
      }
      if (i == n) break;
      u[i] += 1;
    }
  }

  // (e) LP relaxations over unimodular network matrices have integral vertices
  std::size_t lp_checks = 0;
  std::mt19937_64 net_rng(99);
  for (int k = 0; k < 20; ++k) {
    const std::size_t nodes = 3 + uniform_below(net_rng, 3);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t v = 1; v < nodes; ++v) {
      const std::size_t w = uniform_below(net_rng, v);
      arcs.emplace_back(uniform_below(net_rng, 2) ? std::make_pair(v, w) : std::make_pair(w, v));
    }
    const std::size_t extra = uniform_below(net_rng, 4);
    for (std::size_t e = 0; e < extra; ++e) {
      const std::size_t p = uniform_below(net_rng, nodes);
      std::size_t q = uniform_below(net_rng, nodes);
      if (p == q) q = (q + 1) % nodes;
      arcs.emplace_back(p, q);
    }
    RationalMatrix a(nodes - 1, arcs.size());
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      if (arcs[e].first + 1 < nodes) a(arcs[e].first, e) = 1;
      if (arcs[e].second + 1 < nodes) a(arcs[e].second, e) = -1;
    }
    if (!is_unimodular(a)) {
      fail("(e) network matrix not unimodular");
      continue;
    }
    IntVector x0(arcs.size());
    for (auto& v : x0) v = static_cast<long>(uniform_below(net_rng, 4));
    const auto b = multiply(a, x0);
    for (int trial = 0; trial < 3; ++trial) {
      LpModel lp;
      for (std::size_t e = 0; e < arcs.size(); ++e) {
        lp.add_variable("x" + std::to_string(e), Rational(0), std::nullopt, false,
                        Rational(static_cast<long>(uniform_below(net_rng, 4))));
      }
      for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<Rational> row(a.row(i).begin(), a.row(i).end());
        lp.add_dense_row(row, Relation::Equal, b[i]);
      }
      const auto r = solve_lp(lp);
      ++lp_checks;
      if (r.status != SolveStatus::Optimal || !is_integral(*r.solution)) {
        fail("(e) non-integral LP vertex on a unimodular matrix");
      }
    }
  }

  o.notes.push_back(std::to_string(spark_checks) + " spark, " + std::to_string(arrow_checks) +
                    " arrow, " + std::to_string(prop_checks) + " l1=>l0, " +
                    std::to_string(round_trips) + " delta-ary, " + std::to_string(lp_checks) +
                    " LP checks; " + std::to_string(counterexamples) + " counterexamples");
  return o;
}

struct SpanConstruction {
  RationalMatrix a;
  IntVector v;

  [[nodiscard]] std::set<IntVector> expected_points() const {
    // integral multiples of v inside [-2,2]^n
    std::set<IntVector> out;
    for (long k = -2; k <= 2; ++k) {
      IntVector p(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) p[j] = k * v[j];
      out.insert(p);
    }
    return out;
  }
};

/// A with ker(A) = span{v, w}, v = (1,-1,vt), w = (k,k,wt), k = floor(n/2).
SpanConstruction span_construction(std::size_t n, const IntVector& vt, const IntVector& wt) {
  IntVector v{1, -1};
  const long k = static_cast<long>(n / 2);
  IntVector w{k, k};
  v.insert(v.end(), vt.begin(), vt.end());
  w.insert(w.end(), wt.begin(), wt.end());
  RationalMatrix vw(2, n);
  for (std::size_t j = 0; j < n; ++j) {
    vw(0, j) = v[j];
    vw(1, j) = w[j];
  }
  const auto comp = kernel_basis(vw).vectors;
  RationalMatrix a(comp.size(), n);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = comp[i][j];
    }
  }
  return {a, v};
}

Outcome criterion7() {
  Outcome o;
  // A = (1,2), -l = u = 1, S = {1}
  const RationalMatrix a{{1, 2}};
  const auto pts = kernel_points(a, {-2, -2}, {2, 2});
  o.require(pts == std::vector<IntVector>{{-2, 1}, {0, 0}, {2, -1}},
            "kernel points in [-2,2]^2 are not {(-2,1),0,(2,-1)}");
  o.require(pts == brute_kernel_points(a, {-2, -2}, {2, 2}), "enumerators disagree");
  for (const auto& v : pts) {
    if (v[0] != 0 && abs(v[0]) < abs(v[1])) {
      o.require(false, "a kernel vector satisfies |v1| < |v2|");
    }
  }
  const auto nsp =
      nsp_check(a, NspQuery::for_support(NspVariant::Nsp, ConstraintSet::symmetric_box({2, 2}),
                                         Support({0})));
  o.require(!nsp.good && nsp.witness, "NSP([l-u,u-l]_Z) for S={1} not reported violated");
  const auto box = ConstraintSet::symmetric_box({1, 1});
  for (const RationalVector& x : {RationalVector{0, 0}, RationalVector{1, 0}, RationalVector{-1, 0}}) {
    RecoveryInstance inst(a, multiply(a, x), box, Objective::L1);
    const auto r = brute_solve(inst);
    o.require(r.optima == std::vector<RationalVector>{x}, "a vector on S={1} is not the unique minimiser");
  }
  o.require(split_nsp_plus_check(a, {-1, -1}, {1, 1}, Support({0}), 0).good,
            "exact condition rejects S={1}");

  // n = 6: ker(A) = span{v, w}, v = (1,-1,v'), w = (3,3,w')
  std::size_t only_v = 0;
  std::size_t box_good = 0;
  std::size_t real_bad = 0;
  std::size_t separating = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    IntVector vt;
    IntVector wt;
    for (unsigned i = 0; i < 4; ++i) {
      vt.push_back((mask >> i) & 1U ? -1 : 1);
      wt.push_back((mask >> (4 + i)) & 1U ? -1 : 1);
    }
    const auto c = span_construction(6, vt, wt);
    const IntVector lo(6, Integer(-2));
    const IntVector hi(6, Integer(2));
    const auto kp = brute_kernel_points(c.a, lo, hi);
    o.require(kp == kernel_points(c.a, lo, hi), "n=6: enumerators disagree");
    if (std::set<IntVector>(kp.begin(), kp.end()) == c.expected_points()) ++only_v;
    const bool box = nsp_check(c.a, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::symmetric_box(hi), 2)).good;
    const bool real = nsp_check(c.a, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::reals(6), 2)).good;
    box_good += box ? 1 : 0;
    real_bad += real ? 0 : 1;
    separating += box && !real ? 1 : 0;
  }
  o.notes.push_back("n=6 over 256 sign patterns: " + std::to_string(only_v) + " with ker(A) ∩ [-2,2]^6 = {0,±v,±2v}, " +
                    std::to_string(box_good) + " with bounded NSP order 2, " + std::to_string(real_bad) +
                    " violating NSP(R^6) order 2");
  o.require(separating > 0, "n=6: no instance separates bounded NSP order 2 from NSP(R^6) order 2; "
                            "(v+w)/2 = (2,1,.) and (w-v)/2 = (1,2,.) are integral kernel points in [-2,2]^6");

  // the same construction at n = 8 (w = (4,4,w')), for information
  const auto c8 = span_construction(8, IntVector(6, Integer(1)), IntVector(6, Integer(1)));
  const IntVector hi8(8, Integer(2));
  const auto kp8 = kernel_points(c8.a, IntVector(8, Integer(-2)), hi8);
  const bool box8 = nsp_check(c8.a, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::symmetric_box(hi8), 3)).good;
  const bool real8 = nsp_check(c8.a, NspQuery::of_order(NspVariant::Nsp, ConstraintSet::reals(8), 2)).good;
  o.notes.push_back(std::string("n=8: ker(A) ∩ [-2,2]^8 = {0,±v,±2v}: ") +
                    (std::set<IntVector>(kp8.begin(), kp8.end()) == c8.expected_points() ? "yes" : "no") +
                    ", bounded NSP order 3: " + (box8 ? "holds" : "fails") + ", NSP(R^8) order 2: " +
                    (real8 ? "holds" : "fails"));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto m236 = write_text(kDir / "a236.csv", "2,3,6\n");
  const auto mcyc = write_text(kDir / "cyclic.csv", "1,1,0\n0,1,1\n1,0,1\n");
  const auto m56 = write_text(kDir / "wide.csv", matrix_to_csv(example5_wide()));
  const auto m12 = write_text(kDir / "a12.csv", "1,2\n");
  const std::string fmt = " --format csv --deterministic";
  for (auto obj : {"l0", "l1"}) {
    for (auto set : {" --set Z+", " --set R+"}) {
      cli(1, std::string("solve --matrix ") + m236 + " --rhs 11 --objective " + obj + set + " --unique" + fmt);
    }
  }
  cli(1, "oracle --matrix " + m236 + " --rhs 11 --set nnbox --upper 5,3,1" + fmt);
  cli(2, "solve --matrix " + mcyc + " --rhs 1 --set nnbox --upper 1 --objective l1" + fmt);
  cli(2, "solve --matrix " + mcyc + " --rhs 1 --set R+ --objective l1" + fmt);
  cli(2, "solve --matrix " + m56 + " --rhs 1 --set nnbox --upper 1 --objective l1" + fmt);
  cli(2, "solve --matrix " + m56 + " --rhs 1 --set R+ --objective l1" + fmt);
  for (int seed = 1; seed <= 3; ++seed) {
    cli(3, "run -m 3 -n 6 --seed " + std::to_string(seed) +
               " --set box --lower -1 --upper 2 --grid 0:6 --objective l1 --unique" + fmt);
    cli(3, "run --experiment goodness -m 3 -n 6 --seed " + std::to_string(seed) +
               " --set symbox --upper 1 --grid 1:3" + fmt);
  }
  cli(3, "oracle --matrix " + m12 + " --set symbox --upper 2 -s 1" + fmt);
  cli(3, "check-goodness --matrix " + m12 + " --set symbox --upper 2 -s 1 --method milp" + fmt);
  cli(6, "spark --matrix " + m236 + fmt);
  cli(6, "check-goodness --matrix " + m236 + " --set Z -s 1" + fmt);
  cli(6, "check-goodness --matrix " + m236 + " --set Z+ -s 1 --objective l1" + fmt);
  cli(6, "delta-ary --upper 3,2,3 --value 57" + fmt);
  cli(6, "unimodular --matrix " + mcyc + fmt);
  cli(7, "check-nsp --matrix " + m12 + " --set symbox --upper 2 --support 1" + fmt);
  cli(7, "check-nsp --matrix " + m12 + " --variant split-nsp+ --set symbox --upper 1 --support 1" + fmt);
  cli(7, "check-nsp --matrix " + m12 + " --set R --order 1" + fmt);

  std::size_t compared = 0;
  for (const auto& [criterion, calls] : g_cli_calls) {
    for (const auto& args : calls) {
      const auto first = g_cli_cache.at(args);
      const auto second = run_cli(args);
      ++compared;
      if (first.code == 2 || first.code < 0) {
        o.require(false, "criterion " + std::to_string(criterion) + ": usage failure: " + args);
      }
      if (first.code != second.code || first.out != second.out || first.out.empty()) {
        o.require(false, "criterion " + std::to_string(criterion) + ": output differs: " + args);
      }
    }
  }
  o.notes.push_back(std::to_string(compared) + " invocations compared byte for byte");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::stoi(argv[i]));
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A=(2,3,6), b=11 golden values", criterion1},
      {"cyclic 3x3 and 5x6 golden values, b=1", criterion2},
      {"MILP vs brute-force oracle equivalence", criterion3},
      {"desk-scale binary recovery with uniqueness (64x128)", criterion4},
      {"desk-scale goodness threshold (12x24)", criterion5},
      {"property suites (spark, NSP arrows, l1=>l0, delta-ary, unimodular LPs)", criterion6},
      {"NSP counterexamples", criterion7},
      {"determinism of --deterministic CLI output", criterion8},
  };
  bool all = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    if (!selected.empty() && selected.count(index) == 0) {
      continue;
    }
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(start);
    all = all && o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", t);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " ("
              << timing << ")";
    for (const auto& note : o.notes) {
      std::cout << "\n    " << note;
    }
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
