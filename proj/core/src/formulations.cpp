#include "intrec/formulations.hpp"

#include "intrec/errors.hpp"
#include "intrec/regions.hpp"

namespace intrec {

namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

struct CoordinateBounds {
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
};

CoordinateBounds coordinate_bounds(const RecoveryInstance& inst, const FormulationOptions& opt) {
  const std::size_t n = inst.a.cols();
  CoordinateBounds cb;
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = inst.x.lower(i);
    const auto u = inst.x.upper(i);
    cb.lower.push_back(l ? std::optional<Rational>(Rational(*l)) : std::nullopt);
    cb.upper.push_back(u ? std::optional<Rational>(Rational(*u)) : std::nullopt);
  }
  if (!opt.derive_bounds || !inst.x.is_nonnegative()) {
    return cb;
  }
  for (std::size_t k = 0; k < inst.a.rows(); ++k) {
    bool nonneg = true;
    for (const auto& v : inst.a.row(k)) {
      nonneg = nonneg && sgn(v) >= 0;
    }
    if (!nonneg) {
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(inst.a(k, i)) <= 0) {
        continue;
      }
      Rational bound = inst.b[k] / inst.a(k, i);
      if (inst.x.is_integral()) {
        bound = floor_of(bound);
      }
      if (!cb.upper[i] || bound < *cb.upper[i]) {
        cb.upper[i] = bound;
      }
    }
  }
  return cb;
}

void add_equations(LpModel& model, const RationalMatrix& a, const RationalVector& b,
                   const std::vector<std::size_t>& pos,
                   const std::vector<std::optional<std::size_t>>& neg) {
  for (std::size_t k = 0; k < a.rows(); ++k) {
    Terms terms;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (sgn(a(k, i)) == 0) {
        continue;
      }
      terms.emplace_back(pos[i], a(k, i));
      if (neg[i]) {
        terms.emplace_back(*neg[i], -a(k, i));
      }
    }
    model.add_row(terms, Relation::Equal, b[k], "eq" + std::to_string(k + 1));
  }
}

Terms sum_of(const std::vector<std::size_t>& vars, const Rational& coeff = 1) {
  Terms t;
  for (auto j : vars) {
    t.emplace_back(j, coeff);
  }
  return t;
}

Terms concat(Terms a, const Terms& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

// Shared part of the binary goodness models; returns (v, w).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> goodness_core(
    LpModel& model, const RationalMatrix& a, std::size_t s, const Rational& cost) {
  require_nonempty(a, "goodness model");
  const std::size_t n = a.cols();
  if (s > n) {
    throw PreconditionError("sparsity " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  }
  std::vector<std::size_t> v;
  std::vector<std::size_t> w;
  std::vector<std::optional<std::size_t>> negw;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(model.add_binary(idx("v", i), cost));
  }
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(model.add_binary(idx("w", i), cost));
    negw.emplace_back(w.back());
  }
  add_equations(model, a, RationalVector(a.rows()), v, negw);
  const Rational rs(static_cast<long>(s));
  model.add_row(sum_of(v), Relation::LessEqual, rs, "card_v");
  model.add_row(sum_of(w), Relation::LessEqual, rs, "card_w");
  for (std::size_t i = 0; i < n; ++i) {
    model.add_row({{v[i], 1}, {w[i], 1}}, Relation::LessEqual, 1, idx("excl", i));
  }
  model.add_row(concat(sum_of(v), sum_of(w, -1)), Relation::GreaterEqual, 0, "sym");
  return {v, w};
}

}  // namespace

RationalVector RecoveryModel::signal(const RationalVector& solution) const {
  RationalVector x(positive.size());
  for (std::size_t i = 0; i < positive.size(); ++i) {
    x[i] = solution[positive[i]];
    if (negative[i]) {
      x[i] -= solution[*negative[i]];
    }
  }
  return x;
}

std::vector<std::size_t> RecoveryModel::signal_variables() const {
  std::vector<std::size_t> out = positive;
  for (const auto& n : negative) {
    if (n) {
      out.push_back(*n);
    }
  }
  return out;
}

RecoveryModel build_p0(const RecoveryInstance& inst, const FormulationOptions& options) {
  const std::size_t n = inst.a.cols();
  const bool integral = inst.x.is_integral();
  RecoveryModel rm;
  rm.negative.assign(n, std::nullopt);
  LpModel& model = rm.model;
  if (inst.x.is_binary()) {
    for (std::size_t i = 0; i < n; ++i) {
      rm.positive.push_back(model.add_binary(idx("x", i), 1));
    }
    rm.indicators = rm.positive;
    add_equations(model, inst.a, inst.b, rm.positive, rm.negative);
    return rm;
  }
  const auto cb = coordinate_bounds(inst, options);
  for (std::size_t i = 0; i < n; ++i) {
    if (!cb.lower[i] || !cb.upper[i]) {
      throw MissingBounds("P0 over " + inst.x.describe() +
                          " needs finite bounds on every coordinate; supply a box");
    }
    rm.positive.push_back(model.add_variable(idx("x", i), cb.lower[i], cb.upper[i], integral));
  }
  for (std::size_t i = 0; i < n; ++i) {
    rm.indicators.push_back(model.add_binary(idx("y", i), 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = rm.positive[i];
    const auto y = rm.indicators[i];
    if (sgn(*cb.upper[i]) > 0) {
      model.add_row({{x, 1}, {y, -*cb.upper[i]}}, Relation::LessEqual, 0, idx("ub", i));
    }
    if (sgn(*cb.lower[i]) < 0) {
      model.add_row({{x, 1}, {y, -*cb.lower[i]}}, Relation::GreaterEqual, 0, idx("lb", i));
    }
  }
  add_equations(model, inst.a, inst.b, rm.positive, rm.negative);
  return rm;
}

RecoveryModel build_p1(const RecoveryInstance& inst, const FormulationOptions& options) {
  const std::size_t n = inst.a.cols();
  const bool integral = inst.x.is_integral();
  const auto cb = coordinate_bounds(inst, options);
  RecoveryModel rm;
  LpModel& model = rm.model;
  for (std::size_t i = 0; i < n; ++i) {
    if (integral && (!cb.lower[i] || !cb.upper[i])) {
      throw MissingBounds("P1 over " + inst.x.describe() +
                          " needs finite bounds on every coordinate; supply a box");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Rational> hi;
    if (cb.upper[i]) {
      hi = *cb.upper[i];
    }
    rm.positive.push_back(model.add_variable(idx("xp", i), Rational(0), hi, integral, 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cb.lower[i] && sgn(*cb.lower[i]) == 0) {
      rm.negative.emplace_back(std::nullopt);
      continue;
    }
    std::optional<Rational> hi;
    if (cb.lower[i]) {
      hi = -*cb.lower[i];
    }
    rm.negative.emplace_back(model.add_variable(idx("xn", i), Rational(0), hi, integral, 1));
  }
  rm.indicators = rm.positive;
  add_equations(model, inst.a, inst.b, rm.positive, rm.negative);
  return rm;
}

LpModel build_goodness_binary(const RationalMatrix& a, std::size_t s) {
  LpModel model;
  model.sense = Sense::Maximize;
  goodness_core(model, a, s, 1);
  return model;
}

LpModel build_goodness_binary_alt(const RationalMatrix& a, std::size_t s) {
  LpModel model;
  const auto [v, w] = goodness_core(model, a, s, 1);
  model.add_row(concat(sum_of(v), sum_of(w)), Relation::GreaterEqual, 1, "nonzero");
  return model;
}

LpModel build_goodness_unit_box(const RationalMatrix& a, std::size_t s) {
  require_nonempty(a, "goodness model");
  const std::size_t n = a.cols();
  if (s > n) {
    throw PreconditionError("sparsity " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  }
  LpModel model;
  model.sense = Sense::Maximize;
  std::vector<std::size_t> v;
  std::vector<std::size_t> w;
  std::vector<std::size_t> y;
  std::vector<std::size_t> z;
  std::vector<std::optional<std::size_t>> negw;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(model.add_variable(idx("v", i), Rational(0), Rational(1), false, 1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(model.add_variable(idx("w", i), Rational(0), Rational(1), false, 1));
    negw.emplace_back(w.back());
  }
  for (std::size_t i = 0; i < n; ++i) {
    y.push_back(model.add_binary(idx("y", i)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    z.push_back(model.add_binary(idx("z", i)));
  }
  add_equations(model, a, RationalVector(a.rows()), v, negw);
  for (std::size_t i = 0; i < n; ++i) {
    model.add_row({{v[i], 1}, {y[i], -1}}, Relation::LessEqual, 0, idx("vy", i));
    model.add_row({{w[i], 1}, {z[i], -1}}, Relation::LessEqual, 0, idx("wz", i));
    model.add_row({{y[i], 1}, {z[i], 1}}, Relation::LessEqual, 1, idx("excl", i));
  }
  const Rational rs(static_cast<long>(s));
  model.add_row(sum_of(y), Relation::LessEqual, rs, "card_y");
  model.add_row(sum_of(z), Relation::LessEqual, rs, "card_z");
  model.add_row(concat(sum_of(v), sum_of(w, -1)), Relation::GreaterEqual, 0, "sym");
  return model;
}

LpModel build_goodness_general(const RationalMatrix& a, std::size_t s, const IntVector& lower,
                               const IntVector& upper) {
  require_nonempty(a, "goodness model");
  const std::size_t n = a.cols();
  if (lower.size() != n || upper.size() != n) {
    throw DimensionError("bound vectors must have length n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(lower[i]) > 0 || sgn(upper[i]) < 0 || lower[i] >= upper[i]) {
      throw PreconditionError("bounds must satisfy l <= 0 <= u and l < u");
    }
  }
  LpModel model;
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer span = upper[i] - lower[i];
    z.push_back(model.add_variable(idx("z", i), Rational(-span), Rational(span), true));
  }
  Terms outer;    // |S4| + |S3| <= s
  Terms inner;    // |S4| + |S2| <= s
  Terms total;    // 2|S4| + |S3| + |S2| + |S1| <= 2s
  Terms zeros;
  for (std::size_t i = 0; i < n; ++i) {
    Terms pick;
    Terms low{{z[i], 1}};
    Terms high{{z[i], 1}};
    const std::size_t zero = model.add_binary("d" + std::to_string(i + 1) + "_0");
    pick.emplace_back(zero, 1);
    zeros.emplace_back(zero, 1);
    for (const auto& r : region_intervals(lower[i], upper[i])) {
      const std::size_t d = model.add_binary("d" + std::to_string(i + 1) + "_" + to_string(r.region));
      pick.emplace_back(d, 1);
      low.emplace_back(d, -Rational(r.lo));
      high.emplace_back(d, -Rational(r.hi));
      const int level = region_level(r.region);
      if (level >= 3) {
        outer.emplace_back(d, 1);
      }
      if (level == 4 || level == 2) {
        inner.emplace_back(d, 1);
      }
      total.emplace_back(d, level == 4 ? 2 : 1);
    }
    model.add_row(pick, Relation::Equal, 1, idx("one", i));
    model.add_row(low, Relation::GreaterEqual, 0, idx("lo", i));
    model.add_row(high, Relation::LessEqual, 0, idx("hi", i));
  }
  const Rational rs(static_cast<long>(s));
  model.add_row(outer, Relation::LessEqual, rs, "card_outer");
  model.add_row(inner, Relation::LessEqual, rs, "card_inner");
  model.add_row(total, Relation::LessEqual, 2 * rs, "card_total");
  model.add_row(zeros, Relation::LessEqual, Rational(static_cast<long>(n) - 1), "nonzero");
  std::vector<std::optional<std::size_t>> none(n);
  add_equations(model, a, RationalVector(a.rows()), z, none);
  return model;
}

LpModel add_uniqueness_cut(const LpModel& model, const RationalVector& xstar,
                           std::optional<std::vector<std::size_t>> vars) {
  if (!model.is_feasible(xstar)) {
    throw PreconditionError("uniqueness cut requires a feasible point");
  }
  std::vector<std::size_t> cut_vars;
  if (vars) {
    cut_vars = *vars;
  } else {
    for (std::size_t j = 0; j < model.num_vars(); ++j) {
      if (model.integer[j]) {
        cut_vars.push_back(j);
      }
    }
  }
  LpModel out = model;
  Terms cut;
  Rational rhs = 1;
  for (auto j : cut_vars) {
    if (!model.integer[j] || !model.lower[j] || !model.upper[j]) {
      throw PreconditionError("uniqueness cut variable '" + model.names[j] +
                              "' must be integral and bounded");
    }
    const Rational lo(ceil_of(*model.lower[j]));
    const Rational hi(floor_of(*model.upper[j]));
    const Rational& c = xstar[j];
    if (lo == 0 && hi == 1) {
      if (c == 1) {
        cut.emplace_back(j, -1);
        rhs -= 1;
      } else {
        cut.emplace_back(j, 1);
      }
      continue;
    }
    if (c < hi) {
      // g = 1 forces x_j >= c + 1
      const auto g = out.add_binary("g" + model.names[j] + "_up");
      out.add_row({{j, 1}, {g, -(c + 1 - lo)}}, Relation::GreaterEqual, lo,
                  "cut_up_" + model.names[j]);
      cut.emplace_back(g, 1);
    }
    if (c > lo) {
      // g = 1 forces x_j <= c - 1
      const auto g = out.add_binary("g" + model.names[j] + "_dn");
      out.add_row({{j, 1}, {g, hi - c + 1}}, Relation::LessEqual, hi,
                  "cut_dn_" + model.names[j]);
      cut.emplace_back(g, 1);
    }
  }
  out.add_row(cut, Relation::GreaterEqual, rhs, "nogood");
  return out;
}

LpModel pin_objective(const LpModel& model, const Rational& value) {
  LpModel out = model;
  out.add_dense_row(model.objective, Relation::Equal, value, "pin");
  return out;
}

std::optional<bool> is_unique_optimum(const LpModel& model, const RationalVector& solution,
                                      const std::vector<std::size_t>& vars,
                                      const MilpOptions& options) {
  const LpModel pinned = pin_objective(model, model.objective_value(solution));
  bool all_integral = true;
  for (auto j : vars) {
    all_integral = all_integral && model.integer[j];
  }
  MilpOptions opt = options;
  opt.cutoff.reset();
  if (all_integral) {
    LpModel cut = add_uniqueness_cut(pinned, solution, vars);
    cut.objective.assign(cut.num_vars(), 0);
    const auto res = solve_milp(cut, opt);
    if (res.status == SolveStatus::LimitReached) {
      return std::nullopt;
    }
    return res.status == SolveStatus::Infeasible;
  }
  for (auto j : vars) {
    for (const Sense sense : {Sense::Minimize, Sense::Maximize}) {
      LpModel probe = pinned;
      probe.sense = sense;
      probe.objective.assign(probe.num_vars(), 0);
      probe.objective[j] = 1;
      const auto res = solve_milp(probe, opt);
      if (res.status == SolveStatus::LimitReached) {
        return std::nullopt;
      }
      if (res.status != SolveStatus::Optimal || *res.value != solution[j]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace intrec
