#include "intrec/simplex.hpp"

#include <limits>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

}  // namespace

struct Tableau {
  std::size_t m = 0;
  std::size_t cols = 0;
  std::vector<Integer> t;    // m x cols, equals d * B^-1 A
  std::vector<Integer> rhs;  // d * B^-1 b
  std::vector<Integer> z;    // d * reduced costs
  Integer d = 1;             // |det B|
  std::vector<std::size_t> basis;
  std::vector<VarState> state;

  Integer& at(std::size_t i, std::size_t j) { return t[i * cols + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return t[i * cols + j]; }
};

struct SimplexEngine::Work {
  Tableau tab;
  std::vector<std::optional<Rational>> lo;
  std::vector<std::optional<Rational>> hi;
  RationalVector val;
  std::vector<Integer> cost;
};

namespace {

using Work = SimplexEngine::Work;

bool is_fixed(const Work& w, std::size_t j) {
  return w.lo[j] && w.hi[j] && *w.lo[j] == *w.hi[j];
}

// Fraction-free pivot on (r, q). Row r is negated first when the pivot is
// negative so that d stays positive.
void pivot(Tableau& tab, std::size_t r, std::size_t q) {
  const std::size_t cols = tab.cols;
  Integer* row_r = &tab.t[r * cols];
  if (sgn(row_r[q]) < 0) {
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_neg(row_r[j].get_mpz_t(), row_r[j].get_mpz_t());
    }
    mpz_neg(tab.rhs[r].get_mpz_t(), tab.rhs[r].get_mpz_t());
  }
  const Integer p = row_r[q];
  const Integer d = tab.d;
  const bool same = p == d;
  Integer tmp;

  auto update = [&](Integer* row, Integer& rhs) {
    const Integer f = row[q];
    if (sgn(f) == 0) {
      if (same) {
        return;
      }
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(row[j]) != 0) {
          mpz_mul(tmp.get_mpz_t(), row[j].get_mpz_t(), p.get_mpz_t());
          mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
        }
      }
      if (sgn(rhs) != 0) {
        mpz_mul(tmp.get_mpz_t(), rhs.get_mpz_t(), p.get_mpz_t());
        mpz_divexact(rhs.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
      }
      return;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(row[j]) == 0 && sgn(row_r[j]) == 0) {
        continue;
      }
      mpz_mul(tmp.get_mpz_t(), row[j].get_mpz_t(), p.get_mpz_t());
      mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), row_r[j].get_mpz_t());
      mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
    }
    mpz_mul(tmp.get_mpz_t(), rhs.get_mpz_t(), p.get_mpz_t());
    mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), tab.rhs[r].get_mpz_t());
    mpz_divexact(rhs.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
  };

  for (std::size_t i = 0; i < tab.m; ++i) {
    if (i != r) {
      update(&tab.t[i * cols], tab.rhs[i]);
    }
  }
  Integer zrhs = 0;
  update(tab.z.data(), zrhs);
  tab.d = p;
  tab.state[tab.basis[r]] = VarState::AtLower;
  tab.basis[r] = q;
  tab.state[q] = VarState::Basic;
}

void compute_z(Work& w) {
  Tableau& tab = w.tab;
  tab.z.assign(tab.cols, 0);
  for (std::size_t j = 0; j < tab.cols; ++j) {
    tab.z[j] = tab.d * w.cost[j];
  }
  for (std::size_t i = 0; i < tab.m; ++i) {
    const Integer& cb = w.cost[tab.basis[i]];
    if (sgn(cb) == 0) {
      continue;
    }
    for (std::size_t j = 0; j < tab.cols; ++j) {
      if (sgn(tab.at(i, j)) != 0) {
        mpz_submul(tab.z[j].get_mpz_t(), cb.get_mpz_t(), tab.at(i, j).get_mpz_t());
      }
    }
  }
}

void recompute_basics(Work& w) {
  Tableau& tab = w.tab;
  for (std::size_t i = 0; i < tab.m; ++i) {
    Rational acc(tab.rhs[i]);
    for (std::size_t j = 0; j < tab.cols; ++j) {
      if (tab.state[j] != VarState::Basic && sgn(w.val[j]) != 0 && sgn(tab.at(i, j)) != 0) {
        acc -= tab.at(i, j) * w.val[j];
      }
    }
    acc /= tab.d;
    w.val[tab.basis[i]] = acc;
  }
}

// Moves every basic value by -T[:,q] * step / d and x_q by step.
void apply_step(Work& w, std::size_t q, const Rational& step) {
  if (sgn(step) == 0) {
    return;
  }
  Tableau& tab = w.tab;
  const Rational scaled = step / tab.d;
  for (std::size_t i = 0; i < tab.m; ++i) {
    if (sgn(tab.at(i, q)) != 0) {
      w.val[tab.basis[i]] -= tab.at(i, q) * scaled;
    }
  }
  w.val[q] += step;
}

enum class PrimalEnd { Optimal, Unbounded };

PrimalEnd primal(Work& w, const SimplexOptions& opt, std::size_t& iterations) {
  Tableau& tab = w.tab;
  std::size_t stall = 0;
  while (true) {
    const bool bland = opt.pricing == Pricing::Bland || stall >= opt.stall_limit;
    std::size_t q = kNone;
    int dir = 0;
    for (std::size_t j = 0; j < tab.cols; ++j) {
      const VarState st = tab.state[j];
      if (st == VarState::Basic || is_fixed(w, j)) {
        continue;
      }
      const int s = sgn(tab.z[j]);
      int dj = 0;
      if (st == VarState::AtLower && s < 0) {
        dj = 1;
      } else if (st == VarState::AtUpper && s > 0) {
        dj = -1;
      } else if (st == VarState::Free && s != 0) {
        dj = -s;
      }
      if (dj == 0) {
        continue;
      }
      if (bland) {
        q = j;
        dir = dj;
        break;
      }
      if (q == kNone || mpz_cmpabs(tab.z[j].get_mpz_t(), tab.z[q].get_mpz_t()) > 0) {
        q = j;
        dir = dj;
      }
    }
    if (q == kNone) {
      return PrimalEnd::Optimal;
    }

    std::optional<Rational> theta;
    std::size_t leave_row = kNone;
    std::size_t leave_var = kNone;
    bool to_upper = false;
    if (w.lo[q] && w.hi[q]) {
      theta = *w.hi[q] - *w.lo[q];
      leave_var = q;
    }
    for (std::size_t i = 0; i < tab.m; ++i) {
      const Integer& a = tab.at(i, q);
      if (sgn(a) == 0) {
        continue;
      }
      const std::size_t k = tab.basis[i];
      const int rate = -dir * sgn(a);
      Rational lim;
      if (rate < 0) {
        if (!w.lo[k]) {
          continue;
        }
        lim = (w.val[k] - *w.lo[k]) * tab.d / abs(a);
      } else {
        if (!w.hi[k]) {
          continue;
        }
        lim = (*w.hi[k] - w.val[k]) * tab.d / abs(a);
      }
      if (!theta || lim < *theta || (lim == *theta && k < leave_var)) {
        theta = lim;
        leave_row = i;
        leave_var = k;
        to_upper = rate > 0;
      }
    }
    if (!theta) {
      return PrimalEnd::Unbounded;
    }
    stall = sgn(*theta) == 0 ? stall + 1 : 0;
    apply_step(w, q, dir > 0 ? *theta : Rational(-*theta));
    ++iterations;
    if (leave_var == q && leave_row == kNone) {
      tab.state[q] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
      w.val[q] = dir > 0 ? *w.hi[q] : *w.lo[q];
      continue;
    }
    pivot(tab, leave_row, q);
    tab.state[leave_var] = to_upper ? VarState::AtUpper : VarState::AtLower;
    w.val[leave_var] = to_upper ? *w.hi[leave_var] : *w.lo[leave_var];
  }
}

enum class DualEnd { Feasible, Infeasible, CapHit };

DualEnd dual(Work& w, const SimplexOptions& opt, std::size_t& iterations) {
  Tableau& tab = w.tab;
  std::size_t count = 0;
  while (true) {
    std::size_t r = kNone;
    for (std::size_t i = 0; i < tab.m; ++i) {
      const std::size_t k = tab.basis[i];
      const bool bad =
          (w.lo[k] && w.val[k] < *w.lo[k]) || (w.hi[k] && w.val[k] > *w.hi[k]);
      if (bad && (r == kNone || k < tab.basis[r])) {
        r = i;
      }
    }
    if (r == kNone) {
      return DualEnd::Feasible;
    }
    if (count++ >= opt.dual_iteration_cap) {
      return DualEnd::CapHit;
    }
    const std::size_t k = tab.basis[r];
    const bool below = w.lo[k] && w.val[k] < *w.lo[k];
    const Rational target = below ? *w.lo[k] : *w.hi[k];
    const int need = below ? -1 : 1;

    std::size_t q = kNone;
    Rational best;
    for (std::size_t j = 0; j < tab.cols; ++j) {
      const VarState st = tab.state[j];
      if (st == VarState::Basic || is_fixed(w, j)) {
        continue;
      }
      const Integer& a = tab.at(r, j);
      if (sgn(a) == 0) {
        continue;
      }
      const bool ok = st == VarState::Free || (st == VarState::AtLower && sgn(a) == need) ||
                      (st == VarState::AtUpper && -sgn(a) == need);
      if (!ok) {
        continue;
      }
      Rational ratio(abs(tab.z[j]), abs(a));
      ratio.canonicalize();
      if (q == kNone || ratio < best) {
        q = j;
        best = ratio;
      }
    }
    if (q == kNone) {
      return DualEnd::Infeasible;
    }
    const Rational step = (w.val[k] - target) * tab.d / tab.at(r, q);
    apply_step(w, q, step);
    ++iterations;
    pivot(tab, r, q);
    tab.state[k] = below ? VarState::AtLower : VarState::AtUpper;
    w.val[k] = target;
  }
}

VarState resting_state(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo) {
    return VarState::AtLower;
  }
  if (hi) {
    return VarState::AtUpper;
  }
  return VarState::Free;
}

Rational resting_value(VarState st, const std::optional<Rational>& lo,
                       const std::optional<Rational>& hi) {
  switch (st) {
    case VarState::AtLower:
      return *lo;
    case VarState::AtUpper:
      return *hi;
    default:
      return 0;
  }
}

bool empty_domain(const BoundVectors& bounds) {
  for (std::size_t j = 0; j < bounds.lower.size(); ++j) {
    if (bounds.lower[j] && bounds.upper[j] && *bounds.lower[j] > *bounds.upper[j]) {
      return true;
    }
  }
  return false;
}

}  // namespace

SimplexEngine::SimplexEngine(const LpModel& model, SimplexOptions options)
    : objective_(model.objective), options_(options) {
  model.validate();
  n_ = model.num_vars();
  m_ = model.num_rows();
  std::size_t slacks = 0;
  for (const auto& row : model.rows) {
    if (row.relation != Relation::Equal) {
      ++slacks;
    }
  }
  cols_ = n_ + slacks;
  a_.assign(m_ * cols_, 0);
  b_.assign(m_, 0);
  std::size_t slack = n_;
  for (std::size_t i = 0; i < m_; ++i) {
    const auto& row = model.rows[i];
    Integer l = row.rhs.get_den();
    for (const auto& v : row.coeffs) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n_; ++j) {
      a_[i * cols_ + j] = row.coeffs[j].get_num() * (l / row.coeffs[j].get_den());
    }
    b_[i] = row.rhs.get_num() * (l / row.rhs.get_den());
    if (row.relation == Relation::LessEqual) {
      a_[i * cols_ + slack++] = 1;
    } else if (row.relation == Relation::GreaterEqual) {
      a_[i * cols_ + slack++] = -1;
    }
  }
  Integer l = 1;
  for (const auto& c : model.objective) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  cost_.assign(cols_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    cost_[j] = model.objective[j].get_num() * (l / model.objective[j].get_den());
    if (model.sense == Sense::Maximize) {
      cost_[j] = -cost_[j];
    }
  }
  model_bounds_ = {model.lower, model.upper};
}

LpOutcome SimplexEngine::solve() const { return solve(model_bounds_); }

LpOutcome SimplexEngine::solve(const BoundVectors& bounds,
                               const std::shared_ptr<const Tableau>& warm) const {
  if (bounds.lower.size() != n_ || bounds.upper.size() != n_) {
    throw DimensionError("bound vectors do not match the model's variable count");
  }
  if (empty_domain(bounds)) {
    return {};
  }
  if (!warm) {
    return cold(bounds);
  }
  Work w;
  w.tab = *warm;
  const std::size_t cols = w.tab.cols;
  w.lo = bounds.lower;
  w.hi = bounds.upper;
  w.lo.resize(cols, Rational(0));
  w.hi.resize(cols);
  w.val.assign(cols, 0);
  w.cost = cost_;
  for (std::size_t j = 0; j < cols; ++j) {
    VarState& st = w.tab.state[j];
    if (st == VarState::Basic) {
      continue;
    }
    if ((st == VarState::AtLower && !w.lo[j]) || (st == VarState::AtUpper && !w.hi[j]) ||
        (st == VarState::Free && (w.lo[j] || w.hi[j]))) {
      st = resting_state(w.lo[j], w.hi[j]);
    }
    const int s = sgn(w.tab.z[j]);
    const bool dual_ok = is_fixed(w, j) || (st == VarState::AtLower && s >= 0) ||
                         (st == VarState::AtUpper && s <= 0) || (st == VarState::Free && s == 0);
    if (!dual_ok) {
      return cold(bounds);
    }
    w.val[j] = resting_value(st, w.lo[j], w.hi[j]);
  }
  recompute_basics(w);
  std::size_t iterations = 0;
  switch (dual(w, options_, iterations)) {
    case DualEnd::Infeasible: {
      LpOutcome out;
      out.iterations = iterations;
      out.warm_started = true;
      return out;
    }
    case DualEnd::CapHit: {
      LpOutcome out = cold(bounds);
      out.iterations += iterations;
      return out;
    }
    case DualEnd::Feasible:
      break;
  }
  if (primal(w, options_, iterations) == PrimalEnd::Unbounded) {
    LpOutcome out;
    out.status = SolveStatus::Unbounded;
    out.iterations = iterations;
    out.warm_started = true;
    return out;
  }
  return finish(w, iterations, true);
}

LpOutcome SimplexEngine::cold(const BoundVectors& bounds) const {
  const std::size_t total = cols_ + m_;
  Work w;
  Tableau& tab = w.tab;
  tab.m = m_;
  tab.cols = total;
  tab.t.assign(m_ * total, 0);
  tab.rhs.assign(m_, 0);
  tab.basis.assign(m_, 0);
  tab.state.assign(total, VarState::AtLower);
  w.lo = bounds.lower;
  w.hi = bounds.upper;
  w.lo.resize(total, Rational(0));
  w.hi.resize(total);
  w.val.assign(total, 0);
  for (std::size_t j = 0; j < cols_; ++j) {
    tab.state[j] = resting_state(w.lo[j], w.hi[j]);
    w.val[j] = resting_value(tab.state[j], w.lo[j], w.hi[j]);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    Rational residual(b_[i]);
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& a = a_[i * cols_ + j];
      if (sgn(a) != 0 && sgn(w.val[j]) != 0) {
        residual -= a * w.val[j];
      }
    }
    const bool flip = sgn(residual) < 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      tab.at(i, j) = flip ? Integer(-a_[i * cols_ + j]) : a_[i * cols_ + j];
    }
    tab.rhs[i] = flip ? Integer(-b_[i]) : b_[i];
    tab.at(i, cols_ + i) = 1;
    tab.basis[i] = cols_ + i;
    tab.state[cols_ + i] = VarState::Basic;
    w.val[cols_ + i] = abs(residual);
  }
  w.cost.assign(total, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    w.cost[cols_ + i] = 1;
  }
  compute_z(w);
  std::size_t iterations = 0;
  primal(w, options_, iterations);
  for (std::size_t i = 0; i < m_; ++i) {
    if (sgn(w.val[cols_ + i]) != 0) {
      LpOutcome out;
      out.iterations = iterations;
      return out;
    }
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and dropped.
  std::vector<bool> keep(m_, true);
  for (std::size_t r = 0; r < m_; ++r) {
    if (tab.basis[r] < cols_) {
      continue;
    }
    std::size_t q = kNone;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (tab.state[j] != VarState::Basic && sgn(tab.at(r, j)) != 0) {
        q = j;
        break;
      }
    }
    if (q == kNone) {
      keep[r] = false;
      continue;
    }
    const std::size_t art = tab.basis[r];
    pivot(tab, r, q);
    w.val[art] = 0;
  }
  Tableau reduced;
  reduced.cols = cols_;
  reduced.d = tab.d;
  for (std::size_t i = 0; i < m_; ++i) {
    if (!keep[i]) {
      continue;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      reduced.t.push_back(tab.at(i, j));
    }
    reduced.rhs.push_back(tab.rhs[i]);
    reduced.basis.push_back(tab.basis[i]);
    ++reduced.m;
  }
  reduced.state.assign(tab.state.begin(), tab.state.begin() + static_cast<long>(cols_));
  w.tab = std::move(reduced);
  w.lo.resize(cols_);
  w.hi.resize(cols_);
  w.val.resize(cols_);
  w.cost = cost_;
  compute_z(w);
  if (primal(w, options_, iterations) == PrimalEnd::Unbounded) {
    LpOutcome out;
    out.status = SolveStatus::Unbounded;
    out.iterations = iterations;
    return out;
  }
  return finish(w, iterations, false);
}

LpOutcome SimplexEngine::finish(Work& w, std::size_t iterations, bool warm) const {
  LpOutcome out;
  out.status = SolveStatus::Optimal;
  out.x.assign(w.val.begin(), w.val.begin() + static_cast<long>(n_));
  out.value = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (sgn(objective_[j]) != 0) {
      out.value += objective_[j] * out.x[j];
    }
  }
  out.iterations = iterations;
  out.warm_started = warm;
  out.tableau = std::make_shared<const Tableau>(std::move(w.tab));
  return out;
}

SolveResult solve_lp(const LpModel& model, SimplexOptions options) {
  const SimplexEngine engine(model, options);
  const LpOutcome lp = engine.solve();
  SolveResult res;
  res.status = lp.status;
  res.lp_iterations = lp.iterations;
  if (lp.status == SolveStatus::Optimal) {
    res.value = lp.value;
    res.solution = lp.x;
  }
  return res;
}

}  // namespace intrec
