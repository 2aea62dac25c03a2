#include "intrec/oracle.hpp"

#include <algorithm>
#include <map>

#include "intrec/errors.hpp"
#include "intrec/support.hpp"

namespace intrec {

namespace {

// A with every row multiplied by the lcm of its denominators; b likewise.
struct IntegerSystem {
  std::vector<IntVector> rows;
  IntVector rhs;
};

IntegerSystem integer_system(const RationalMatrix& a, const RationalVector* b) {
  IntegerSystem sys;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    Integer scale = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(k, j).get_den_mpz_t());
    }
    if (b) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), (*b)[k].get_den_mpz_t());
    }
    IntVector row;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      row.push_back(a(k, j).get_num() * (scale / a(k, j).get_den()));
    }
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(b ? Integer((*b)[k].get_num() * (scale / (*b)[k].get_den())) : Integer(0));
  }
  return sys;
}

IntVector apply(const IntegerSystem& sys, const IntVector& x) {
  IntVector out;
  for (const auto& row : sys.rows) {
    Integer acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(x[j]) != 0) {
        acc += row[j] * x[j];
      }
    }
    out.push_back(acc);
  }
  return out;
}

Integer box_size(const IntVector& lower, const IntVector& upper) {
  Integer total = 1;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (upper[i] < lower[i]) {
      return 0;
    }
    total *= upper[i] - lower[i] + 1;
  }
  return total;
}

void require_budget(const Integer& points, const EnumerationBudget& budget) {
  if (points > Integer(static_cast<unsigned long>(budget.max_points))) {
    throw BudgetExceeded("oracle enumeration needs " + points.get_str() + " points; cap is " +
                         std::to_string(budget.max_points));
  }
}

// Odometer over [lower, upper] in lexicographic order.
template <typename Fn>
void for_each_box_point(const IntVector& lower, const IntVector& upper, Fn&& fn) {
  const std::size_t n = lower.size();
  if (box_size(lower, upper) == 0) {
    return;
  }
  IntVector x = lower;
  while (true) {
    if (!fn(static_cast<const IntVector&>(x))) {
      return;
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (x[pos] < upper[pos]) {
        ++x[pos];
        for (std::size_t j = pos + 1; j < n; ++j) {
          x[j] = lower[j];
        }
        break;
      }
      if (pos == 0) {
        return;
      }
    }
    if (n == 0) {
      return;
    }
  }
}

// Points of [lower, upper] with at most s nonzero entries, lexicographic.
template <typename Fn>
void for_each_sparse_point(const IntVector& lower, const IntVector& upper, std::size_t s,
                           const EnumerationBudget& budget, Fn&& fn) {
  const std::size_t n = lower.size();
  IntVector x(n, Integer(0));
  std::size_t visited = 0;
  const auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (++visited > budget.max_points) {
        throw BudgetExceeded("sparse point enumeration exceeded " +
                             std::to_string(budget.max_points) + " points");
      }
      fn(static_cast<const IntVector&>(x));
      return;
    }
    for (Integer v = lower[i]; v <= upper[i]; ++v) {
      if (sgn(v) != 0 && used == s) {
        continue;
      }
      x[i] = v;
      self(self, i + 1, used + (sgn(v) != 0 ? 1 : 0));
    }
    x[i] = 0;
  };
  rec(rec, 0, 0);
}

Integer abs_sum(const IntVector& x) {
  Integer total = 0;
  for (const auto& v : x) {
    total += abs(v);
  }
  return total;
}

std::size_t nonzeros(const IntVector& x) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](const Integer& v) { return sgn(v) != 0; }));
}

struct Bounds {
  IntVector lower;
  IntVector upper;
};

Bounds set_bounds(const ConstraintSet& x) {
  if (!x.is_integral() || !x.is_bounded()) {
    throw Unsupported("oracle needs a bounded integral set, got " + x.describe());
  }
  Bounds b;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    b.lower.push_back(*x.lower(i));
    b.upper.push_back(*x.upper(i));
  }
  return b;
}

IntVector minus(const IntVector& x, const IntVector& y) {
  IntVector out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(x[i] - y[i]);
  }
  return out;
}

// Solution of the square or tall system M y = c by exact elimination:
// nullopt if inconsistent; `unique` false when the solution is not unique.
struct LinearSolution {
  RationalVector y;
  bool unique = true;
};

std::optional<LinearSolution> solve_exact(std::vector<RationalVector> m, RationalVector c) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][j]) == 0) {
      ++p;
    }
    if (p == rows) {
      continue;
    }
    std::swap(m[p], m[r]);
    std::swap(c[p], c[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][j]) == 0) {
        continue;
      }
      const Rational f = m[i][j] / m[r][j];
      for (std::size_t k = j; k < cols; ++k) {
        m[i][k] -= f * m[r][k];
      }
      c[i] -= f * c[r];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  LinearSolution out;
  out.y.assign(cols, Rational(0));
  out.unique = r == cols;
  for (std::size_t i = 0; i < r; ++i) {
    out.y[pivot_col[i]] = c[i] / m[i][pivot_col[i]];
  }
  return out;
}

}  // namespace

OracleResult brute_solve(const RecoveryInstance& inst, const IntVector& lower,
                         const IntVector& upper, const EnumerationBudget& budget) {
  const std::size_t n = inst.a.cols();
  if (!inst.x.is_integral()) {
    throw Unsupported("brute_solve enumerates integral points only");
  }
  if (lower.size() != n || upper.size() != n) {
    throw DimensionError("oracle box does not match the column count");
  }
  IntVector lo = lower;
  IntVector hi = upper;
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto l = inst.x.lower(i); l && *l > lo[i]) {
      lo[i] = *l;
    }
    if (const auto u = inst.x.upper(i); u && *u < hi[i]) {
      hi[i] = *u;
    }
  }
  require_budget(box_size(lo, hi), budget);
  const auto sys = integer_system(inst.a, &inst.b);
  OracleResult out;
  std::optional<Integer> best;
  std::vector<IntVector> optima;
  std::size_t visited = 0;
  for_each_box_point(lo, hi, [&](const IntVector& x) {
    ++visited;
    if (apply(sys, x) != sys.rhs) {
      return true;
    }
    const Integer value =
        inst.objective == Objective::L0 ? Integer(static_cast<unsigned long>(nonzeros(x)))
                                        : abs_sum(x);
    if (!best || value < *best) {
      best = value;
      optima.clear();
    }
    if (value == *best) {
      optima.push_back(x);
    }
    return true;
  });
  out.result.nodes_explored = visited;
  if (!best) {
    out.result.status = SolveStatus::Infeasible;
    return out;
  }
  out.result.status = SolveStatus::Optimal;
  out.result.value = Rational(*best);
  out.result.solution = to_rational(optima.front());
  out.result.unique = optima.size() == 1;
  out.optimal_count = optima.size();
  for (const auto& x : optima) {
    out.optima.push_back(to_rational(x));
  }
  return out;
}

OracleResult brute_solve(const RecoveryInstance& inst, const EnumerationBudget& budget) {
  const auto b = set_bounds(inst.x);
  return brute_solve(inst, b.lower, b.upper, budget);
}

OracleResult brute_solve_continuous_l0(const RecoveryInstance& inst,
                                       const EnumerationBudget& budget) {
  using Kind = ConstraintSet::Kind;
  const bool nonneg = inst.x.kind() == Kind::NonnegReals;
  if (!nonneg && inst.x.kind() != Kind::AllReals) {
    throw Unsupported("continuous l0 oracle handles R^n and R^n_+ only");
  }
  if (inst.objective != Objective::L0) {
    throw Unsupported("continuous oracle solves the l0 problem only");
  }
  const std::size_t n = inst.a.cols();
  const std::size_t m = inst.a.rows();
  OracleResult out;
  std::size_t visited = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
      if (++visited > budget.max_support_sets) {
        throw BudgetExceeded("continuous oracle exceeded the support budget");
      }
      std::vector<RationalVector> rows(m, RationalVector(k));
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < k; ++i) {
          rows[r][i] = inst.a(r, cols[i]);
        }
      }
      const auto sol = solve_exact(rows, inst.b);
      if (!sol) {
        return true;
      }
      if (!sol->unique) {
        out.infinite_optima = true;
        return true;
      }
      for (const auto& y : sol->y) {
        if (sgn(y) == 0 || (nonneg && sgn(y) < 0)) {
          return true;
        }
      }
      RationalVector x(n, Rational(0));
      for (std::size_t i = 0; i < k; ++i) {
        x[cols[i]] = sol->y[i];
      }
      out.optima.push_back(x);
      return true;
    });
    if (!out.optima.empty()) {
      std::sort(out.optima.begin(), out.optima.end());
      out.result.status = SolveStatus::Optimal;
      out.result.value = Rational(static_cast<long>(k));
      out.result.solution = out.optima.front();
      out.optimal_count = out.optima.size();
      out.result.unique = !out.infinite_optima && out.optima.size() == 1;
      out.result.nodes_explored = visited;
      return out;
    }
    out.infinite_optima = false;
  }
  out.result.status = SolveStatus::Infeasible;
  out.result.nodes_explored = visited;
  return out;
}

std::vector<IntVector> brute_kernel_points(const RationalMatrix& a, const IntVector& lower,
                                           const IntVector& upper,
                                           const EnumerationBudget& budget) {
  if (lower.size() != a.cols() || upper.size() != a.cols()) {
    throw DimensionError("oracle box does not match the column count");
  }
  require_budget(box_size(lower, upper), budget);
  const auto sys = integer_system(a, nullptr);
  std::vector<IntVector> out;
  for_each_box_point(lower, upper, [&](const IntVector& x) {
    if (apply(sys, x) == sys.rhs) {
      out.push_back(x);
    }
    return true;
  });
  return out;
}

GoodnessVerdict brute_goodness(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                               const EnumerationBudget& budget) {
  const auto b = set_bounds(x);
  if (x.dimension() != a.cols()) {
    throw DimensionError("constraint set does not match the column count");
  }
  const auto sys = integer_system(a, nullptr);
  std::map<IntVector, IntVector> seen;
  GoodnessVerdict out;
  out.method = Method::Oracle;
  out.route = "definition";
  for_each_sparse_point(b.lower, b.upper, s, budget, [&](const IntVector& p) {
    if (!out.good) {
      return;
    }
    auto [it, fresh] = seen.emplace(apply(sys, p), p);
    if (!fresh) {
      out.good = false;
      out.partner = it->second;
      out.witness = minus(p, it->second);
    }
  });
  return out;
}

GoodnessVerdict brute_goodness_l1(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                                  const EnumerationBudget& budget) {
  const auto b = set_bounds(x);
  if (x.dimension() != a.cols()) {
    throw DimensionError("constraint set does not match the column count");
  }
  require_budget(box_size(b.lower, b.upper), budget);
  const auto sys = integer_system(a, nullptr);
  struct Group {
    Integer best;
    std::vector<IntVector> argmin;  // at most two
  };
  std::map<IntVector, Group> groups;
  for_each_box_point(b.lower, b.upper, [&](const IntVector& p) {
    const Integer norm = abs_sum(p);
    auto [it, fresh] = groups.try_emplace(apply(sys, p), Group{norm, {}});
    Group& g = it->second;
    if (norm < g.best) {
      g.best = norm;
      g.argmin.clear();
    }
    if (norm == g.best && g.argmin.size() < 2) {
      g.argmin.push_back(p);
    }
    return true;
  });
  GoodnessVerdict out;
  out.method = Method::Oracle;
  out.route = "definition";
  for_each_sparse_point(b.lower, b.upper, s, budget, [&](const IntVector& p) {
    if (!out.good) {
      return;
    }
    const Group& g = groups.at(apply(sys, p));
    const bool unique_min = g.best == abs_sum(p) && g.argmin.size() == 1;
    if (!unique_min) {
      const IntVector& other = g.argmin.front() != p ? g.argmin.front() : g.argmin.back();
      out.good = false;
      out.partner = p;
      out.witness = minus(other, p);
    }
  });
  return out;
}

}  // namespace intrec
