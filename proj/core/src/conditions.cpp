#include "intrec/conditions.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>

#include "intrec/errors.hpp"
#include "intrec/formulations.hpp"
#include "intrec/linalg.hpp"
#include "intrec/simplex.hpp"

namespace intrec {

namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

enum class Dir { Free, NonNeg, NonPos, Zero };

// LP over kernel directions v in [-1,1]^n with Av = 0.
struct ConeModel {
  LpModel model;
  std::vector<std::size_t> v;
};

ConeModel kernel_cone(const RationalMatrix& a, const std::vector<Dir>& dirs) {
  ConeModel c;
  c.model.sense = Sense::Maximize;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational lo = -1;
    Rational hi = 1;
    if (dirs[j] == Dir::NonNeg || dirs[j] == Dir::Zero) {
      lo = 0;
    }
    if (dirs[j] == Dir::NonPos || dirs[j] == Dir::Zero) {
      hi = 0;
    }
    c.v.push_back(c.model.add_variable("v" + std::to_string(j + 1), lo, hi, false));
  }
  for (std::size_t k = 0; k < a.rows(); ++k) {
    Terms t;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(k, j)) != 0) {
        t.emplace_back(c.v[j], a(k, j));
      }
    }
    if (!t.empty()) {
      c.model.add_row(t, Relation::Equal, 0, "ker" + std::to_string(k + 1));
    }
  }
  return c;
}

// Adds t_j >= |v_j| for the given coordinates; returns the t variables.
std::vector<std::size_t> add_abs(ConeModel& c, const std::vector<std::size_t>& coords) {
  std::vector<std::size_t> t;
  for (auto j : coords) {
    const auto tj = c.model.add_variable("t" + std::to_string(j + 1), Rational(0), Rational(1), false);
    c.model.add_row({{c.v[j], 1}, {tj, -1}}, Relation::LessEqual, 0);
    c.model.add_row({{c.v[j], -1}, {tj, -1}}, Relation::LessEqual, 0);
    t.push_back(tj);
  }
  return t;
}

// Maximises the objective already set on c; a positive optimum yields the
// primitive integral direction.
std::optional<IntVector> positive_direction(const ConeModel& c) {
  const auto res = solve_lp(c.model);
  if (res.status != SolveStatus::Optimal || sgn(*res.value) <= 0) {
    return std::nullopt;
  }
  RationalVector v;
  for (auto j : c.v) {
    v.push_back((*res.solution)[j]);
  }
  return primitive_integral(v);
}

// Some nonzero v supported on `cols` with A v = 0 and (optionally) c^T v = 0.
std::optional<IntVector> kernel_vector_on(const RationalMatrix& a,
                                          const std::vector<std::size_t>& cols,
                                          const std::optional<RationalVector>& extra) {
  if (cols.empty()) {
    return std::nullopt;
  }
  RationalMatrix sub(a.rows() + (extra ? 1 : 0), cols.size());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      sub(k, i) = a(k, cols[i]);
    }
  }
  if (extra) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      sub(a.rows(), i) = (*extra)[i];
    }
  }
  const auto basis = kernel_basis(sub).integral_lattice_basis;
  if (basis.empty()) {
    return std::nullopt;
  }
  IntVector out(a.cols(), Integer(0));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out[cols[i]] = basis.front()[i];
  }
  return out;
}

bool is_zero(const IntVector& z) {
  return std::all_of(z.begin(), z.end(), [](const Integer& v) { return sgn(v) == 0; });
}

Integer sum_of(const IntVector& z) {
  return std::accumulate(z.begin(), z.end(), Integer(0));
}

std::size_t checked_count(const Integer& count, std::size_t cap, const char* what) {
  if (count > Integer(static_cast<unsigned long>(cap))) {
    throw BudgetExceeded(std::string(what) + " needs " + to_string(count) + " LPs; cap is " +
                         std::to_string(cap));
  }
  return count.get_ui();
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Violation of NSP(R^n) w.r.t. S: ||v_S||_1 >= ||v_{S^c}||_1, v != 0.
std::optional<IntVector> nsp_violation_lp(const RationalMatrix& a,
                                          const std::vector<std::size_t>& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  const std::size_t n = a.cols();
  const Support in(s);
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j) {
    if (!in.contains(j)) {
      rest.push_back(j);
    }
  }
  // v and -v are equivalent, so the first sign of S is fixed to +.
  const std::size_t patterns = std::size_t{1} << (s.size() - 1);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<Dir> dirs(n, Dir::Free);
    std::vector<int> sigma(s.size(), 1);
    for (std::size_t k = 1; k < s.size(); ++k) {
      if ((mask >> (k - 1)) & 1U) {
        sigma[k] = -1;
      }
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
      dirs[s[k]] = sigma[k] > 0 ? Dir::NonNeg : Dir::NonPos;
    }
    ConeModel c = kernel_cone(a, dirs);
    const auto t = add_abs(c, rest);
    Terms row;
    for (std::size_t k = 0; k < s.size(); ++k) {
      row.emplace_back(c.v[s[k]], sigma[k]);
      c.model.objective[c.v[s[k]]] = sigma[k];
    }
    for (auto tj : t) {
      row.emplace_back(tj, -1);
    }
    c.model.add_row(row, Relation::GreaterEqual, 0, "nsp");
    if (auto w = positive_direction(c)) {
      return w;
    }
  }
  return std::nullopt;
}

// Violation of NSP+(R^n) w.r.t. S: v_{S^c} >= 0, 1^T v <= 0, v != 0.
std::optional<IntVector> nsp_plus_violation_lp(const RationalMatrix& a,
                                               const std::vector<std::size_t>& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  const std::size_t n = a.cols();
  const Support in(s);
  std::vector<Dir> dirs(n, Dir::NonNeg);
  for (auto i : s) {
    dirs[i] = Dir::Free;
  }
  ConeModel c = kernel_cone(a, dirs);
  Terms total;
  for (std::size_t j = 0; j < n; ++j) {
    total.emplace_back(c.v[j], 1);
  }
  c.model.add_row(total, Relation::LessEqual, 0, "sum");
  for (auto i : s) {
    c.model.objective[c.v[i]] = -1;
  }
  if (auto w = positive_direction(c)) {
    return w;
  }
  // The remaining violations are supported on S with 1^T v = 0.
  return kernel_vector_on(a, s, RationalVector(s.size(), Rational(1)));
}

// Violation of the individual recovery condition at xhat over the
// continuous set x (tangent cone at xhat): a nonzero feasible direction v
// with sum_S sign(xhat_i) v_i + ||v_{S^c}||_1 <= 0.
std::optional<IntVector> tangent_violation(const RationalMatrix& a, const RationalVector& xhat,
                                           const ConstraintSet& x) {
  const std::size_t n = a.cols();
  std::vector<Dir> dirs(n, Dir::Free);
  for (std::size_t j = 0; j < n; ++j) {
    const auto l = x.lower(j);
    const auto u = x.upper(j);
    if (l && xhat[j] == Rational(*l)) {
      dirs[j] = Dir::NonNeg;
    }
    if (u && xhat[j] == Rational(*u)) {
      dirs[j] = dirs[j] == Dir::NonNeg ? Dir::Zero : Dir::NonPos;
    }
  }
  std::vector<std::size_t> on;
  std::vector<std::size_t> off;
  for (std::size_t j = 0; j < n; ++j) {
    (sgn(xhat[j]) != 0 ? on : off).push_back(j);
  }
  ConeModel c = kernel_cone(a, dirs);
  const auto t = add_abs(c, off);
  Terms row;
  for (auto i : on) {
    row.emplace_back(c.v[i], sgn(xhat[i]));
    c.model.objective[c.v[i]] = -sgn(xhat[i]);
  }
  for (auto tj : t) {
    row.emplace_back(tj, 1);
  }
  c.model.add_row(row, Relation::LessEqual, 0, "descent");
  if (auto w = positive_direction(c)) {
    return w;
  }
  // Degenerate directions: supported on S, orthogonal to sign(xhat_S).
  std::vector<Dir> face(n, Dir::Zero);
  for (auto i : on) {
    face[i] = dirs[i];
  }
  for (auto i : on) {
    for (int sense : {1, -1}) {
      ConeModel probe = kernel_cone(a, face);
      Terms orth;
      for (auto k : on) {
        orth.emplace_back(probe.v[k], sgn(xhat[k]));
      }
      probe.model.add_row(orth, Relation::Equal, 0, "orth");
      probe.model.objective[probe.v[i]] = sense;
      if (auto w = positive_direction(probe)) {
        return w;
      }
    }
  }
  return std::nullopt;
}

// Indices of the s largest |v_i|, ties to the lowest index.
std::vector<std::size_t> top_magnitudes(const IntVector& v, std::size_t s) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return cmp(abs(v[x]), abs(v[y])) > 0;
  });
  idx.resize(std::min(s, v.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool nsp_violated_at(const IntVector& v, const Support& s) {
  Integer on = 0;
  Integer off = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    (s.contains(i) ? on : off) += abs(v[i]);
  }
  return on >= off;
}

bool nsp_plus_violated_at(const IntVector& v, const Support& s) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!s.contains(i) && sgn(v[i]) < 0) {
      return false;
    }
  }
  return sgn(sum_of(v)) <= 0;
}

// Per-coordinate minimum of v + w subject to v - w = d, v in [vl, vu],
// w in [wl, wu]; nullopt when infeasible.
std::optional<Integer> split_cost(const Integer& d, const Integer& vl, const Integer& vu,
                                  const Integer& wl, const Integer& wu) {
  const Integer lo = std::max<Integer>(wl, vl - d);
  const Integer hi = std::min<Integer>(wu, vu - d);
  if (lo > hi) {
    return std::nullopt;
  }
  return Integer(d + 2 * lo);
}

struct SplitCosts {
  std::optional<Integer> outside;  // x̂_i = 0
  Integer inside;                  // best over x̂_i > 0 and x̂_i < 0
};

SplitCosts split_costs(const Integer& d, const Integer& l, const Integer& u) {
  SplitCosts c;
  c.outside = split_cost(d, 0, u, 0, -l);
  std::optional<Integer> best = c.outside;
  for (const auto& cand : {split_cost(d, -u, u, 0, -l), split_cost(d, 0, u, l, -l)}) {
    if (cand && (!best || *cand < *best)) {
      best = cand;
    }
  }
  c.inside = *best;
  return c;
}

// Returns the support on which d violates the split NSP+, if any.
std::optional<Support> split_violation(const IntVector& d, const IntVector& lower,
                                       const IntVector& upper, const std::optional<Support>& fixed,
                                       std::size_t order) {
  const std::size_t n = d.size();
  Integer total = 0;
  std::vector<std::size_t> chosen;
  std::vector<std::pair<Integer, std::size_t>> gains;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = split_costs(d[i], lower[i], upper[i]);
    if (fixed) {
      if (fixed->contains(i)) {
        total += c.inside;
        chosen.push_back(i);
      } else if (c.outside) {
        total += *c.outside;
      } else {
        return std::nullopt;
      }
      continue;
    }
    if (!c.outside) {
      total += c.inside;
      chosen.push_back(i);
    } else {
      total += *c.outside;
      if (*c.outside > c.inside) {
        gains.emplace_back(*c.outside - c.inside, i);
      }
    }
  }
  if (!fixed) {
    if (chosen.size() > order) {
      return std::nullopt;
    }
    std::stable_sort(gains.begin(), gains.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t k = 0; k < gains.size() && chosen.size() < order; ++k) {
      total -= gains[k].first;
      chosen.push_back(gains[k].second);
    }
  }
  if (sgn(total) > 0) {
    return std::nullopt;
  }
  return Support(chosen);
}

IntVector box_lower(const ConstraintSet& x) { return x.lower_vector(); }
IntVector box_upper(const ConstraintSet& x) { return x.upper_vector(); }

IntVector difference_box(const IntVector& lower, const IntVector& upper, int sign) {
  IntVector out;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    out.push_back(sign * (upper[i] - lower[i]));
  }
  return out;
}

bool integral_box(const ConstraintSet& x) { return x.is_integral() && x.is_bounded(); }

void require_dimension(const RationalMatrix& a, const ConstraintSet& x) {
  require_nonempty(a, "matrix");
  if (x.dimension() != a.cols()) {
    throw DimensionError("constraint set dimension " + std::to_string(x.dimension()) +
                         " does not match n = " + std::to_string(a.cols()));
  }
}

GoodnessVerdict good(Method method, std::string route) {
  GoodnessVerdict v;
  v.method = method;
  v.route = std::move(route);
  return v;
}

GoodnessVerdict bad(Method method, std::string route, IntVector witness) {
  GoodnessVerdict v;
  v.good = false;
  v.method = method;
  v.route = std::move(route);
  v.witness = std::move(witness);
  return v;
}

GoodnessVerdict inconclusive(Method method, std::string route) {
  GoodnessVerdict v;
  v.good = false;
  v.conclusive = false;
  v.method = method;
  v.route = std::move(route);
  return v;
}

// ---- l0 routes ----

GoodnessVerdict l0_spark(const RationalMatrix& a, std::size_t s) {
  const auto sp = spark(a);
  if (!sp || *sp > 2 * s) {
    return good(Method::Spark, "spark");
  }
  std::optional<IntVector> witness;
  for_each_subset(a.cols(), *sp, [&](const std::vector<std::size_t>& cols) {
    witness = kernel_vector_on(a, cols, std::nullopt);
    return !witness;
  });
  return bad(Method::Spark, "spark", *witness);
}

GoodnessVerdict l0_sign_patterns(const RationalMatrix& a, std::size_t s,
                                 const EnumerationBudget& budget) {
  const std::size_t n = a.cols();
  const std::size_t t = std::min(2 * s, n);
  const std::size_t pmin = t > s ? t - s : 0;
  Integer splits = 0;
  for (std::size_t p = pmin; p <= std::min(s, t); ++p) {
    splits += binomial(t, p);
  }
  checked_count(binomial(n, t) * splits, budget.max_support_sets, "sign-pattern search");
  std::optional<IntVector> witness;
  for_each_subset(n, t, [&](const std::vector<std::size_t>& cols) {
    for (std::size_t p = pmin; p <= std::min(s, t) && !witness; ++p) {
      for_each_subset(t, p, [&](const std::vector<std::size_t>& pos) {
        std::vector<Dir> dirs(n, Dir::Zero);
        for (auto c : cols) {
          dirs[c] = Dir::NonPos;
        }
        for (auto k : pos) {
          dirs[cols[k]] = Dir::NonNeg;
        }
        ConeModel c = kernel_cone(a, dirs);
        for (auto col : cols) {
          c.model.objective[c.v[col]] = dirs[col] == Dir::NonNeg ? 1 : -1;
        }
        witness = positive_direction(c);
        return !witness;
      });
    }
    return !witness;
  });
  if (witness) {
    return bad(Method::Lp, "sign-pattern", *witness);
  }
  return good(Method::Lp, "sign-pattern");
}

GoodnessVerdict l0_unit_box_milp(const RationalMatrix& a, std::size_t s,
                                 const MilpOptions& milp) {
  MilpOptions opt = milp;
  opt.cutoff = Rational(0);
  const auto res = solve_milp(build_goodness_unit_box(a, s), opt);
  if (res.status == SolveStatus::LimitReached && !(res.value && sgn(*res.value) > 0)) {
    return inconclusive(Method::Milp, "unit-box");
  }
  if (res.value && sgn(*res.value) > 0) {
    const std::size_t n = a.cols();
    RationalVector z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = (*res.solution)[i] - (*res.solution)[n + i];
    }
    return bad(Method::Milp, "unit-box", primitive_integral(z));
  }
  return good(Method::Milp, "unit-box");
}

GoodnessVerdict l0_box_oracle(const RationalMatrix& a, std::size_t s, const IntVector& lower,
                              const IntVector& upper, const EnumerationBudget& budget) {
  std::optional<IntVector> witness;
  for_each_kernel_point(a, difference_box(lower, upper, -1), difference_box(lower, upper, 1),
                        budget, [&](const IntVector& z) {
                          if (!is_zero(z) && in_C(z, s, lower, upper)) {
                            witness = z;
                            return false;
                          }
                          return true;
                        });
  if (witness) {
    return bad(Method::Oracle, "C(l,u)", *witness);
  }
  return good(Method::Oracle, "C(l,u)");
}

GoodnessVerdict l0_box_milp(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                            const MilpOptions& milp) {
  const std::size_t n = a.cols();
  if (x.is_binary()) {
    MilpOptions opt = milp;
    opt.cutoff = Rational(0);
    const auto res = solve_milp(build_goodness_binary(a, s), opt);
    if (res.value && sgn(*res.value) > 0) {
      IntVector z(n);
      for (std::size_t i = 0; i < n; ++i) {
        z[i] = Rational((*res.solution)[i] - (*res.solution)[n + i]).get_num();
      }
      return bad(Method::Milp, "binary", z);
    }
    if (res.status == SolveStatus::LimitReached) {
      return inconclusive(Method::Milp, "binary");
    }
    return good(Method::Milp, "binary");
  }
  const auto res = solve_milp(build_goodness_general(a, s, x.lower_vector(), x.upper_vector()), milp);
  if (res.status == SolveStatus::LimitReached && !res.solution) {
    return inconclusive(Method::Milp, "C(l,u)");
  }
  if (res.solution) {
    RationalVector z(res.solution->begin(), res.solution->begin() + static_cast<long>(n));
    return bad(Method::Milp, "C(l,u)", to_integer(z));
  }
  return good(Method::Milp, "C(l,u)");
}

void unsupported(Method method, const ConstraintSet& x, const char* what) {
  throw Unsupported("method " + to_string(method) + " does not apply to " + what + " over " +
                    to_string(x.kind()));
}

// Order-s LP checks quantify over all supports of size min(s, n).
GoodnessVerdict nsp_order_lp(const RationalMatrix& a, NspVariant variant, std::size_t order,
                             const EnumerationBudget& budget) {
  const std::size_t n = a.cols();
  const std::size_t k = std::min(order, n);
  Integer count = binomial(n, k);
  if (variant == NspVariant::Nsp && k > 1) {
    count *= Integer(1) << static_cast<unsigned>(k - 1);
  }
  checked_count(count, budget.max_support_sets, "order-s nullspace check");
  const std::string route = variant == NspVariant::Nsp ? "nsp" : "nsp+";
  GoodnessVerdict out = good(Method::Lp, route);
  for_each_subset(n, k, [&](const std::vector<std::size_t>& s) {
    auto w = variant == NspVariant::Nsp ? nsp_violation_lp(a, s) : nsp_plus_violation_lp(a, s);
    if (w) {
      out = bad(Method::Lp, route, *w);
      out.support = Support(s);
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace

std::size_t RegionProfile::level(int k) const {
  std::size_t total = 0;
  for (auto r : kAllRegions) {
    if (region_level(r) == k) {
      total += count(r);
    }
  }
  return total;
}

RegionProfile region_profile(const IntVector& z, const IntVector& lower, const IntVector& upper) {
  if (z.size() != lower.size() || z.size() != upper.size()) {
    throw DimensionError("region profile: vector and bounds differ in length");
  }
  RegionProfile p;
  p.z = z;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (sgn(z[i]) == 0) {
      continue;
    }
    const auto r = region_of(z[i], lower[i], upper[i]);
    if (!r) {
      throw PreconditionError("z_" + std::to_string(i + 1) + " = " + to_string(z[i]) +
                              " lies outside [l-u, u-l]");
    }
    ++p.counts[static_cast<std::size_t>(*r)];
  }
  return p;
}

bool in_C(const IntVector& z, std::size_t s, const IntVector& lower, const IntVector& upper) {
  const auto p = region_profile(z, lower, upper);
  const std::size_t s1 = p.level(1);
  const std::size_t s2 = p.level(2);
  const std::size_t s3 = p.level(3);
  const std::size_t s4 = p.level(4);
  return s4 + s3 <= s && s4 + s2 <= s && 2 * s4 + s3 + s2 + s1 <= 2 * s;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Auto:
      return "auto";
    case Method::Oracle:
      return "oracle";
    case Method::Milp:
      return "milp";
    case Method::Spark:
      return "spark";
    case Method::Lp:
      return "lp";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  for (auto m : {Method::Auto, Method::Oracle, Method::Milp, Method::Spark, Method::Lp}) {
    if (to_string(m) == text) {
      return m;
    }
  }
  throw ParseError("unknown method '" + text + "'");
}

std::string GoodnessVerdict::label() const {
  if (!conclusive) {
    return "unknown";
  }
  return good ? "good" : "not-good";
}

std::string verdict_to_json(const GoodnessVerdict& verdict) {
  nlohmann::ordered_json j;
  j["good"] = verdict.good;
  j["conclusive"] = verdict.conclusive;
  j["verdict"] = verdict.label();
  j["method"] = to_string(verdict.method);
  j["route"] = verdict.route;
  const auto ints = [](const IntVector& v) {
    std::vector<std::string> out;
    for (const auto& x : v) {
      out.push_back(to_string(x));
    }
    return out;
  };
  if (verdict.witness) {
    j["witness"] = ints(*verdict.witness);
  }
  if (verdict.support) {
    std::vector<std::size_t> idx;
    for (auto i : verdict.support->indices()) {
      idx.push_back(i + 1);
    }
    j["support"] = idx;
  }
  if (verdict.partner) {
    j["partner"] = ints(*verdict.partner);
  }
  return j.dump();
}

GoodnessVerdict is_s_good_l0(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                             const CheckOptions& options) {
  require_dimension(a, x);
  s = std::min(s, a.cols());
  const Method m = options.method;
  using Kind = ConstraintSet::Kind;
  switch (x.kind()) {
    case Kind::AllIntegers:
    case Kind::AllReals:
      if (m != Method::Auto && m != Method::Spark) {
        unsupported(m, x, "l0 goodness");
      }
      return l0_spark(a, s);
    case Kind::NonnegativeIntegers:
    case Kind::NonnegReals:
    case Kind::BoxReals:
      if (x.kind() == Kind::BoxReals && !x.is_nonnegative()) {
        throw Unsupported("l0 goodness over real boxes needs l = 0");
      }
      if (s == 0) {
        return good(m == Method::Milp ? Method::Milp : Method::Lp, "sign-pattern");
      }
      if (m == Method::Milp) {
        return l0_unit_box_milp(a, s, options.milp);
      }
      if (m == Method::Lp) {
        return l0_sign_patterns(a, s, options.budget);
      }
      if (m != Method::Auto) {
        unsupported(m, x, "l0 goodness");
      }
      try {
        return l0_sign_patterns(a, s, options.budget);
      } catch (const BudgetExceeded&) {
        return l0_unit_box_milp(a, s, options.milp);
      }
    case Kind::BoxIntegers:
    case Kind::SymmetricBoxIntegers:
    case Kind::NonnegBoxIntegers:
      if (m == Method::Oracle) {
        return l0_box_oracle(a, s, x.lower_vector(), x.upper_vector(), options.budget);
      }
      if (m == Method::Milp) {
        return l0_box_milp(a, s, x, options.milp);
      }
      if (m != Method::Auto) {
        unsupported(m, x, "l0 goodness");
      }
      try {
        return l0_box_oracle(a, s, x.lower_vector(), x.upper_vector(), options.budget);
      } catch (const BudgetExceeded&) {
        return l0_box_milp(a, s, x, options.milp);
      }
  }
  throw Unsupported("unknown constraint set");
}

std::string to_string(NspVariant variant) {
  return variant == NspVariant::Nsp ? "nsp" : "nsp+";
}

NspQuery NspQuery::for_support(NspVariant variant, ConstraintSet v, Support s) {
  NspQuery q;
  q.variant = variant;
  q.v = std::move(v);
  q.support = std::move(s);
  return q;
}

NspQuery NspQuery::of_order(NspVariant variant, ConstraintSet v, std::size_t order) {
  NspQuery q;
  q.variant = variant;
  q.v = std::move(v);
  q.order = order;
  return q;
}

GoodnessVerdict nsp_check(const RationalMatrix& a, const NspQuery& query,
                          const EnumerationBudget& budget) {
  require_dimension(a, query.v);
  const std::size_t n = a.cols();
  if (query.support) {
    for (auto i : query.support->indices()) {
      if (i >= n) {
        throw PreconditionError("support index out of range");
      }
    }
  }
  const bool plus = query.variant == NspVariant::NspPlus;
  const std::string route = to_string(query.variant);
  using Kind = ConstraintSet::Kind;
  const auto kind = query.v.kind();
  if (kind == Kind::AllIntegers || kind == Kind::AllReals || kind == Kind::BoxReals) {
    if (!query.support) {
      return nsp_order_lp(a, query.variant, query.order, budget);
    }
    const auto& s = query.support->indices();
    auto w = plus ? nsp_plus_violation_lp(a, s) : nsp_violation_lp(a, s);
    if (w) {
      auto v = bad(Method::Lp, route, *w);
      v.support = query.support;
      return v;
    }
    return good(Method::Lp, route);
  }
  if (!integral_box(query.v)) {
    throw Unsupported("nullspace properties need V to be Z^n, R^n or a box");
  }
  GoodnessVerdict out = good(Method::Oracle, route + "-box");
  for_each_kernel_point(a, box_lower(query.v), box_upper(query.v), budget,
                        [&](const IntVector& v) {
                          if (is_zero(v)) {
                            return true;
                          }
                          std::optional<Support> hit;
                          if (query.support) {
                            const bool bad_here = plus ? nsp_plus_violated_at(v, *query.support)
                                                       : nsp_violated_at(v, *query.support);
                            if (bad_here) {
                              hit = query.support;
                            }
                          } else if (plus) {
                            std::vector<std::size_t> neg;
                            for (std::size_t i = 0; i < n; ++i) {
                              if (sgn(v[i]) < 0) {
                                neg.push_back(i);
                              }
                            }
                            if (neg.size() <= query.order && sgn(sum_of(v)) <= 0) {
                              hit = Support(neg);
                            }
                          } else {
                            Support s(top_magnitudes(v, query.order));
                            if (nsp_violated_at(v, s)) {
                              hit = s;
                            }
                          }
                          if (hit) {
                            out = bad(Method::Oracle, route + "-box", v);
                            out.support = hit;
                            return false;
                          }
                          return true;
                        });
  return out;
}

GoodnessVerdict split_nsp_plus_check(const RationalMatrix& a, const IntVector& lower,
                                     const IntVector& upper, std::optional<Support> support,
                                     std::size_t order, const EnumerationBudget& budget) {
  const auto box = ConstraintSet::box_integers(lower, upper);
  require_dimension(a, box);
  GoodnessVerdict out = good(Method::Oracle, "split-nsp+");
  for_each_kernel_point(a, difference_box(lower, upper, -1), difference_box(lower, upper, 1),
                        budget, [&](const IntVector& d) {
                          if (is_zero(d)) {
                            return true;
                          }
                          if (auto s = split_violation(d, lower, upper, support, order)) {
                            out = bad(Method::Oracle, "split-nsp+", d);
                            out.support = s;
                            return false;
                          }
                          return true;
                        });
  return out;
}

GoodnessVerdict is_s_good_l1(const RationalMatrix& a, std::size_t s, const ConstraintSet& x,
                             const CheckOptions& options) {
  require_dimension(a, x);
  s = std::min(s, a.cols());
  using Kind = ConstraintSet::Kind;
  switch (x.kind()) {
    case Kind::AllIntegers:
    case Kind::AllReals:
      return nsp_order_lp(a, NspVariant::Nsp, s, options.budget);
    case Kind::NonnegativeIntegers:
    case Kind::NonnegReals:
      return nsp_order_lp(a, NspVariant::NspPlus, s, options.budget);
    case Kind::BoxReals:
      if (!x.is_nonnegative()) {
        throw Unsupported("l1 goodness over real boxes needs l = 0");
      }
      return nsp_order_lp(a, NspVariant::NspPlus, s, options.budget);
    case Kind::NonnegBoxIntegers:
      return nsp_check(a,
                       NspQuery::of_order(NspVariant::NspPlus,
                                          ConstraintSet::symmetric_box(x.upper_vector()), s),
                       options.budget);
    case Kind::BoxIntegers:
    case Kind::SymmetricBoxIntegers:
      return split_nsp_plus_check(a, x.lower_vector(), x.upper_vector(), std::nullopt, s,
                                  options.budget);
  }
  throw Unsupported("unknown constraint set");
}

namespace {

// Exact uniqueness of xhat for P1 over the integral box [lower, upper]:
// search d in ker(A) with xhat + d in the box and ||xhat + d||_1 <= ||xhat||_1.
std::optional<IntVector> box_descent(const RationalMatrix& a, const IntVector& xhat,
                                     const IntVector& lower, const IntVector& upper,
                                     const EnumerationBudget& budget) {
  IntVector lo;
  IntVector hi;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    lo.push_back(lower[i] - xhat[i]);
    hi.push_back(upper[i] - xhat[i]);
  }
  std::optional<IntVector> witness;
  for_each_kernel_point(a, lo, hi, budget, [&](const IntVector& d) {
    if (is_zero(d)) {
      return true;
    }
    Integer total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Integer xp = xhat[i] > 0 ? Integer(xhat[i]) : Integer(0);
      const Integer xn = xhat[i] < 0 ? Integer(-xhat[i]) : Integer(0);
      total += *split_cost(d[i], -xp, upper[i] - xp, -xn, -lower[i] - xn);
    }
    if (sgn(total) <= 0) {
      witness = d;
      return false;
    }
    return true;
  });
  return witness;
}

GoodnessVerdict descent_verdict(const std::optional<IntVector>& d, const IntVector& xhat,
                                std::string route) {
  if (!d) {
    return good(Method::Oracle, std::move(route));
  }
  auto v = bad(Method::Oracle, std::move(route), *d);
  IntVector partner;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    partner.push_back(xhat[i] + (*d)[i]);
  }
  v.partner = partner;
  return v;
}

}  // namespace

GoodnessVerdict indiv_recoverable(const RationalVector& xhat, const RationalMatrix& a,
                                  const ConstraintSet& x, const CheckOptions& options) {
  require_dimension(a, x);
  if (!x.contains(xhat)) {
    throw PreconditionError("xhat is not a member of " + x.describe());
  }
  using Kind = ConstraintSet::Kind;
  if (!x.is_integral()) {
    if (auto w = tangent_violation(a, xhat, x)) {
      return bad(Method::Lp, "tangent-cone", *w);
    }
    return good(Method::Lp, "tangent-cone");
  }
  const IntVector xi = to_integer(xhat);
  if (x.is_bounded()) {
    const char* route = x.kind() == Kind::NonnegBoxIntegers ? "nsp+box" : "split-nsp+";
    return descent_verdict(
        box_descent(a, xi, x.lower_vector(), x.upper_vector(), options.budget), xi, route);
  }
  // Every competitor has ||x||_1 <= ||xhat||_1, so the box [-K, K] with
  // K = ||xhat||_1 (or [0, K]) loses nothing.
  const Integer k = l1_norm(xi);
  if (sgn(k) == 0) {
    return good(Method::Oracle, "trivial");
  }
  const std::size_t n = a.cols();
  const IntVector upper(n, k);
  if (x.kind() == Kind::NonnegativeIntegers) {
    return descent_verdict(box_descent(a, xi, IntVector(n, Integer(0)), upper, options.budget),
                           xi, "nsp+exact");
  }
  if (!tangent_violation(a, xhat, ConstraintSet::reals(n))) {
    return good(Method::Lp, "sufficient");
  }
  if (!options.seek_counterexample) {
    return inconclusive(Method::Lp, "sufficient");
  }
  try {
    return descent_verdict(box_descent(a, xi, IntVector(n, Integer(-k)), upper, options.budget),
                           xi, "bounded-exact");
  } catch (const BudgetExceeded&) {
    return inconclusive(Method::Lp, "sufficient");
  }
}

RationalMatrix delta_ary_matrix(const IntVector& upper) {
  if (upper.empty()) {
    throw DimensionError("delta-ary matrix needs n >= 1");
  }
  Integer delta = 0;
  for (const auto& u : upper) {
    if (sgn(u) <= 0) {
      throw PreconditionError("delta-ary upper bounds must be positive");
    }
    delta = std::max(delta, u);
  }
  delta += 1;
  RationalMatrix a(1, upper.size());
  Integer power = 1;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    a(0, i) = power;
    power *= delta;
  }
  return a;
}

IntVector delta_ary_decode(const RationalMatrix& a, const Rational& b, const IntVector& upper) {
  if (a != delta_ary_matrix(upper)) {
    throw PreconditionError("matrix is not the delta-ary matrix of the given bounds");
  }
  if (!is_integral(b) || sgn(b) < 0) {
    throw NotInRange("right-hand side " + to_string(b) + " is not a nonnegative integer");
  }
  const Integer delta = a.cols() > 1 ? Integer(a(0, 1).get_num()) : upper[0] + 1;
  Integer rest = b.get_num();
  IntVector x;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    Integer digit;
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), delta.get_mpz_t());
    if (digit > upper[i]) {
      throw NotInRange("digit " + std::to_string(i + 1) + " of " + to_string(b) + " exceeds u");
    }
    x.push_back(digit);
  }
  if (sgn(rest) != 0) {
    throw NotInRange(to_string(b) + " exceeds the range of the delta-ary matrix");
  }
  return x;
}

}  // namespace intrec
