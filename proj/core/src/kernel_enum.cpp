#include "intrec/kernel_enum.hpp"

#include "intrec/errors.hpp"
#include "intrec/linalg.hpp"

namespace intrec {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct LatticeWalk {
  const std::vector<IntVector>& basis;
  const IntVector& lower;
  const IntVector& upper;
  const EnumerationBudget& budget;
  const PointVisitor& visit;
  std::vector<std::size_t> pivots;
  std::size_t n = 0;
  std::size_t visited = 0;

  bool in_box(const IntVector& z, std::size_t from, std::size_t to) const {
    for (std::size_t j = from; j < to; ++j) {
      if (z[j] < lower[j] || z[j] > upper[j]) {
        return false;
      }
    }
    return true;
  }

  bool descend(std::size_t t, const IntVector& z) {
    if (t == basis.size()) {
      return visit(z);
    }
    const auto p = pivots[t];
    const auto next = t + 1 < basis.size() ? pivots[t + 1] : n;
    const Integer& q = basis[t][p];
    const Integer lo = ceil_div(lower[p] - z[p], q);
    const Integer hi = floor_div(upper[p] - z[p], q);
    IntVector cur(z);
    for (Integer c = lo; c <= hi; ++c) {
      if (++visited > budget.max_points) {
        throw BudgetExceeded("lattice enumeration exceeded " + std::to_string(budget.max_points) +
                             " candidate points");
      }
      for (std::size_t j = p; j < n; ++j) {
        cur[j] = z[j] + c * basis[t][j];
      }
      if (!in_box(cur, p, next)) {
        continue;
      }
      if (!descend(t + 1, cur)) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

bool for_each_lattice_point(const std::vector<IntVector>& basis, const IntVector& lower,
                            const IntVector& upper, const EnumerationBudget& budget,
                            const PointVisitor& visit) {
  const std::size_t n = lower.size();
  if (upper.size() != n) {
    throw DimensionError("enumeration box bounds differ in length");
  }
  LatticeWalk walk{basis, lower, upper, budget, visit, {}, n, 0};
  std::size_t last = 0;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const auto& b = basis[t];
    if (b.size() != n) {
      throw DimensionError("lattice basis vector has wrong length");
    }
    std::size_t p = 0;
    while (p < n && b[p] == 0) {
      ++p;
    }
    if (p == n || b[p] < 0 || (t > 0 && p <= last)) {
      throw PreconditionError("lattice basis is not in echelon form");
    }
    walk.pivots.push_back(p);
    last = p;
  }
  const IntVector zero(n, Integer(0));
  const std::size_t head = basis.empty() ? n : walk.pivots.front();
  if (!walk.in_box(zero, 0, head)) {
    return true;
  }
  return walk.descend(0, zero);
}

bool for_each_kernel_point(const RationalMatrix& a, const IntVector& lower,
                           const IntVector& upper, const EnumerationBudget& budget,
                           const PointVisitor& visit) {
  if (lower.size() != a.cols()) {
    throw DimensionError("enumeration box does not match the column count");
  }
  const auto basis = kernel_basis(a).integral_lattice_basis;
  return for_each_lattice_point(basis, lower, upper, budget, visit);
}

std::vector<IntVector> kernel_points(const RationalMatrix& a, const IntVector& lower,
                                     const IntVector& upper, const EnumerationBudget& budget) {
  std::vector<IntVector> out;
  for_each_kernel_point(a, lower, upper, budget, [&](const IntVector& z) {
    out.push_back(z);
    return true;
  });
  return out;
}

}  // namespace intrec
