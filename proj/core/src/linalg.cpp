#include "intrec/linalg.hpp"

#include <utility>

#include "intrec/errors.hpp"
#include "intrec/support.hpp"

namespace intrec {

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::swap(m(a, j), m(b, j));
  }
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::swap(m(i, a), m(i, b));
  }
}

void negate_col(IntegerMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, c) = -m(i, c);
  }
}

// col_dst -= q * col_src
void axpy_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(m(i, src)) != 0) {
      m(i, dst) -= q * m(i, src);
    }
  }
}

// (col_k, col_j) <- (x col_k + y col_j, (a/g) col_j - (b/g) col_k)
void combine_cols(IntegerMatrix& m, std::size_t k, std::size_t j, const Integer& x,
                  const Integer& y, const Integer& ag, const Integer& bg) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer ck = m(i, k);
    const Integer cj = m(i, j);
    m(i, k) = x * ck + y * cj;
    m(i, j) = ag * cj - bg * ck;
  }
}

// Bareiss elimination in place; returns the rank. When `sign` is given, row
// swaps flip it.
std::size_t bareiss(IntegerMatrix& m, int* sign) {
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) {
      ++p;
    }
    if (p == m.rows()) {
      continue;
    }
    if (p != r) {
      swap_rows(m, p, r);
      if (sign != nullptr) {
        *sign = -*sign;
      }
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::vector<Integer> row_scales(const RationalMatrix& a) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (const auto& v : a.row(i)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    out.push_back(l);
  }
  return out;
}

void require_square(std::size_t rows, std::size_t cols) {
  if (rows != cols) {
    throw DimensionError("determinant of a non-square " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
}

void require_gate(std::size_t n, std::size_t max_columns, const char* what) {
  if (n > max_columns) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) +
                         " columns exceed the exhaustive-search gate of " +
                         std::to_string(max_columns));
  }
}

bool det_is_unit_or_zero(const IntegerMatrix& a, bool allow_zero) {
  const Integer d = determinant(a);
  if (sgn(d) == 0) {
    return allow_zero;
  }
  return abs(d) == 1;
}

}  // namespace

Integer determinant(const IntegerMatrix& a) {
  require_square(a.rows(), a.cols());
  if (a.rows() == 0) {
    return 1;
  }
  IntegerMatrix m = a;
  int sign = 1;
  if (bareiss(m, &sign) < m.rows()) {
    return 0;
  }
  const std::size_t last = m.rows() - 1;
  return sign * m(last, last);
}

Rational determinant(const RationalMatrix& a) {
  require_square(a.rows(), a.cols());
  const auto scales = row_scales(a);
  Rational d(determinant(scale_rows_to_integer(a)));
  for (const auto& s : scales) {
    d /= s;
  }
  return d;
}

std::size_t rank(const IntegerMatrix& a) {
  IntegerMatrix m = a;
  return bareiss(m, nullptr);
}

std::size_t rank(const RationalMatrix& a) { return rank(scale_rows_to_integer(a)); }

HnfResult hermite_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HnfResult res{a, IntegerMatrix::identity(n), 0, {}};
  IntegerMatrix& h = res.h;
  IntegerMatrix& u = res.u;
  std::size_t k = 0;
  for (std::size_t i = 0; i < m && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(h(i, j)) == 0) {
        continue;
      }
      if (sgn(h(i, k)) == 0) {
        swap_cols(h, k, j);
        swap_cols(u, k, j);
        continue;
      }
      Integer g;
      Integer x;
      Integer y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h(i, k).get_mpz_t(),
                 h(i, j).get_mpz_t());
      const Integer ag = h(i, k) / g;
      const Integer bg = h(i, j) / g;
      combine_cols(h, k, j, x, y, ag, bg);
      combine_cols(u, k, j, x, y, ag, bg);
    }
    if (sgn(h(i, k)) == 0) {
      continue;
    }
    if (sgn(h(i, k)) < 0) {
      negate_col(h, k);
      negate_col(u, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      if (sgn(q) != 0) {
        axpy_col(h, j, k, q);
        axpy_col(u, j, k, q);
      }
    }
    res.pivot_rows.push_back(i);
    ++k;
  }
  res.rank = k;
  return res;
}

HnfResult hermite_normal_form(const RationalMatrix& a) {
  return hermite_normal_form(to_integer(a));
}

std::vector<IntVector> lattice_echelon_basis(const std::vector<IntVector>& generators,
                                             std::size_t n) {
  IntegerMatrix k(n, generators.size());
  for (std::size_t t = 0; t < generators.size(); ++t) {
    if (generators[t].size() != n) {
      throw DimensionError("lattice generator has wrong length");
    }
    for (std::size_t i = 0; i < n; ++i) {
      k(i, t) = generators[t][i];
    }
  }
  const auto hnf = hermite_normal_form(k);
  std::vector<IntVector> out;
  for (std::size_t t = 0; t < hnf.rank; ++t) {
    out.push_back(hnf.h.column(t));
  }
  return out;
}

KernelBasis kernel_basis(const RationalMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  KernelBasis out;

  // Reduced row echelon form over the rationals.
  RationalMatrix r = a;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && sgn(r(p, c)) == 0) {
      ++p;
    }
    if (p == m) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(r(p, j), r(row, j));
    }
    const Rational inv = 1 / r(row, c);
    for (std::size_t j = 0; j < n; ++j) {
      r(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || sgn(r(i, c)) == 0) {
        continue;
      }
      const Rational f = r(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) -= f * r(row, j);
      }
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) {
    is_pivot[c] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) {
      continue;
    }
    RationalVector v(n);
    v[f] = 1;
    for (std::size_t t = 0; t < pivot_cols.size(); ++t) {
      v[pivot_cols[t]] = -r(t, f);
    }
    out.vectors.push_back(std::move(v));
  }

  const auto hnf = hermite_normal_form(scale_rows_to_integer(a));
  std::vector<IntVector> gens;
  for (std::size_t t = hnf.rank; t < n; ++t) {
    gens.push_back(hnf.u.column(t));
  }
  out.integral_lattice_basis = lattice_echelon_basis(gens, n);
  return out;
}

std::optional<IntVector> hnf_solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) {
    throw DimensionError("hnf_solve: right-hand side length mismatch");
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntegerMatrix ai(m, n);
  IntVector bi(m);
  for (std::size_t i = 0; i < m; ++i) {
    Integer l = b[i].get_den();
    for (const auto& v : a.row(i)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      ai(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    }
    bi[i] = b[i].get_num() * (l / b[i].get_den());
  }
  const auto hnf = hermite_normal_form(ai);
  IntVector y(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Integer acc = 0;
    for (std::size_t t = 0; t < next; ++t) {
      acc += hnf.h(i, t) * y[t];
    }
    const Integer residual = bi[i] - acc;
    if (next < hnf.rank && hnf.pivot_rows[next] == i) {
      if (!mpz_divisible_p(residual.get_mpz_t(), hnf.h(i, next).get_mpz_t())) {
        return std::nullopt;
      }
      y[next] = residual / hnf.h(i, next);
      ++next;
    } else if (sgn(residual) != 0) {
      return std::nullopt;
    }
  }
  return multiply(hnf.u, y);
}

std::optional<std::size_t> spark(const RationalMatrix& a, std::size_t max_columns) {
  require_nonempty(a, "spark");
  const std::size_t n = a.cols();
  require_gate(n, max_columns, "spark");
  const IntegerMatrix ai = scale_rows_to_integer(a);
  const std::size_t r = rank(ai);
  if (r == n) {
    return std::nullopt;
  }
  for (std::size_t k = 1; k <= r + 1; ++k) {
    bool dependent = false;
    for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
      if (rank(ai.select_columns(cols)) < k) {
        dependent = true;
        return false;
      }
      return true;
    });
    if (dependent) {
      return k;
    }
  }
  return r + 1;
}

bool is_unimodular(const RationalMatrix& a, std::size_t max_columns) {
  require_nonempty(a, "is_unimodular");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > n) {
    throw DimensionError("is_unimodular needs m <= n, got " + std::to_string(m) + "x" +
                         std::to_string(n));
  }
  require_gate(n, max_columns, "is_unimodular");
  const IntegerMatrix ai = to_integer(a);
  return for_each_subset(n, m, [&](const std::vector<std::size_t>& cols) {
    return det_is_unit_or_zero(ai.select_columns(cols), true);
  });
}

bool is_totally_unimodular(const RationalMatrix& a, std::size_t max_columns) {
  require_gate(std::max(a.rows(), a.cols()), max_columns, "is_totally_unimodular");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& v : a.row(i)) {
      if (v != 0 && v != 1 && v != -1) {
        return false;
      }
    }
  }
  const IntegerMatrix ai = to_integer(a);
  const std::size_t top = std::min(a.rows(), a.cols());
  for (std::size_t k = 2; k <= top; ++k) {
    const bool ok = for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      return for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        return det_is_unit_or_zero(ai.select(rows, cols), true);
      });
    });
    if (!ok) {
      return false;
    }
  }
  return true;
}

}  // namespace intrec
