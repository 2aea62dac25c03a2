#include "intrec/matrix.hpp"

#include <string>

namespace intrec {

RationalVector multiply(const RationalMatrix& a, const RationalVector& x) {
  if (x.size() != a.cols()) {
    throw DimensionError("matrix-vector product: length " + std::to_string(x.size()) +
                         " vs " + std::to_string(a.cols()) + " columns");
  }
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(x[j]) != 0) {
        acc += a(i, j) * x[j];
      }
    }
    out[i] = acc;
  }
  return out;
}

IntVector multiply(const IntegerMatrix& a, const IntVector& x) {
  if (x.size() != a.cols()) {
    throw DimensionError("matrix-vector product: dimension mismatch");
  }
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(x[j]) != 0) {
        acc += a(i, j) * x[j];
      }
    }
    out[i] = acc;
  }
  return out;
}

RationalVector multiply(const RationalMatrix& a, const IntVector& x) {
  return multiply(a, to_rational(x));
}

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j);
    }
  }
  return out;
}

IntegerMatrix to_integer(const RationalMatrix& a) {
  IntegerMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integral(a(i, j))) {
        throw PreconditionError("matrix entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + to_string(a(i, j)) +
                                " is not integral");
      }
      out(i, j) = a(i, j).get_num();
    }
  }
  return out;
}

bool is_integral(const RationalMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& v : a.row(i)) {
      if (!is_integral(v)) {
        return false;
      }
    }
  }
  return true;
}

IntegerMatrix scale_rows_to_integer(const RationalMatrix& a) {
  IntegerMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (const auto& v : a.row(i)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    }
  }
  return out;
}

RationalMatrix split_matrix(const RationalMatrix& a) {
  RationalMatrix out(a.rows(), 2 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j);
      out(i, a.cols() + j) = -a(i, j);
    }
  }
  return out;
}

void require_nonempty(const RationalMatrix& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw DimensionError(std::string(what) + ": matrix must have at least one row and column");
  }
}

}  // namespace intrec
