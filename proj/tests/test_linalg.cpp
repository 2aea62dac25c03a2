#include <doctest.h>

#include "intrec/errors.hpp"
#include "intrec/linalg.hpp"

using namespace intrec;

namespace {

bool is_echelon(const std::vector<IntVector>& basis) {
  std::size_t last = 0;
  bool first = true;
  for (const auto& v : basis) {
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) {
      ++p;
    }
    if (p == v.size() || v[p] <= 0 || (!first && p <= last)) {
      return false;
    }
    last = p;
    first = false;
  }
  return true;
}

}  // namespace

TEST_CASE("determinant and rank") {
  CHECK(determinant(IntegerMatrix{{2, 1}, {1, 1}}) == 1);
  CHECK(determinant(IntegerMatrix{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}) == -2);
  CHECK(determinant(RationalMatrix{{Rational(1, 2), 0}, {0, 4}}) == 2);
  CHECK(rank(RationalMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(rank(IntegerMatrix{{1, 0}, {0, 1}, {1, 1}}) == 2);
}

TEST_CASE("kernel basis spans the integral kernel in echelon form") {
  RationalMatrix a{{2, 3, 6}};
  const auto k = kernel_basis(a);
  CHECK(k.vectors.size() == 2);
  CHECK(is_echelon(k.integral_lattice_basis));
  for (const auto& v : k.integral_lattice_basis) {
    CHECK(multiply(a, v) == RationalVector{0});
  }
  RationalMatrix b{{1, 2}};
  const auto kb = kernel_basis(b).integral_lattice_basis;
  REQUIRE(kb.size() == 1);
  CHECK((kb[0] == IntVector{2, -1}));
}

TEST_CASE("hermite normal form") {
  RationalMatrix a{{2, 3, 6}, {1, 1, 1}};
  const auto h = hermite_normal_form(a);
  CHECK(h.rank == 2);
  for (std::size_t c = 0; c < 3; ++c) {
    IntVector ucol{h.u(0, c), h.u(1, c), h.u(2, c)};
    CHECK(multiply(a, ucol) == RationalVector{Rational(h.h(0, c)), Rational(h.h(1, c))});
  }
  const auto d = determinant(h.u);
  CHECK((d == 1 || d == -1));
  for (std::size_t c = h.rank; c < 3; ++c) {
    IntVector col{h.u(0, c), h.u(1, c), h.u(2, c)};
    CHECK(multiply(a, col) == RationalVector{0, 0});
  }
  CHECK(hnf_solve(RationalMatrix{{2, 4}}, {3}) == std::nullopt);
  const auto x = hnf_solve(RationalMatrix{{2, 3, 6}}, {11});
  REQUIRE(x);
  CHECK(multiply(RationalMatrix{{2, 3, 6}}, *x) == RationalVector{11});
}

TEST_CASE("spark") {
  CHECK(spark(RationalMatrix{{2, 3, 6}}) == 2u);
  CHECK(spark(RationalMatrix{{1, 0}, {0, 1}}) == std::nullopt);
  CHECK(spark(RationalMatrix{{1, 0, 1}, {0, 1, 1}}) == 3u);
  CHECK(spark(RationalMatrix{{1, 0, 0}, {0, 1, 0}}) == 1u);
  RationalMatrix wide(1, 30);
  CHECK_THROWS_AS(spark(wide), BudgetExceeded);
}

TEST_CASE("unimodularity") {
  // node-arc incidence of a directed triangle, one row dropped
  RationalMatrix net{{1, 0, -1}, {-1, 1, 0}};
  CHECK(is_totally_unimodular(net));
  CHECK(is_unimodular(net));
  RationalMatrix cyclic{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  CHECK_FALSE(is_totally_unimodular(cyclic));
  CHECK_FALSE(is_unimodular(cyclic));
  CHECK_FALSE(is_totally_unimodular(RationalMatrix{{2, 3, 6}}));
  CHECK_FALSE(is_unimodular(RationalMatrix{{1, 2}}));
  CHECK(is_unimodular(RationalMatrix{{1, 1}}));
  CHECK_FALSE(is_totally_unimodular(RationalMatrix{{1, 2}}));
}
