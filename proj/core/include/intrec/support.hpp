#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "intrec/rational.hpp"

namespace intrec {

/// Sorted set of 0-based coordinate indices. External formats print them
/// 1-based.
class Support {
 public:
  Support() = default;
  /// Sorts and deduplicates.
  explicit Support(std::vector<std::size_t> indices);

  static Support of(const RationalVector& x);
  static Support of(const IntVector& x);

  [[nodiscard]] const std::vector<std::size_t>& indices() const { return indices_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] bool empty() const { return indices_.empty(); }
  [[nodiscard]] bool contains(std::size_t i) const;
  /// Complement within {0, ..., n-1}.
  [[nodiscard]] Support complement(std::size_t n) const;
  /// "{1,3}" style, 1-based.
  [[nodiscard]] std::string to_string() const;

  bool operator==(const Support&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

std::size_t l0_norm(const RationalVector& x);
std::size_t l0_norm(const IntVector& x);
Rational l1_norm(const RationalVector& x);
Integer l1_norm(const IntVector& x);

/// x_S: equal to x on S, zero elsewhere.
RationalVector restrict_support(const RationalVector& x, const Support& s);
IntVector restrict_support(const IntVector& x, const Support& s);

/// Calls fn(subset) for every k-subset of {0, ..., n-1} in lexicographic
/// order; stops early when fn returns false. Returns false if stopped.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) {
    return true;
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    idx[i] = i;
  }
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) {
      return false;
    }
    if (k == 0) {
      return true;
    }
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) {
      --pos;
    }
    if (pos == 0) {
      return true;
    }
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace intrec
