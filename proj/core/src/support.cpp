#include "intrec/support.hpp"

#include <algorithm>

#include "intrec/errors.hpp"

namespace intrec {

Support::Support(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

Support Support::of(const RationalVector& x) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) {
      idx.push_back(i);
    }
  }
  return Support(std::move(idx));
}

Support Support::of(const IntVector& x) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) {
      idx.push_back(i);
    }
  }
  return Support(std::move(idx));
}

bool Support::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

Support Support::complement(std::size_t n) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i)) {
      idx.push_back(i);
    }
  }
  return Support(std::move(idx));
}

std::string Support::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k > 0) {
      out += ",";
    }
    out += std::to_string(indices_[k] + 1);
  }
  return out + "}";
}

std::size_t l0_norm(const RationalVector& x) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](const Rational& v) { return sgn(v) != 0; }));
}

std::size_t l0_norm(const IntVector& x) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](const Integer& v) { return sgn(v) != 0; }));
}

Rational l1_norm(const RationalVector& x) {
  Rational acc = 0;
  for (const auto& v : x) {
    acc += abs(v);
  }
  return acc;
}

Integer l1_norm(const IntVector& x) {
  Integer acc = 0;
  for (const auto& v : x) {
    acc += abs(v);
  }
  return acc;
}

namespace {

template <typename Vec>
Vec restrict_impl(const Vec& x, const Support& s) {
  Vec out(x.size());
  for (std::size_t i : s.indices()) {
    if (i >= x.size()) {
      throw DimensionError("support index " + std::to_string(i + 1) + " outside [n]");
    }
    out[i] = x[i];
  }
  return out;
}

}  // namespace

RationalVector restrict_support(const RationalVector& x, const Support& s) {
  return restrict_impl(x, s);
}

IntVector restrict_support(const IntVector& x, const Support& s) { return restrict_impl(x, s); }

}  // namespace intrec
