#include "intrec/constraint_set.hpp"

#include "intrec/errors.hpp"

namespace intrec {

ConstraintSet::ConstraintSet(Kind kind, std::size_t n, std::optional<IntVector> lower,
                             std::optional<IntVector> upper)
    : kind_(kind), n_(n), lower_(std::move(lower)), upper_(std::move(upper)) {
  validate();
}

ConstraintSet ConstraintSet::integers(std::size_t n) {
  return {Kind::AllIntegers, n, std::nullopt, std::nullopt};
}

ConstraintSet ConstraintSet::nonneg_integers(std::size_t n) {
  return {Kind::NonnegativeIntegers, n, std::nullopt, std::nullopt};
}

ConstraintSet ConstraintSet::box_integers(IntVector lower, IntVector upper) {
  const std::size_t n = lower.size();
  return {Kind::BoxIntegers, n, std::move(lower), std::move(upper)};
}

ConstraintSet ConstraintSet::symmetric_box(IntVector upper) {
  const std::size_t n = upper.size();
  return {Kind::SymmetricBoxIntegers, n, std::nullopt, std::move(upper)};
}

ConstraintSet ConstraintSet::nonneg_box(IntVector upper) {
  const std::size_t n = upper.size();
  return {Kind::NonnegBoxIntegers, n, std::nullopt, std::move(upper)};
}

ConstraintSet ConstraintSet::box_reals(IntVector lower, IntVector upper) {
  const std::size_t n = lower.size();
  return {Kind::BoxReals, n, std::move(lower), std::move(upper)};
}

ConstraintSet ConstraintSet::nonneg_reals(std::size_t n) {
  return {Kind::NonnegReals, n, std::nullopt, std::nullopt};
}

ConstraintSet ConstraintSet::reals(std::size_t n) {
  return {Kind::AllReals, n, std::nullopt, std::nullopt};
}

ConstraintSet ConstraintSet::uniform_box(std::size_t n, long lower, long upper, bool integral) {
  IntVector l(n, Integer(lower));
  IntVector u(n, Integer(upper));
  if (!integral) {
    return box_reals(std::move(l), std::move(u));
  }
  if (lower == 0) {
    return nonneg_box(std::move(u));
  }
  if (lower == -upper) {
    return symmetric_box(std::move(u));
  }
  return box_integers(std::move(l), std::move(u));
}

ConstraintSet ConstraintSet::binary(std::size_t n) { return uniform_box(n, 0, 1); }

ConstraintSet ConstraintSet::from_rational_bounds(Kind kind, std::size_t n,
                                                  const std::optional<RationalVector>& lower,
                                                  const std::optional<RationalVector>& upper) {
  std::optional<IntVector> l;
  std::optional<IntVector> u;
  if (lower) {
    l.emplace();
    for (const auto& v : *lower) {
      l->push_back(ceil_of(v));
    }
  }
  if (upper) {
    u.emplace();
    for (const auto& v : *upper) {
      u->push_back(floor_of(v));
    }
  }
  switch (kind) {
    case Kind::AllIntegers:
    case Kind::NonnegativeIntegers:
    case Kind::NonnegReals:
    case Kind::AllReals:
      return {kind, n, std::nullopt, std::nullopt};
    case Kind::SymmetricBoxIntegers:
    case Kind::NonnegBoxIntegers:
      if (!u) {
        throw MissingBounds(to_string(kind) + " needs an upper bound vector");
      }
      return {kind, n, std::nullopt, std::move(u)};
    case Kind::BoxIntegers:
    case Kind::BoxReals:
      if (!l || !u) {
        throw MissingBounds(to_string(kind) + " needs lower and upper bound vectors");
      }
      return {kind, n, std::move(l), std::move(u)};
  }
  throw PreconditionError("unknown constraint set kind");
}

void ConstraintSet::validate() const {
  const bool needs_lower = kind_ == Kind::BoxIntegers || kind_ == Kind::BoxReals;
  const bool needs_upper = needs_lower || kind_ == Kind::SymmetricBoxIntegers ||
                           kind_ == Kind::NonnegBoxIntegers;
  if (needs_lower != lower_.has_value() || needs_upper != upper_.has_value()) {
    throw PreconditionError("bound vectors do not match constraint set kind " +
                            to_string(kind_));
  }
  if (lower_ && lower_->size() != n_) {
    throw DimensionError("lower bound vector has wrong length");
  }
  if (upper_ && upper_->size() != n_) {
    throw DimensionError("upper bound vector has wrong length");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const auto l = lower(i);
    const auto u = upper(i);
    if ((l && *l > 0) || (u && *u < 0)) {
      throw PreconditionError("bounds must satisfy l <= 0 <= u (coordinate " +
                              std::to_string(i + 1) + ")");
    }
    if (l && u && !(*l < *u)) {
      throw PreconditionError("bounds must satisfy l < u (coordinate " + std::to_string(i + 1) +
                              ")");
    }
  }
}

bool ConstraintSet::is_integral() const {
  return kind_ != Kind::BoxReals && kind_ != Kind::NonnegReals && kind_ != Kind::AllReals;
}

bool ConstraintSet::is_bounded() const {
  return kind_ == Kind::BoxIntegers || kind_ == Kind::SymmetricBoxIntegers ||
         kind_ == Kind::NonnegBoxIntegers || kind_ == Kind::BoxReals;
}

std::optional<Integer> ConstraintSet::lower(std::size_t i) const {
  switch (kind_) {
    case Kind::AllIntegers:
    case Kind::AllReals:
      return std::nullopt;
    case Kind::NonnegativeIntegers:
    case Kind::NonnegBoxIntegers:
    case Kind::NonnegReals:
      return Integer(0);
    case Kind::SymmetricBoxIntegers:
      return Integer(-(*upper_)[i]);
    case Kind::BoxIntegers:
    case Kind::BoxReals:
      return (*lower_)[i];
  }
  return std::nullopt;
}

std::optional<Integer> ConstraintSet::upper(std::size_t i) const {
  if (upper_) {
    return (*upper_)[i];
  }
  return std::nullopt;
}

IntVector ConstraintSet::lower_vector() const {
  if (!is_bounded()) {
    throw MissingBounds(describe() + " has no finite lower bounds");
  }
  IntVector out;
  for (std::size_t i = 0; i < n_; ++i) {
    out.push_back(*lower(i));
  }
  return out;
}

IntVector ConstraintSet::upper_vector() const {
  if (!is_bounded()) {
    throw MissingBounds(describe() + " has no finite upper bounds");
  }
  return *upper_;
}

bool ConstraintSet::is_binary() const {
  if (!is_integral() || !is_bounded()) {
    return false;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (*lower(i) != 0 || *upper(i) != 1) {
      return false;
    }
  }
  return true;
}

bool ConstraintSet::is_nonnegative() const {
  for (std::size_t i = 0; i < n_; ++i) {
    const auto l = lower(i);
    if (!l || *l != 0) {
      return false;
    }
  }
  return true;
}

bool ConstraintSet::contains(const RationalVector& x) const {
  if (x.size() != n_) {
    throw DimensionError("membership: vector length " + std::to_string(x.size()) +
                         " vs dimension " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_integral() && !intrec::is_integral(x[i])) {
      return false;
    }
    const auto l = lower(i);
    const auto u = upper(i);
    if (l && x[i] < Rational(*l)) {
      return false;
    }
    if (u && x[i] > Rational(*u)) {
      return false;
    }
  }
  return true;
}

bool ConstraintSet::contains(const IntVector& x) const { return contains(to_rational(x)); }

ConstraintSet ConstraintSet::with_box(IntVector lower, IntVector upper) const {
  if (is_integral()) {
    return box_integers(std::move(lower), std::move(upper));
  }
  return box_reals(std::move(lower), std::move(upper));
}

std::string ConstraintSet::describe() const {
  std::string out = to_string(kind_) + "^" + std::to_string(n_);
  if (is_bounded()) {
    out += " l=" + format_vector(lower_vector()) + " u=" + format_vector(*upper_);
  }
  return out;
}

std::string to_string(ConstraintSet::Kind kind) {
  switch (kind) {
    case ConstraintSet::Kind::AllIntegers:
      return "Z";
    case ConstraintSet::Kind::NonnegativeIntegers:
      return "Z+";
    case ConstraintSet::Kind::BoxIntegers:
      return "box";
    case ConstraintSet::Kind::SymmetricBoxIntegers:
      return "symbox";
    case ConstraintSet::Kind::NonnegBoxIntegers:
      return "nnbox";
    case ConstraintSet::Kind::BoxReals:
      return "Rbox";
    case ConstraintSet::Kind::NonnegReals:
      return "R+";
    case ConstraintSet::Kind::AllReals:
      return "R";
  }
  return "?";
}

ConstraintSet::Kind parse_set_kind(const std::string& text) {
  using Kind = ConstraintSet::Kind;
  for (Kind kind : {Kind::AllIntegers, Kind::NonnegativeIntegers, Kind::BoxIntegers,
                    Kind::SymmetricBoxIntegers, Kind::NonnegBoxIntegers, Kind::BoxReals,
                    Kind::NonnegReals, Kind::AllReals}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  throw ParseError("unknown set '" + text + "' (expected Z, Z+, box, symbox, nnbox, Rbox, R+ or R)");
}

}  // namespace intrec
