#include "intrec/rational.hpp"

#include <cctype>
#include <numeric>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool is_digits(std::string_view text) {
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  std::string_view digits = body;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  const auto slash = digits.find('/');
  const std::string_view num = digits.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : digits.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) {
    throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  if (negative) {
    p = -p;
  }
  Rational value(p, q);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const Integer& value) { return value.get_str(10); }

bool is_integral(const Rational& value) { return value.get_den() == 1; }

bool is_integral(const RationalVector& values) {
  for (const auto& v : values) {
    if (!is_integral(v)) {
      return false;
    }
  }
  return true;
}

Integer floor_of(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

int sign_of(const Rational& value) { return sgn(value); }

int sign_of(const Integer& value) { return sgn(value); }

RationalVector to_rational(const IntVector& values) {
  RationalVector out;
  out.reserve(values.size());
  for (const auto& v : values) {
    out.emplace_back(v);
  }
  return out;
}

IntVector to_integer(const RationalVector& values) {
  IntVector out;
  out.reserve(values.size());
  for (const auto& v : values) {
    if (!is_integral(v)) {
      throw PreconditionError("expected an integral value, got " + to_string(v));
    }
    out.push_back(v.get_num());
  }
  return out;
}

Integer denominator_lcm(const RationalVector& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

IntVector primitive_integral(const RationalVector& values) {
  const Integer scale = denominator_lcm(values);
  IntVector out;
  out.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer scaled = v.get_num() * (scale / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    out.push_back(std::move(scaled));
  }
  if (g > 1) {
    for (auto& v : out) {
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }
  return out;
}

std::string format_vector(const RationalVector& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += to_string(values[i]);
  }
  return out + ")";
}

std::string format_vector(const IntVector& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += to_string(values[i]);
  }
  return out + ")";
}

}  // namespace intrec
