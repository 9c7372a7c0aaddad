#include "hopskip/rational.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hopskip/errors.hpp"

namespace hopskip {
namespace {

using wide = __int128;

constexpr wide kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr wide kMin64 = std::numeric_limits<std::int64_t>::min();

wide wide_abs(wide v) { return v < 0 ? -v : v; }

wide wide_gcd(wide a, wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

wide checked_mul(wide a, wide b) {
  wide out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("rational multiply overflow");
  return out;
}

wide checked_add(wide a, wide b) {
  wide out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("rational add overflow");
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgumentError("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(wide num, wide den) {
  if (den == 0) throw InvalidArgumentError("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax64 || num < kMin64 || den > kMax64) {
    throw OverflowError("rational result exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view lhs = text.substr(0, slash);
    std::string_view rhs = text.substr(slash + 1);
    if (!lhs.empty() && lhs.front() == '+') lhs.remove_prefix(1);
    std::int64_t n = 0, d = 0;
    auto [p1, e1] = std::from_chars(lhs.data(), lhs.data() + lhs.size(), n);
    auto [p2, e2] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), d);
    if (e1 != std::errc{} || p1 != lhs.data() + lhs.size() || e2 != std::errc{} ||
        p2 != rhs.data() + rhs.size() || d == 0) {
      return fail();
    }
    return Rational(n, d);
  }

  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  wide num = 0;
  wide den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return fail();
    seen_digit = true;
    num = checked_add(checked_mul(num, 10), c - '0');
    if (seen_point) den = checked_mul(den, 10);
  }
  if (!seen_digit) return fail();
  return from_wide(negative ? -num : num, den);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rational Rational::operator-() const { return from_wide(-wide{num_}, den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  wide g = wide_gcd(den_, rhs.den_);
  wide lhs_scale = rhs.den_ / g;
  wide rhs_scale = den_ / g;
  wide n = wide{num_} * lhs_scale + wide{rhs.num_} * rhs_scale;
  wide d = wide{den_} * lhs_scale;
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  wide g1 = wide_gcd(num_, rhs.den_);
  wide g2 = wide_gcd(rhs.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  wide n = (wide{num_} / g1) * (wide{rhs.num_} / g2);
  wide d = (wide{den_} / g2) * (wide{rhs.den_} / g1);
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw InvalidArgumentError("rational division by zero");
  Rational inv;
  inv.num_ = rhs.den_;
  inv.den_ = rhs.num_;
  if (inv.den_ < 0) {
    if (inv.num_ == std::numeric_limits<std::int64_t>::min() ||
        inv.den_ == std::numeric_limits<std::int64_t>::min()) {
      throw OverflowError("rational reciprocal overflow");
    }
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide lhs = wide{a.num_} * b.den_;
  wide rhs = wide{b.num_} * a.den_;
  return lhs <=> rhs;
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int significant_digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", significant_digits,
                static_cast<long double>(num_) / static_cast<long double>(den_));
  return buf;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  if (r.is_integer()) return os << r.num();
  return os << r.num() << '/' << r.den();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace hopskip
