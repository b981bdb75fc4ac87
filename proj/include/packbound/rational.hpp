#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace packbound {

// Exact nonnegative rational number, always kept in canonical reduced form.
//
// All sizes, volumes and bound values in the library are Rationals. Any
// operation whose exact result would be negative throws std::domain_error
// instead of producing a value outside the type's domain.
class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);

  // Accepts "p/q" or "p" with p >= 0, q > 0. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::string numerator_str() const;
  std::string denominator_str() const;
  std::string str() const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const;

  // Valid only when the value fits; throws std::overflow_error otherwise.
  std::int64_t to_int64() const;
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational floor(const Rational& x);
  friend Rational ceil(const Rational& x);

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class v);
  void check_nonnegative() const;

  mpq_class value_{0};
};

Rational floor(const Rational& x);
Rational ceil(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace packbound
