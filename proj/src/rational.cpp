#include "packbound/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace packbound {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long value) : value_(static_cast<long>(value)) {
  check_nonnegative();
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)),
                     mpz_class(static_cast<long>(den)));
  value_.canonicalize();
  check_nonnegative();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) {
  value_.canonicalize();
  check_nonnegative();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  mpq_class q(n, d);
  return Rational(std::move(q));
}

std::string Rational::numerator_str() const {
  return value_.get_num().get_str();
}

std::string Rational::denominator_str() const {
  return value_.get_den().get_str();
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::int64_t Rational::to_int64() const {
  if (!is_integer() || !value_.get_num().fits_slong_p()) {
    throw std::overflow_error("rational " + str() + " is not a small integer");
  }
  return value_.get_num().get_si();
}

void Rational::check_nonnegative() const {
  if (sgn(value_) < 0) {
    throw std::domain_error("negative rational " + value_.get_str());
  }
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  check_nonnegative();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational floor(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.value_.get_num_mpz_t(),
             x.value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational ceil(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.value_.get_num_mpz_t(),
             x.value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace packbound
