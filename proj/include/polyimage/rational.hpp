#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polyimage {

/// Exact rational number backed by GMP. Always held in lowest terms with a
/// positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(implicit)

  template <std::signed_integral I>
  Rational(I num, I den) {
    set_fraction(mpz_class(static_cast<long>(num)),
                 mpz_class(static_cast<long>(den)));
  }

  explicit Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) { set_fraction(num, den); }

  /// Parses `[+-]digits[/digits]`. Throws ParseError on anything else,
  /// including a zero denominator or embedded whitespace.
  static Rational parse(std::string_view text);

  /// Canonical text form: "n" for integers, "n/d" otherwise.
  std::string str() const { return value_.get_str(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void set_fraction(const mpz_class& num, const mpz_class& den);

  mpq_class value_;
};

Rational abs(const Rational& r);

}  // namespace polyimage
