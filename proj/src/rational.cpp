#include "polyimage/rational.hpp"

#include <cctype>
#include <ostream>

#include "polyimage/errors.hpp"

namespace polyimage {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const std::string token(text);
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("invalid rational '" + token + "': " + why, token, 0);
  };

  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_part = body.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);

  if (!all_digits(num_part)) throw fail("expected decimal digits");
  mpz_class num(std::string(num_part), 10);
  mpz_class den(1);
  if (slash != std::string_view::npos) {
    if (!all_digits(den_part)) throw fail("expected decimal denominator");
    den = mpz_class(std::string(den_part), 10);
    if (den == 0) throw fail("zero denominator");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  value_ /= o.value_;
  return *this;
}

void Rational::set_fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("zero denominator");
  value_.get_num() = num;
  value_.get_den() = den;
  value_.canonicalize();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace polyimage
