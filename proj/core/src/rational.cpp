#include "curenet/rational.hpp"

#include <cctype>
#include <cmath>

#include "curenet/errors.hpp"

namespace curenet {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) return fail();
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();

  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    std::string exp_text(text.substr(i));
    if (exp_text.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size()) return fail();
  }

  mpz_class numerator(digits, 10);
  long shift = exponent - fraction_digits;
  Rational value;
  if (shift >= 0) {
    value = Rational(numerator * pow10(static_cast<unsigned long>(shift)));
  } else {
    value = Rational(numerator, pow10(static_cast<unsigned long>(-shift)));
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_str();

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = value.get_num() * pow10(places) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Rational q(value);
  q.canonicalize();
  return q;
}

Rational round_down(double value, std::int64_t denominator) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Rational q{mpz_class(std::floor(value * static_cast<double>(denominator))),
             mpz_class(denominator)};
  q.canonicalize();
  return q;
}

Rational round_up(double value, std::int64_t denominator) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Rational q{mpz_class(std::ceil(value * static_cast<double>(denominator))),
             mpz_class(denominator)};
  q.canonicalize();
  return q;
}

std::optional<std::pair<std::int64_t, std::int64_t>> to_int64_pair(
    const Rational& value) {
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (mpz_sizeinbase(num.get_mpz_t(), 2) > 62 ||
      mpz_sizeinbase(den.get_mpz_t(), 2) > 62) {
    return std::nullopt;
  }
  return std::pair{static_cast<std::int64_t>(num.get_si()),
                   static_cast<std::int64_t>(den.get_si())};
}

bool denominator_at_most(const Rational& value, std::uint64_t limit) {
  return mpz_cmp_ui(value.get_den_mpz_t(), limit) <= 0;
}

}  // namespace curenet
