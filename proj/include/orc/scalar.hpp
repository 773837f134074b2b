#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "orc/error.hpp"

namespace orc {

using Scalar = mpq_class;

inline Scalar make_scalar(long num, unsigned long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "7", "-3/4" or a plain decimal such as "0.25" (-> 1/4) into a reduced rational.
/// Scientific notation is not accepted.
inline Scalar parse_scalar(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();

  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string_view body = text.substr(pos);
  if (body.empty()) throw fail();

  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  Scalar value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = Scalar(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw fail();
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Scalar(mpz_class(digits.empty() ? "0" : digits, 10), den);
  } else {
    if (!all_digits(body)) throw fail();
    value = Scalar(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Scalar(-value) : value;
}

/// Canonical text: "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline double to_double(const Scalar& q) { return q.get_d(); }

inline Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar result = 1;
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

inline Scalar positive_part(const Scalar& q) { return sgn(q) > 0 ? q : Scalar(0); }

}  // namespace orc
