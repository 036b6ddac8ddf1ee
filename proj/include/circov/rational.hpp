#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circov/error.hpp"

namespace circov {

using Int = std::int64_t;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline Rational rational(Int num, Int den = 1) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with q > 0; no decimal points, no whitespace.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  if (den.find_first_not_of('0') == std::string_view::npos)
    fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q;
  q.set_str(std::string(text.front() == '+' ? text.substr(1) : text), 10);
  q.canonicalize();
  return q;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline mpz_class floor_of(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline mpz_class ceil_of(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::Internal, "integer does not fit in 64 bits");
  return static_cast<Int>(z.get_si());
}

inline Int to_int(const Rational& q) {
  if (!is_integer(q)) fail(ErrorKind::Internal, "expected an integral rational, got " + q.get_str());
  return to_int(mpz_class(q.get_num()));
}

// Floor division for signed integers (C++ '/' truncates toward zero).
constexpr Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Rational dot(std::span<const Int> a, std::span<const Rational> x) {
  Rational sum = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0) sum += Rational(static_cast<long>(a[j])) * x[j];
  return sum;
}

inline RationalVector to_rationals(std::span<const Int> v) {
  RationalVector out;
  out.reserve(v.size());
  for (Int e : v) out.emplace_back(static_cast<long>(e));
  return out;
}

}  // namespace circov
