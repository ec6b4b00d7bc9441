#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toricq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lattice points and ray generators are small; they live in machine words.
using IntPoint = std::vector<std::int64_t>;
using QVector = std::vector<Rational>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

inline std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return v.get_si();
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Parses "3", "-7", "3/4" or "-1/2".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("bad rational literal '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("bad rational literal '" + s + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline QVector to_qvector(const IntPoint& v) {
  QVector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(make_rational(x));
  return out;
}

inline Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVector& a, const IntPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) s += a[i] * to_integer(b[i]);
  return s;
}

inline std::int64_t dot(const IntPoint& a, const IntPoint& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool all_integral(const QVector& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

/// Least common multiple of all denominators.
inline Integer common_denominator(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer d = x.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

inline std::int64_t gcd_of(const IntPoint& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace toricq
