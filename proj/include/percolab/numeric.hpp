#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace percolab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 200-bit binary float, used only for convergent checks on the gadget table.
using Float200 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// Serialized form used in CSV exports: "n" or "n/d".
inline std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  if (is_integer(q)) {
    os << num(q);
  } else {
    os << num(q) << "/" << den(q);
  }
  return os.str();
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(n, d);
}

// Residue in [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Fractional part in [0, 1).
inline Rational mod_one(const Rational& q) {
  BigInt n = num(q), d = den(q);
  return Rational(mod_floor(n, d), d);
}

}  // namespace percolab
