// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace metriq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// base^n for integer n >= 0.
inline Rat rat_pow(const Rat &base, unsigned long n) {
  using boost::multiprecision::pow;
  if (n == 0) return Rat(1);
  Int num = pow(numerator(base), static_cast<unsigned>(n));
  Int den = pow(denominator(base), static_cast<unsigned>(n));
  return Rat(num, den);
}

// Accepts "p/q", plain integers and decimal literals; decimals are read
// exactly (0.5 -> 1/2), never through floating point.
inline Rat parse_rat(const std::string &s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    try {
      return Rat(s);
    } catch (const std::runtime_error &) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  std::string ipart = s.substr(0, dot), fpart = s.substr(dot + 1);
  bool neg = !ipart.empty() && ipart[0] == '-';
  if (neg) ipart = ipart.substr(1);
  if (ipart.empty()) ipart = "0";
  if (fpart.empty() || fpart.find_first_not_of("0123456789") != std::string::npos ||
      ipart.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad decimal literal: " + s);
  Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(fpart.size()));
  Int units = Int(ipart) * scale + Int(fpart);
  Rat r(units, scale);
  return neg ? Rat(-r) : r;
}

inline std::string rat_str(const Rat &r) { return r.str(); }

}  // namespace metriq
