// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <ostream>

#include "metriq/rational.hpp"

namespace metriq {

// Nonnegative rational extended with a single point at infinity.  All
// distance and bound arithmetic in the library runs on this type; there is
// no floating point anywhere.
class ExtReal {
 public:
  ExtReal() : inf_(false), val_(0) {}
  ExtReal(const Rat &v) : inf_(false), val_(v) {
    if (v < 0) throw std::domain_error("negative bound: " + rat_str(v));
  }
  ExtReal(int v) : ExtReal(Rat(v)) {}

  static ExtReal inf() {
    ExtReal e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && val_ == 0; }
  // Finite value; only meaningful when !is_inf().
  const Rat &value() const { return val_; }

  friend ExtReal operator+(const ExtReal &a, const ExtReal &b) {
    if (a.inf_ || b.inf_) return inf();
    return ExtReal(Rat(a.val_ + b.val_));
  }

  // Scaling by a nonnegative rational; inf stays inf (scales here are
  // always strictly positive in practice).
  friend ExtReal operator*(const Rat &k, const ExtReal &a) {
    if (a.inf_) return inf();
    return ExtReal(Rat(k * a.val_));
  }
  ExtReal div(const Rat &k) const {
    if (inf_) return inf();
    return ExtReal(Rat(val_ / k));
  }

  friend bool operator==(const ExtReal &a, const ExtReal &b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.val_ == b.val_;
  }
  friend std::strong_ordering operator<=>(const ExtReal &a, const ExtReal &b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    if (a.val_ < b.val_) return std::strong_ordering::less;
    if (a.val_ == b.val_) return std::strong_ordering::equal;
    return std::strong_ordering::greater;
  }

  friend const ExtReal &min(const ExtReal &a, const ExtReal &b) { return b < a ? b : a; }
  friend const ExtReal &max(const ExtReal &a, const ExtReal &b) { return a < b ? b : a; }

  std::string str() const { return inf_ ? "inf" : rat_str(val_); }

  static ExtReal parse(const std::string &s) {
    if (s == "inf" || s == "INF" || s == "oo") return inf();
    return ExtReal(parse_rat(s));
  }

  friend std::ostream &operator<<(std::ostream &os, const ExtReal &e) { return os << e.str(); }

 private:
  bool inf_;
  Rat val_;
};

// c * r^n as an extended real, used for geometric bound families.
inline ExtReal geom_at(const Rat &c, const Rat &r, long n) {
  return ExtReal(Rat(c * rat_pow(r, static_cast<unsigned long>(n))));
}

}  // namespace metriq
