#pragma once

// Exact extended-rational scalar: an arbitrary-precision rational number or
// the single point +infinity.  All exponent formulas in this library are
// evaluated over this type, so results like 24/23 or 63/61 come out exact
// rather than as doubles.
//
// Infinity is an absorbing top element, with deliberately narrow arithmetic:
//   a + INF = INF,  INF - a = INF (a finite),  a / INF = 0,
//   INF * a = INF for a > 0,  INF * 0 = domain error,
//   a - INF, INF - INF, INF / INF, x / 0 = domain error.
// There is no -infinity.  The only place 1/0 is meaningful is the explicit
// reciprocal(), which maps 0 -> INF and INF -> 0; operator/ still rejects a
// zero divisor.  Comparison is total, with every finite value < INF.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sumlab {

class ExtRational {
public:
  using rep = boost::multiprecision::cpp_rational;

  ExtRational() = default;
  ExtRational(long long n) : v_(n) {}  // NOLINT: implicit by design
  ExtRational(long long num, long long den) {
    if (den == 0) throw std::domain_error("ExtRational: zero denominator");
    v_ = rep(num, den);
  }
  explicit ExtRational(rep v) : v_(std::move(v)) {}

  static ExtRational infinity() {
    ExtRational x;
    x.inf_ = true;
    return x;
  }

  // Accepts "a", "a/b" (optionally signed) and "inf"/"INF"/"infinity".
  // Decimal notation is rejected: callers that want floats should not be
  // holding an ExtRational in the first place.
  static ExtRational parse(std::string_view text) {
    auto bad = [&] {
      return std::invalid_argument("ExtRational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    if (text == "inf" || text == "INF" || text == "infinity" || text == "Infinity")
      return infinity();
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    bool digits = false, slash = false;
    for (std::size_t j = i; j < text.size(); ++j) {
      if (text[j] >= '0' && text[j] <= '9') {
        digits = true;
      } else if (text[j] == '/' && !slash && digits && j + 1 < text.size()) {
        slash = true;
        digits = false;
      } else {
        throw bad();
      }
    }
    if (!digits) throw bad();
    ExtRational out;
    out.v_ = rep(std::string(text));
    return out;
  }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  int sign() const {
    if (inf_) return 1;
    return v_ == 0 ? 0 : (v_ < 0 ? -1 : 1);
  }

  // Finite accessor; throws on infinity so callers cannot silently read junk.
  const rep& value() const {
    if (inf_) throw std::domain_error("ExtRational: value() on infinity");
    return v_;
  }

  double to_double() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    return v_.convert_to<double>();
  }

  std::string str() const {
    if (inf_) return "inf";
    return v_.str();
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRational(a.v_ + b.v_);
  }
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b) {
    if (b.inf_) throw std::domain_error("ExtRational: subtraction of infinity");
    if (a.inf_) return infinity();
    return ExtRational(a.v_ - b.v_);
  }
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) {
      const ExtRational& fin = a.inf_ ? b : a;
      if (fin.inf_ || fin.v_ > 0) return infinity();
      throw std::domain_error(fin.v_ == 0 ? "ExtRational: infinity * 0"
                                          : "ExtRational: infinity * negative");
    }
    return ExtRational(a.v_ * b.v_);
  }
  friend ExtRational operator/(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ && b.inf_) throw std::domain_error("ExtRational: infinity / infinity");
    if (b.inf_) return ExtRational(0);
    if (b.v_ == 0) throw std::domain_error("ExtRational: division by zero");
    if (a.inf_) {
      if (b.v_ > 0) return infinity();
      throw std::domain_error("ExtRational: infinity / negative");
    }
    return ExtRational(a.v_ / b.v_);
  }
  ExtRational operator-() const {
    if (inf_) throw std::domain_error("ExtRational: negation of infinity");
    return ExtRational(rep(-v_));
  }
  ExtRational& operator+=(const ExtRational& b) { return *this = *this + b; }
  ExtRational& operator-=(const ExtRational& b) { return *this = *this - b; }
  ExtRational& operator*=(const ExtRational& b) { return *this = *this * b; }
  ExtRational& operator/=(const ExtRational& b) { return *this = *this / b; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) {
      if (a.inf_ && b.inf_) return std::strong_ordering::equal;
      return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtRational& x) {
    return os << x.str();
  }

private:
  rep v_{};
  bool inf_ = false;
};

// 1/x with the two extended cases allowed: reciprocal(0) = INF,
// reciprocal(INF) = 0.  Negative inputs map to their (negative) reciprocal.
inline ExtRational reciprocal(const ExtRational& x) {
  if (x.is_infinite()) return ExtRational(0);
  if (x.is_zero()) return ExtRational::infinity();
  return ExtRational(1) / x;
}

// Hoelder conjugate p* = p/(p-1), with 1* = INF and INF* = 1.
// Requires p >= 1, the range where the dual exponent is meaningful.
inline ExtRational conjugate(const ExtRational& p) {
  if (p < ExtRational(1)) throw std::domain_error("conjugate: exponent must be >= 1");
  if (p.is_infinite()) return ExtRational(1);
  if (p == ExtRational(1)) return ExtRational::infinity();
  return p / (p - ExtRational(1));
}

inline ExtRational rat(long long num, long long den = 1) { return ExtRational(num, den); }

}  // namespace sumlab
