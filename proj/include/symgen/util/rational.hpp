#pragma once

#include <optional>
#include <string>

#include "symgen/util/bigint.hpp"

namespace symgen {

// Exact rational, always reduced, denominator > 0.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t v) : num_(v), den_(1) {}  // NOLINT
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational pow(int64_t e) const {
    if (e >= 0) return Rational(num_.pow(static_cast<uint64_t>(e)), den_.pow(static_cast<uint64_t>(e)));
    if (is_zero()) throw std::domain_error("Rational: 0 to negative power");
    return Rational(den_.pow(static_cast<uint64_t>(-e)), num_.pow(static_cast<uint64_t>(-e)));
  }

  static int cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  BigInt floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
    return q;
  }

  // Nearest integer, ties to even.
  BigInt round_half_even() const {
    BigInt f = floor();
    Rational frac = *this - Rational(f);
    int c = Rational::cmp(frac, Rational(BigInt(1), BigInt(2)));
    if (c < 0) return f;
    if (c > 0) return f + BigInt(1);
    return f.is_odd() ? f + BigInt(1) : f;
  }

  // Round to `places` decimal digits, ties to even.
  Rational round_to_places(int places) const {
    BigInt scale = BigInt(10).pow(static_cast<uint64_t>(places));
    Rational scaled = *this * Rational(scale);
    return Rational(scaled.round_half_even(), scale);
  }

  // True iff the decimal expansion terminates (denominator is 2^a * 5^b).
  bool terminating() const {
    BigInt d = den_;
    for (int p : {2, 5}) {
      BigInt pb(p);
      while (true) {
        BigInt q, r;
        BigInt::divmod(d, pb, q, r);
        if (!r.is_zero()) break;
        d = q;
      }
    }
    return d == BigInt(1);
  }

  // Exact decimal string for terminating rationals ("7.5", "-0.25", "56");
  // throws otherwise.
  std::string to_decimal_string() const {
    if (!terminating()) throw std::domain_error("Rational: non-terminating decimal");
    BigInt ipart = num_.abs() / den_;
    Rational frac = abs() - Rational(ipart);
    std::string out = sign() < 0 ? "-" : "";
    out += ipart.to_string();
    if (!frac.is_zero()) {
      std::string digits;
      Rational f = frac;
      while (!f.is_zero()) {
        f = f * Rational(10);
        BigInt d = f.floor();
        digits += d.to_string();
        f = f - Rational(d);
      }
      out += "." + digits;
    }
    return out;
  }

  // Decimal string rounded to `places` digits, trailing zeros kept.
  std::string to_decimal_string(int places) const {
    Rational r = round_to_places(places);
    BigInt scale = BigInt(10).pow(static_cast<uint64_t>(places));
    BigInt scaled = (r * Rational(scale)).floor();
    bool neg = scaled.sign() < 0;
    std::string digits = scaled.abs().to_string();
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    return out;
  }

  double to_double() const { return num_.to_double() / den_.to_double(); }

  // Parses "123", "-4.5", ".5", "3/4", "-7/2". Returns nullopt on anything else.
  static std::optional<Rational> parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        BigInt n = BigInt::parse(s.substr(0, slash));
        BigInt d = BigInt::parse(s.substr(slash + 1));
        if (d.is_zero()) return std::nullopt;
        return Rational(n, d);
      }
      int sign = 1;
      size_t i = 0;
      if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = -1;
        i = 1;
      }
      std::string ipart, fpart;
      auto dot = s.find('.', i);
      if (dot == std::string::npos) {
        ipart = s.substr(i);
      } else {
        ipart = s.substr(i, dot - i);
        fpart = s.substr(dot + 1);
      }
      if (ipart.empty() && fpart.empty()) return std::nullopt;
      for (const std::string& part : {ipart, fpart})
        for (char c : part)
          if (c < '0' || c > '9') return std::nullopt;
      BigInt n = ipart.empty() ? BigInt(0) : BigInt::parse(ipart);
      BigInt scale(1);
      if (!fpart.empty()) {
        scale = BigInt(10).pow(fpart.size());
        n = n * scale + BigInt::parse(fpart);
      }
      Rational r(n, scale);
      return sign < 0 ? -r : r;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::string to_fraction_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace symgen
