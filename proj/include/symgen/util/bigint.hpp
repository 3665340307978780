#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace symgen {

// Arbitrary-precision signed integer, sign-magnitude over base-2^32 limbs.
// Small and boring on purpose: every gold computation in the suite runs on
// exact integers/rationals, so overflow must be impossible by construction.
class BigInt {
public:
  BigInt() = default;

  BigInt(int64_t v) {  // NOLINT: implicit by design
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    uint64_t m = v < 0 ? (~static_cast<uint64_t>(v) + 1) : static_cast<uint64_t>(v);
    limbs_.push_back(static_cast<uint32_t>(m));
    if (m >> 32) limbs_.push_back(static_cast<uint32_t>(m >> 32));
  }

  static BigInt from_u64(uint64_t m) {
    BigInt r;
    if (m == 0) return r;
    r.sign_ = 1;
    r.limbs_.push_back(static_cast<uint32_t>(m));
    if (m >> 32) r.limbs_.push_back(static_cast<uint32_t>(m >> 32));
    return r;
  }

  static BigInt parse(const std::string& s) {
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r = r.mul_small(10);
      r = add_mag(r, BigInt(s[i] - '0'));
    }
    if (!r.is_zero()) r.sign_ = sign;
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
      BigInt r = add_mag(a, b);
      r.sign_ = a.sign_;
      return r;
    }
    int c = cmp_mag(a, b);
    if (c == 0) return BigInt();
    BigInt r = c > 0 ? sub_mag(a, b) : sub_mag(b, a);
    r.sign_ = c > 0 ? a.sign_ : b.sign_;
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] = static_cast<uint32_t>(carry);
    }
    r.trim();
    r.sign_ = a.sign_ == b.sign_ ? 1 : -1;
    return r;
  }

  // Truncated division (C semantics): quotient rounds toward zero,
  // remainder has the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a, b);
    if (c < 0) {
      q = BigInt();
      r = a;
      return;
    }
    divmod_mag(a, b, q, r);
    if (!q.is_zero()) q.sign_ = a.sign_ == b.sign_ ? 1 : -1;
    if (!r.is_zero()) r.sign_ = a.sign_;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  // Comparison: -1, 0, 1.
  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a, b);
    return a.sign_ >= 0 ? c : -c;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  static BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = b;
      b = r;
    }
    return a;
  }

  BigInt pow(uint64_t e) const {
    BigInt base = *this, acc(1);
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool fits_i64() const {
    if (limbs_.size() > 2) return false;
    uint64_t m = mag_u64();
    if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
    return m <= 0x8000000000000000ULL;
  }

  int64_t to_i64() const {
    if (!fits_i64()) throw std::overflow_error("BigInt: does not fit int64");
    uint64_t m = mag_u64();
    return sign_ < 0 ? -static_cast<int64_t>(m - 1) - 1 : static_cast<int64_t>(m);
  }

  double to_double() const {
    double m = 0;
    for (size_t i = limbs_.size(); i-- > 0;) m = m * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -m : m;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> chunks;  // base 10^9, little-endian
    BigInt t = abs();
    const BigInt billion(1000000000);
    while (!t.is_zero()) {
      BigInt q, r;
      divmod(t, billion, q, r);
      chunks.push_back(r.is_zero() ? 0u : r.limbs_[0]);
      t = q;
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out += std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
      std::string part = std::to_string(chunks[i]);
      out.append(9 - part.size(), '0');
      out += part;
    }
    return out;
  }

  size_t limb_count() const { return limbs_.size(); }

private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
  }

  uint64_t mag_u64() const {
    uint64_t m = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() > 1) m |= static_cast<uint64_t>(limbs_[1]) << 32;
    return m;
  }

  BigInt mul_small(uint32_t f) const {
    if (is_zero() || f == 0) return BigInt();
    BigInt r;
    r.sign_ = sign_;
    r.limbs_.reserve(limbs_.size() + 1);
    uint64_t carry = 0;
    for (uint32_t limb : limbs_) {
      uint64_t cur = static_cast<uint64_t>(limb) * f + carry;
      r.limbs_.push_back(static_cast<uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
    return r;
  }

  static int cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
  }

  static BigInt add_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    const auto &x = a.limbs_, &y = b.limbs_;
    size_t n = std::max(x.size(), y.size());
    r.limbs_.reserve(n + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t cur = carry;
      if (i < x.size()) cur += x[i];
      if (i < y.size()) cur += y[i];
      r.limbs_.push_back(static_cast<uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
    r.sign_ = 1;
    r.trim();
    return r;
  }

  // Requires |a| >= |b|.
  static BigInt sub_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.limbs_.reserve(a.limbs_.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      int64_t cur = static_cast<int64_t>(a.limbs_[i]) - borrow -
                    (i < b.limbs_.size() ? b.limbs_[i] : 0);
      borrow = cur < 0;
      if (cur < 0) cur += (1LL << 32);
      r.limbs_.push_back(static_cast<uint32_t>(cur));
    }
    r.sign_ = 1;
    r.trim();
    return r;
  }

  // Magnitude long division, |a| >= |b| > 0. Knuth D with 32-bit limbs.
  static void divmod_mag(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.limbs_.size() == 1) {
      uint32_t d = b.limbs_[0];
      q.limbs_.assign(a.limbs_.size(), 0);
      uint64_t rem = 0;
      for (size_t i = a.limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a.limbs_[i];
        q.limbs_[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
      }
      q.sign_ = 1;
      q.trim();
      r = from_u64(rem);
      return;
    }

    // Normalize so the divisor's top limb has its high bit set.
    int shift = 0;
    for (uint32_t top = b.limbs_.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    std::vector<uint32_t> u = shl(a.limbs_, shift);
    std::vector<uint32_t> v = shl(b.limbs_, shift);
    u.push_back(0);
    const size_t n = v.size(), m = u.size() - n - (u.back() == 0 ? 0 : 0);
    // Ensure u has exactly a.limbs_.size()+1 entries after shift.
    while (u.size() < a.limbs_.size() + 1) u.push_back(0);

    size_t qlen = u.size() - n;
    std::vector<uint32_t> quot(qlen, 0);
    (void)m;
    for (size_t j = qlen; j-- > 0;) {
      uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
      uint64_t qhat = num / v[n - 1];
      uint64_t rhat = num % v[n - 1];
      while (qhat >= (1ULL << 32) ||
             qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
        --qhat;
        rhat += v[n - 1];
        if (rhat >= (1ULL << 32)) break;
      }
      // Multiply-subtract qhat*v from u[j..j+n].
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t p = qhat * v[i] + carry;
        carry = p >> 32;
        int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffu) - borrow;
        borrow = t < 0;
        if (t < 0) t += (1LL << 32);
        u[i + j] = static_cast<uint32_t>(t);
      }
      int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
      if (t < 0) {
        // qhat was one too large: add back.
        --qhat;
        uint64_t c2 = 0;
        for (size_t i = 0; i < n; ++i) {
          uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
          u[i + j] = static_cast<uint32_t>(s);
          c2 = s >> 32;
        }
        t += static_cast<int64_t>(c2);
      }
      u[j + n] = static_cast<uint32_t>(t);
      quot[j] = static_cast<uint32_t>(qhat);
    }

    q.limbs_ = std::move(quot);
    q.sign_ = 1;
    q.trim();
    std::vector<uint32_t> rem(u.begin(), u.begin() + n);
    r.limbs_ = shr(rem, shift);
    r.sign_ = 1;
    r.trim();
  }

  static std::vector<uint32_t> shl(const std::vector<uint32_t>& x, int bits) {
    std::vector<uint32_t> out(x.size() + 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
      out[i] |= bits ? (x[i] << bits) : x[i];
      if (bits) out[i + 1] = x[i] >> (32 - bits);
    }
    if (out.back() == 0) out.pop_back();
    return out;
  }

  static std::vector<uint32_t> shr(const std::vector<uint32_t>& x, int bits) {
    if (!bits) return x;
    std::vector<uint32_t> out(x.size(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
      out[i] = x[i] >> bits;
      if (i + 1 < x.size()) out[i] |= x[i + 1] << (32 - bits);
    }
    return out;
  }

  int sign_ = 0;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros
};

}  // namespace symgen
