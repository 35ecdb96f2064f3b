#ifndef THREEWAVE_RATIONAL_HPP
#define THREEWAVE_RATIONAL_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace threewave {

struct exact_overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Exact rational on 64-bit words with 128-bit intermediates; throws on
/// overflow instead of wrapping. Plenty for the polynomial identities here.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT (implicit by design)
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }

  Rational operator-() const { return Rational(-num_, den_, tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n =
        __int128(a.num_) * b.den_ + __int128(b.num_) * a.den_;
    const __int128 d = __int128(a.den_) * b.den_;
    return make(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct tag {};
  Rational(long long n, long long d, tag) : num_(n), den_(d) {}

  static Rational make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw exact_overflow_error("Rational: 64-bit overflow");
    return Rational(static_cast<long long>(n), static_cast<long long>(d), tag{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  void normalize() {
    *this = make(num_, den_);
  }

  long long num_ = 0;
  long long den_ = 1;
};

/// Exact element of the ring Q[sqrt(n) : n >= 1]: a finite sum of
/// q_r * sqrt(r) over square-free radicands r (r = 1 is the rational part).
/// Addition combines like radicands; multiplication reduces products of
/// radicals by extracting square factors.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const Rational& q) {  // NOLINT (implicit by design)
    if (!q.is_zero()) terms_[1] = q;
  }

  /// q * sqrt(r) with r >= 0 an integer (not necessarily square-free).
  static RadicalSum radical(const Rational& q, long long r) {
    if (r < 0) throw std::domain_error("RadicalSum: negative radicand");
    RadicalSum out;
    if (q.is_zero() || r == 0) return out;
    auto [sq, core] = split_square(r);
    const Rational coeff = q * Rational(sq);
    if (!coeff.is_zero()) out.terms_[core] = coeff;
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  Rational rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  double to_double() const;

  friend RadicalSum operator+(const RadicalSum& a, const RadicalSum& b) {
    RadicalSum out = a;
    for (const auto& [r, q] : b.terms_) out.add_term(q, r);
    return out;
  }
  friend RadicalSum operator-(const RadicalSum& a, const RadicalSum& b) {
    RadicalSum out = a;
    for (const auto& [r, q] : b.terms_) out.add_term(-q, r);
    return out;
  }
  RadicalSum operator-() const {
    RadicalSum out;
    for (const auto& [r, q] : terms_) out.terms_[r] = -q;
    return out;
  }
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);

  RadicalSum& operator+=(const RadicalSum& o) { return *this = *this + o; }
  RadicalSum& operator-=(const RadicalSum& o) { return *this = *this - o; }

  friend bool operator==(const RadicalSum& a, const RadicalSum& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  void add_term(const Rational& q, long long r) {
    auto it = terms_.find(r);
    if (it == terms_.end()) {
      if (!q.is_zero()) terms_[r] = q;
      return;
    }
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
  }

  // n = sq^2 * core with core square-free
  static std::pair<long long, long long> split_square(long long n);

  std::map<long long, Rational> terms_;  // square-free radicand -> coefficient
};

}  // namespace threewave

#endif
