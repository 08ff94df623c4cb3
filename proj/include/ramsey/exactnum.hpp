// Exact arithmetic over Q and the real quadratic field Q(sqrt 5).
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ramsey/errors.hpp"

namespace ramsey {

using BigInt = mpz_class;

inline BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline BigInt ceil_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InputError("isqrt of negative integer");
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

inline BigInt parse_bigint(std::string_view text) {
  BigInt v;
  std::string s(text);
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError("not an integer: '" + s + "'");
  return v;
}

/// Reduced fraction with positive denominator. Every constructor and
/// operator canonicalizes, so equality is structural.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InputError("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit BigRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p", "p/q", with optional sign on p. Decimals are rejected.
  static BigRational parse(std::string_view text) {
    if (text.find_first_of(".eE") != std::string_view::npos) {
      throw InputError("'" + std::string(text) + "': decimals are not accepted, write a rational such as 21/100");
    }
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den <= 0) throw InputError("denominator must be positive: '" + std::string(text) + "'");
    return BigRational(parse_bigint(text.substr(0, slash)), den);
  }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  BigInt floor() const { return floor_div(q_.get_num(), q_.get_den()); }
  BigInt ceil() const { return ceil_div(q_.get_num(), q_.get_den()); }

  /// Always "p/q", including q = 1.
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }
  double to_double() const { return q_.get_d(); }

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.sign() == 0) throw DomainError("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline BigRational abs(const BigRational& r) { return r.sign() < 0 ? -r : r; }

/// Closed interval [lo, hi] with rational endpoints.
struct RatInterval {
  BigRational lo;
  BigRational hi;

  RatInterval() = default;
  RatInterval(BigRational l, BigRational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw InputError("interval with lo > hi: [" + lo.str() + ", " + hi.str() + "]");
  }

  BigRational length() const { return hi - lo; }
  BigRational midpoint() const { return (lo + hi) / BigRational(2); }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

/// a + b*sqrt(5) with rational a, b. Representation is unique because
/// sqrt(5) is irrational.
class Q5Number {
 public:
  Q5Number() = default;
  Q5Number(BigRational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Q5Number(int a) : a_(a) {}                     // NOLINT(google-explicit-constructor)
  Q5Number(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Q5Number sqrt5() { return {0, 1}; }
  static Q5Number phi() { return {BigRational(1, 2), BigRational(1, 2)}; }
  static Q5Number phi_bar() { return {BigRational(1, 2), BigRational(-1, 2)}; }

  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }
  bool is_rational() const { return b_.sign() == 0; }

  Q5Number conjugate() const { return {a_, -b_}; }
  /// a^2 - 5 b^2
  BigRational norm() const { return a_ * a_ - BigRational(5) * b_ * b_; }

  /// Nearest double. The working precision grows with the coefficients since
  /// a and b may nearly cancel.
  double approx() const {
    std::size_t bits = 128;
    for (const BigRational* c : {&a_, &b_}) {
      bits += mpz_sizeinbase(c->raw().get_num_mpz_t(), 2) + mpz_sizeinbase(c->raw().get_den_mpz_t(), 2);
    }
    const auto prec = static_cast<mp_bitcnt_t>(bits);
    mpf_class root(5, prec);
    root = sqrt(root);
    mpf_class value(a_.raw(), prec);
    value += mpf_class(b_.raw(), prec) * root;
    return value.get_d();
  }

  Q5Number operator-() const { return {-a_, -b_}; }
  Q5Number& operator+=(const Q5Number& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Q5Number& operator-=(const Q5Number& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Q5Number& operator*=(const Q5Number& o) {
    BigRational a = a_ * o.a_ + BigRational(5) * b_ * o.b_;
    BigRational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  /// 1/(a+b sqrt5) = (a - b sqrt5)/(a^2 - 5b^2); the norm vanishes only at 0.
  Q5Number& operator/=(const Q5Number& o) {
    BigRational n = o.norm();
    if (n.sign() == 0) throw DomainError("Q(sqrt5) division by zero");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend Q5Number operator+(Q5Number x, const Q5Number& y) { return x += y; }
  friend Q5Number operator-(Q5Number x, const Q5Number& y) { return x -= y; }
  friend Q5Number operator*(Q5Number x, const Q5Number& y) { return x *= y; }
  friend Q5Number operator/(Q5Number x, const Q5Number& y) { return x /= y; }

  friend bool operator==(const Q5Number&, const Q5Number&) = default;

  /// "a+b*sqrt5" with both parts as p/q.
  std::string str() const { return a_.str() + (b_.sign() < 0 ? "" : "+") + b_.str() + "*sqrt5"; }
  friend std::ostream& operator<<(std::ostream& os, const Q5Number& x) { return os << x.str(); }

  /// Accepts "a" (rational), "a,b" meaning a + b*sqrt5.
  static Q5Number parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) return {BigRational::parse(text)};
    return {BigRational::parse(text.substr(0, comma)), BigRational::parse(text.substr(comma + 1))};
  }

 private:
  BigRational a_;
  BigRational b_;
};

enum class Op { add, sub, mul, div };

inline Q5Number q5_arith(const Q5Number& x, const Q5Number& y, Op op) {
  switch (op) {
    case Op::add: return x + y;
    case Op::sub: return x - y;
    case Op::mul: return x * y;
    case Op::div: return x / y;
  }
  throw InternalError("unknown Q5 op");
}

/// Exact sign. If a and b do not have opposite signs the answer is
/// immediate; otherwise |a| vs sqrt5|b| is decided by a^2 vs 5b^2.
inline int q5_sign(const Q5Number& x) {
  int sa = x.a().sign();
  int sb = x.b().sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  BigRational a2 = x.a() * x.a();
  BigRational b2 = BigRational(5) * x.b() * x.b();
  if (a2 > b2) return sa;
  if (a2 < b2) return sb;
  throw InternalError("a^2 = 5b^2 with b != 0");
}

inline int compare(const Q5Number& x, const Q5Number& y) { return q5_sign(x - y); }

/// x scaled to integer coordinates: x = (a + b sqrt5) / q with q > 0.
struct Q5Integral {
  BigInt a;
  BigInt b;
  BigInt q;

  static Q5Integral from(const Q5Number& x) {
    Q5Integral out;
    out.q = lcm(x.a().den(), x.b().den());
    out.a = x.a().num() * (out.q / x.a().den());
    out.b = x.b().num() * (out.q / x.b().den());
    return out;
  }
};

/// Exact sign of a + b sqrt5 for integers, by the same rule as q5_sign.
inline int q5_sign(const BigInt& a, const BigInt& b) {
  int sa = sgn(a);
  int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  BigInt a2 = a * a;
  BigInt b2 = 5 * b * b;
  int c = cmp(a2, b2);
  if (c == 0) throw InternalError("a^2 = 5b^2 with b != 0");
  return c > 0 ? sa : sb;
}

namespace detail {

// floor(b sqrt5) is an integer square root, so
// floor((a + b sqrt5)/q) = floor((a + floor(b sqrt5))/q) exactly.
inline BigInt floor_seed(const Q5Integral& x) {
  BigInt s = isqrt(BigInt(5 * x.b * x.b));
  if (x.b < 0) s = -s - 1;
  return floor_div(BigInt(x.a + s), x.q);
}

// n <= x  iff  (a - n q) + b sqrt5 >= 0
inline bool at_least(const Q5Integral& x, const BigInt& n) { return q5_sign(BigInt(x.a - n * x.q), x.b) >= 0; }

inline bool is_floor(const Q5Integral& x, const BigInt& n) {
  return at_least(x, n) && !at_least(x, BigInt(n + 1));
}

}  // namespace detail

namespace detail {

// Confirms `seed` with two exact sign tests; otherwise widens a bracket
// around it geometrically and bisects exactly.
inline BigInt certify_floor(const Q5Integral& x, const BigInt& seed) {
  if (is_floor(x, seed)) return seed;
  BigInt width = 2;
  BigInt lo = seed - width;
  BigInt hi = seed + width;
  while (!at_least(x, lo)) {
    width *= 2;
    lo = seed - width;
  }
  while (at_least(x, hi)) {
    width *= 2;
    hi = seed + width;
  }
  // lo <= x < hi
  while (hi - lo > 1) {
    BigInt mid = floor_div(BigInt(lo + hi), 2);
    if (at_least(x, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace detail

/// The unique integer n with n <= x < n + 1.
inline BigInt q5_floor(const Q5Integral& x) {
  if (x.b == 0) return floor_div(x.a, x.q);
  return detail::certify_floor(x, detail::floor_seed(x));
}

inline BigInt q5_floor(const Q5Number& x) {
  if (x.is_rational()) return x.a().floor();
  return q5_floor(Q5Integral::from(x));
}

inline Q5Number frac(const Q5Number& x) { return x - Q5Number(BigRational(q5_floor(x))); }

inline BigRational frac(const BigRational& x) { return x - BigRational(x.floor()); }

/// min(frac(x), 1 - frac(x)), in [0, 1/2].
inline Q5Number dist_nearest_int(const Q5Number& x) {
  Q5Number f = frac(x);
  Q5Number g = Q5Number(1) - f;
  return q5_sign(f - g) <= 0 ? f : g;
}

// Binet-indexed Fibonacci numbers: f_0 = 0, f_1 = f_2 = 1.
inline BigInt fibonacci(unsigned long n) {
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), n);
  return f;
}

inline BigInt lucas(unsigned long n) {
  BigInt l;
  mpz_lucnum_ui(l.get_mpz_t(), n);
  return l;
}

/// x^n by repeated squaring.
inline Q5Number pow(Q5Number x, unsigned long n) {
  Q5Number result(1);
  while (n > 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

}  // namespace ramsey
