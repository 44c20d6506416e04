#pragma once

// Exact rational arithmetic on top of GMP. Every symbolic computation in the
// library runs on Rational; no floating point enters until the numeric
// evaluators.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace altharm {

using Integer = mpz_class;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("rational division by zero") {}
};

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// Always-reduced rational with positive denominator; canonical zero is 0/1.
// Immutable in spirit: all operators return fresh values, so finished values
// are safe to share across threads.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(static_cast<signed long>(n)) {}
  Rational(int n) : q_(n) {}
  explicit Rational(const Integer& n) : q_(n) {}

  Rational(const Integer& num, const Integer& den) : q_(num, den) {
    if (den == 0) throw DivisionByZero();
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // "num/den", den omitted when 1; e.g. "-3/2", "1", "0".
  std::string str() const {
    if (denominator() == 1) return numerator().get_str();
    return numerator().get_str() + "/" + denominator().get_str();
  }

  // Decimal rendering for reports; exact rounding of num/den to `digits`
  // places after the decimal point.
  std::string decimal_str(int digits = 12) const {
    if (digits < 0) digits = 0;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer num = numerator() * scale;
    Integer rounded, rem;
    // round half away from zero
    mpz_tdiv_qr(rounded.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), denominator().get_mpz_t());
    Integer twice = ::abs(rem) * 2;
    if (twice >= denominator()) rounded += sign() < 0 ? -1 : 1;
    bool neg = sgn(rounded) < 0;
    std::string s = Integer(::abs(rounded)).get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
  }

  double to_double() const { return q_.get_d(); }

  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
      Integer num{std::string(text.substr(0, slash))};
      Integer den{std::string(text.substr(slash + 1))};
      return Rational(num, den);
    } catch (const DivisionByZero&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("cannot parse rational: " + std::string(text));
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

// C(n,k); 0 when k < 0 or k > n.
inline Integer binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return Integer(0);
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// b^e for integer e; negative e inverts (throws on base 0).
inline Rational rational_pow(long long base, long e) {
  Integer b(static_cast<long>(base));
  if (e >= 0) return Rational(int_pow(b, static_cast<unsigned long>(e)));
  if (base == 0) throw DivisionByZero();
  return Rational(Integer(1), int_pow(b, static_cast<unsigned long>(-e)));
}

}  // namespace altharm
