// Arbitrary-precision scalars: an RAII MPFR real with per-object precision,
// a complex pair built on it, and an exact decimal type backed by GMP rationals.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace lagzero::mp {

using bits_t = mpfr_prec_t;

class Real {
 public:
  explicit Real(bits_t bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, bits_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, bits_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(const mpq_class& q, bits_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const mpz_class& z, bits_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(const Real& o, bits_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  // Keeps this object's precision.
  void assign(const Real& o) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  void assign(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }

  bits_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Returns mantissa in [0.5,1) and binary exponent; safe for values beyond double range.
  double to_double_exp(long& e) const { return mpfr_get_d_2exp(&e, v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  std::string to_string(int digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

 private:
  template <class F>
  static Real binop(const Real& a, const Real& b, F f) {
    Real r(std::max(a.prec(), b.prec()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

namespace detail {
template <class F>
Real unary(const Real& x, F f) {
  Real r(x.prec());
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real sqrt(const Real& x) { return detail::unary(x, mpfr_sqrt); }
inline Real log(const Real& x) { return detail::unary(x, mpfr_log); }
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real sin(const Real& x) { return detail::unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::unary(x, mpfr_cos); }
inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }

inline Real pi(bits_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.prec(), x.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real pow_si(const Real& x, long k) {
  Real r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}
inline Real root_ui(const Real& x, unsigned long k) {
  Real r(x.prec());
  mpfr_rootn_ui(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}
// log(n!) exactly rounded.
inline Real lgamma_int(unsigned long n, bits_t bits) {
  Real r(bits), x(static_cast<long>(n) + 1, bits);
  int sgn = 0;
  mpfr_lgamma(r.raw(), &sgn, x.raw(), MPFR_RNDN);
  return r;
}

class Complex {
 public:
  explicit Complex(bits_t bits = 64) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(std::complex<double> z, bits_t bits) : re(z.real(), bits), im(z.imag(), bits) {}

  Real re, im;

  bits_t prec() const { return std::max(re.prec(), im.prec()); }
  std::complex<double> to_cdouble() const { return {re.to_double(), im.to_double()}; }
  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return hypot(re, im); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Complex r(std::max(a.prec(), b.prec()));
    mpfr_fmms(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    return r;
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm();
    Complex r(std::max(a.prec(), b.prec()));
    mpfr_fmma(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmms(r.im.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    r.re /= d;
    r.im /= d;
    return r;
  }
};

// In-place kernels for hot loops; all operands are expected to share one precision.
inline void mul_into(Complex& out, const Complex& a, const Complex& b) {
  mpfr_fmms(out.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmma(out.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
}
// acc <- acc*z + c with scratch t.
inline void horner_step(Complex& acc, const Complex& z, const Real& c, Complex& t) {
  mul_into(t, acc, z);
  mpfr_add(acc.re.raw(), t.re.raw(), c.raw(), MPFR_RNDN);
  mpfr_set(acc.im.raw(), t.im.raw(), MPFR_RNDN);
}
inline void horner_step(Complex& acc, const Complex& z, const Complex& c, Complex& t) {
  mul_into(t, acc, z);
  mpfr_add(acc.re.raw(), t.re.raw(), c.re.raw(), MPFR_RNDN);
  mpfr_add(acc.im.raw(), t.im.raw(), c.im.raw(), MPFR_RNDN);
}
// out <- 1/(a-b), using scratch d.
inline void inv_diff_into(Complex& out, const Complex& a, const Complex& b, Real& d) {
  mpfr_sub(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_sub(out.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmma(d.raw(), out.re.raw(), out.re.raw(), out.im.raw(), out.im.raw(), MPFR_RNDN);
  mpfr_div(out.re.raw(), out.re.raw(), d.raw(), MPFR_RNDN);
  mpfr_div(out.im.raw(), out.im.raw(), d.raw(), MPFR_RNDN);
  mpfr_neg(out.im.raw(), out.im.raw(), MPFR_RNDN);
}

// Exact decimal number held as a GMP rational; parsed from text, never through binary floats.
class Decimal {
 public:
  Decimal() = default;
  explicit Decimal(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Decimal(long k) : q_(k) {}

  static Decimal parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '_') s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty decimal");
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    long frac = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
      char c = s[i];
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        any = true;
        if (seen_dot) ++frac;
      } else {
        throw std::invalid_argument("bad decimal: " + text);
      }
    }
    if (!any) throw std::invalid_argument("bad decimal: " + text);
    long ex = 0;
    if (i < s.size()) {
      std::string e = s.substr(i + 1);
      if (e.empty()) throw std::invalid_argument("bad decimal exponent: " + text);
      std::size_t used = 0;
      ex = std::stol(e, &used);
      if (used != e.size()) throw std::invalid_argument("bad decimal exponent: " + text);
    }
    mpz_class num(digits, 10);
    long p = ex - frac;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
    mpq_class q = p >= 0 ? mpq_class(num * ten_pow) : mpq_class(num, ten_pow);
    q.canonicalize();
    if (neg) q = -q;
    return Decimal(q);
  }

  const mpq_class& rational() const { return q_; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  Real to_real(bits_t bits) const { return Real(q_, bits); }

  mpz_class floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return f;
  }
  // Nearest integer, ties toward +infinity.
  mpz_class round() const {
    mpq_class h = q_ + mpq_class(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return f;
  }
  // Exact |x - nearest integer|.
  Decimal dist_to_integers() const {
    mpq_class d = q_ - mpq_class(round());
    return Decimal(abs(d));
  }

  // Exact decimal expansion when the denominator is 2^a 5^b, otherwise `digits` significant digits.
  std::string to_string(int digits = 40) const {
    mpz_class den = q_.get_den();
    long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den == 1) {
      long k = std::max(twos, fives);
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(k));
      mpq_class scaled = q_ * scale;
      mpz_class n = scaled.get_num();
      bool neg = n < 0;
      std::string s = mpz_class(abs(n)).get_str();
      if (k > 0) {
        if (static_cast<long>(s.size()) <= k) s.insert(0, static_cast<std::size_t>(k) - s.size() + 1, '0');
        s.insert(s.size() - static_cast<std::size_t>(k), ".");
      }
      return neg ? "-" + s : s;
    }
    Real r(q_, static_cast<bits_t>(digits * 4 + 64));
    return r.to_string(digits);
  }

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.q_ == b.q_; }
  friend Decimal operator-(const Decimal& a) { return Decimal(mpq_class(-a.q_)); }

 private:
  mpq_class q_;
};

}  // namespace lagzero::mp
