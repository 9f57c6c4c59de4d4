// Generalized Laguerre polynomials L_n^(a) with exact-rational coefficients.
#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"
#include "mp.hpp"

namespace lagzero::laguerre {

using mp::bits_t;
using mp::Complex;
using mp::Decimal;
using mp::Real;

inline bits_t default_precision(long n) { return std::max<bits_t>(256, 4 * n + 64); }

struct LaguerreSpec {
  long n = 1;
  Decimal alpha;
  bits_t precision_bits = 256;

  // -alpha/n, exact.
  mpq_class A_exact() const { return mpq_class(-alpha.rational() / n); }
  double A() const { return A_exact().get_d(); }
};

inline LaguerreSpec make_spec(long n, const Decimal& alpha, bits_t precision_bits = 0) {
  if (n < 1) throw DomainError("degree must be >= 1");
  if (precision_bits == 0) precision_bits = default_precision(n);
  if (precision_bits < 64) throw DomainError("precision_bits must be >= 64");
  return {n, alpha, precision_bits};
}

// Spec intended for the varying-parameter experiments: additionally requires A_n in (0,1).
inline LaguerreSpec make_experiment_spec(long n, const Decimal& alpha, bits_t precision_bits = 0) {
  LaguerreSpec s = make_spec(n, alpha, precision_bits);
  mpq_class A = s.A_exact();
  if (A <= 0 || A >= 1) throw DomainError("A_n = -alpha/n must lie in (0,1)");
  return s;
}

struct CoefficientList {
  std::vector<Real> coeffs;  // coeffs[k] multiplies z^k
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// Exact coefficients of L_n^(a)(z): binom(n+a, n-k) (-1)^k / k!.
inline std::vector<mpq_class> exact_coefficients(long n, const mpq_class& alpha) {
  std::vector<mpq_class> b(static_cast<std::size_t>(n) + 1);
  b[n] = 1;
  for (long k = n - 1; k >= 0; --k) b[k] = b[k + 1] * (alpha + (k + 1)) / (n - k);
  mpz_class fact = 1;
  for (long k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    b[k] /= fact;
    if (k % 2) b[k] = -b[k];
    b[k].canonicalize();
  }
  return b;
}

inline CoefficientList round_list(const std::vector<mpq_class>& q, bits_t bits) {
  CoefficientList out;
  out.coeffs.reserve(q.size());
  for (const auto& c : q) out.coeffs.emplace_back(c, bits);
  return out;
}

inline CoefficientList build_coefficients(const LaguerreSpec& spec) {
  if (spec.n < 1) throw DomainError("degree must be >= 1");
  return round_list(exact_coefficients(spec.n, spec.alpha.rational()), spec.precision_bits);
}

// Monic P(z) = (n!/(-s)^n) L_n^(a)(s z); its zeros are those of L_n^(a)(s z).
inline CoefficientList monic_scaled(const LaguerreSpec& spec, long scale) {
  long n = spec.n;
  auto c = exact_coefficients(n, spec.alpha.rational());
  mpz_class fact = 1;
  for (long k = 2; k <= n; ++k) fact *= k;
  mpz_class s = scale;
  mpz_class spow = 1;  // scale^(n-k), built from k = n downwards
  for (long k = n; k >= 0; --k) {
    c[k] = c[k] * fact / spow;
    if (n % 2) c[k] = -c[k];
    c[k].canonicalize();
    spow *= s;
  }
  return round_list(c, spec.precision_bits);
}

inline CoefficientList monic_rescaled(const LaguerreSpec& spec) { return monic_scaled(spec, spec.n); }

inline Complex horner(const CoefficientList& cl, const Complex& z) {
  bits_t bits = std::max(cl.coeffs.back().prec(), z.prec());
  Complex acc(bits), t(bits);
  Complex zz(Real(z.re, bits), Real(z.im, bits));
  for (auto k = cl.coeffs.size(); k-- > 0;) mp::horner_step(acc, zz, cl.coeffs[k], t);
  return acc;
}

inline Complex eval_laguerre(const LaguerreSpec& spec, const Complex& z) {
  return horner(build_coefficients(spec), z);
}
inline Complex eval_laguerre(const LaguerreSpec& spec, std::complex<double> z) {
  return eval_laguerre(spec, Complex(z, spec.precision_bits));
}

struct IntegerReduction {
  long multiplicity;
  LaguerreSpec reduced;  // degree n+alpha, parameter -alpha; degree 0 means all zeros at the origin
};

// L_n^(a)(z) = ((n+a)!/n!) (-z)^(-a) L_{n+a}^(-a)(z) for integer a in [-n, -1].
inline IntegerReduction integer_reduction(long n, const Decimal& alpha, bits_t precision_bits = 0) {
  if (!alpha.is_integer()) throw DomainError("integer_reduction needs integer alpha");
  mpz_class a = alpha.floor();
  if (a < -n || a > -1) throw DomainError("integer_reduction needs -n <= alpha <= -1");
  long k = -a.get_si();
  if (precision_bits == 0) precision_bits = default_precision(n);
  return {k, LaguerreSpec{n - k, Decimal(k), precision_bits}};
}

}  // namespace lagzero::laguerre
