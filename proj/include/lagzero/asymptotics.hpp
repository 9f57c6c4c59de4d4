// Strong asymptotics of the rescaled polynomials: outer formula, oscillatory formula on the
// interval and the nth-root limit, together with exact high-precision evaluation for comparison.
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "errors.hpp"
#include "gfunction.hpp"
#include "laguerre.hpp"
#include "measure.hpp"
#include "mp.hpp"

namespace lagzero::asymp {

using landscape::cd;
using landscape::kPi;
using landscape::PotentialContext;
using mp::bits_t;
using mp::Decimal;

enum class Regime { outer, oscillatory, nth_root };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::outer: return "outer";
    case Regime::oscillatory: return "oscillatory";
    case Regime::nth_root: return "nth_root";
  }
  return "?";
}

struct AsymptoticPrediction {
  cd value;                  // prediction, in units of exp(log_scale)
  Regime regime = Regime::outer;
  std::string claimed_error_order;
  double log_scale = 0;
};

// log of a multiprecision complex number: (log|w|, arg w).
inline cd log_mp(const mp::Complex& w) {
  if (w.re.is_zero() && w.im.is_zero()) return {-std::numeric_limits<double>::infinity(), 0};
  return {mp::log(w.abs()).to_double(), mp::atan2(w.im, w.re).to_double()};
}

// Monic P_n(z) = (-1)^n n!/n^n L_n^(alpha)(n z), evaluated exactly at the given precision.
inline mp::Complex monic_value(long n, const Decimal& alpha, cd z, bits_t bits = 0) {
  auto spec = laguerre::make_spec(n, alpha, bits);
  auto cl = laguerre::monic_rescaled(spec);
  return laguerre::horner(cl, mp::Complex(z, spec.precision_bits));
}

inline double interval_distance(const PotentialContext& c, cd z) {
  double x = std::clamp(z.real(), c.beta1, c.beta2);
  return std::abs(z - cd(x, 0));
}

// N11 = (a + 1/a)/2 with a = ((z-beta2)/(z-beta1))^(1/4), cut on [beta1,beta2], a -> 1 at infinity.
inline AsymptoticPrediction outer_ratio(const PotentialContext& c, long n, cd z) {
  (void)n;
  if (interval_distance(c, z) < 1e-6 || z == cd(0)) throw DomainError("outer_ratio too close to the support");
  cd a = std::pow(z - c.beta2, 0.25) / std::pow(z - c.beta1, 0.25);
  return {0.5 * (a + 1.0 / a), Regime::outer, "O(1/n)", 0};
}

// P_n(z) exp(-n g_n(z)) from exact evaluation, the quantity outer_ratio predicts.
inline cd outer_exact(long n, const Decimal& alpha, const measure::MeasureSpec& m0, cd z, bits_t bits = 0) {
  cd lp = log_mp(monic_value(n, alpha, z, bits));
  return std::exp(lp - static_cast<double>(n) * landscape::g_eval(m0, z));
}

inline double a_of(long n, const Decimal& alpha) { return (-alpha).to_double() / static_cast<double>(n); }

struct OscillatoryParts {
  double amplitude;  // sqrt(beta2-beta1) ((beta2-x)(x-beta1))^(-1/4)
  double phase;
  double log_scale;  // log(n^n/n!) + n Re g_n(x)
  int sign;          // (-1)^n
};

inline OscillatoryParts oscillatory_parts(long n, const PotentialContext& c, double ell_re, double x) {
  double w = c.beta2 - c.beta1;
  if (!(x >= c.beta1 + 0.1 * w && x <= c.beta2 - 0.1 * w)) throw DomainError("x outside the oscillatory window");
  double amp = std::sqrt(w) * std::pow((c.beta2 - x) * (x - c.beta1), -0.25);
  double phase = n * kPi * measure::cdf_from_beta2(c, x) + 0.5 * std::asin((2 * x - c.beta1 - c.beta2) / w);
  double re_g = 0.5 * (c.A * std::log(x) + x + ell_re);
  double nd = static_cast<double>(n);
  double ls = nd * std::log(nd) - std::lgamma(nd + 1) + nd * re_g;
  return {amp, phase, ls, n % 2 ? -1 : 1};
}

// Leading term for L_n^(alpha)(n x) on the interval (the O(1/n) sine term is dropped).
inline AsymptoticPrediction oscillatory_value(long n, const PotentialContext& c, double ell_re, double x) {
  auto p = oscillatory_parts(n, c, ell_re, x);
  return {cd(p.sign * p.amplitude * std::cos(p.phase), 0), Regime::oscillatory, "O(1/n)", p.log_scale};
}

inline AsymptoticPrediction oscillatory_value(long n, const Decimal& alpha, double x) {
  auto c = landscape::make_context(a_of(n, alpha));
  auto m0 = measure::make_measure(c, 0.0);
  double ell = landscape::ell_constant(m0).euler_lagrange();
  return oscillatory_value(n, c, ell, x);
}

// L_n^(alpha)(n x) / exp(log_scale), from exact evaluation.
inline double laguerre_scaled(long n, const Decimal& alpha, double x, double log_scale, bits_t bits = 0) {
  auto spec = laguerre::make_spec(n, alpha, bits);
  mp::Complex v = laguerre::eval_laguerre(spec, cd(n * x, 0));
  if (v.re.is_zero()) return 0;
  double l = mp::log(mp::abs(v.re)).to_double();
  return v.re.sign() * std::exp(l - log_scale);
}

// ((1/n) log|P_n(z)|, U_mu(z)).
inline std::pair<double, double> nth_root_exponent(long n, const Decimal& alpha, const measure::MeasureSpec& m, cd z,
                                                   bits_t bits = 0) {
  double emp = log_mp(monic_value(n, alpha, z, bits)).real() / static_cast<double>(n);
  return {emp, measure::log_potential(m, z)};
}

}  // namespace lagzero::asymp
