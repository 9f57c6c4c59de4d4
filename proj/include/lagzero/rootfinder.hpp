// Simultaneous Aberth-Ehrlich iteration for all zeros of a monic polynomial, with residual
// certificates and seeds taken from the predicted limit set.
#pragma once

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "contour.hpp"
#include "errors.hpp"
#include "laguerre.hpp"
#include "measure.hpp"
#include "mp.hpp"

namespace lagzero::roots {

using laguerre::CoefficientList;
using mp::bits_t;
using mp::Complex;
using mp::Real;
using cd = std::complex<double>;

struct ZeroSet {
  std::vector<Complex> zeros;
  std::vector<Real> residuals;  // |P(z)| / max(1,|z|)^n
  std::vector<bool> suspect;    // set by certify
  long origin_multiplicity = 0;
  bits_t precision_bits = 0;
  double threshold = 0;         // every residual is <= this
  long iterations = 0;
  std::size_t size() const { return zeros.size(); }
};

struct FindOptions {
  long max_iterations = 200;
};

namespace detail {

inline Real scaled_residual(const CoefficientList& cl, const Complex& z) {
  Complex p = laguerre::horner(cl, z);
  Real a = p.abs();
  Real m = z.abs();
  Real one(1L, m.prec());
  if (m > one) a /= mp::pow_si(m, cl.degree());
  return a;
}

// Real parts closer than eps count as equal, so a conjugate pair always sorts with Im < 0 first.
inline bool lex_less(const Complex& a, const Complex& b, const Real& eps) {
  Real d = a.re - b.re;
  if (mp::abs(d) > eps) return d.sign() < 0;
  return a.im < b.im;
}

}  // namespace detail

// Fallback seeds: n points on a circle bounded by both the Cauchy bound 1+max|c_k| and the
// Fujiwara bound, rotated off the real axis so conjugate symmetry does not trap the iteration.
inline std::vector<cd> circle_seeds(const CoefficientList& cl) {
  long n = cl.degree();
  double cauchy = 1, fuji = 0;
  for (long k = 0; k < n; ++k) {
    long e = 0;
    double mant = cl.coeffs[k].to_double_exp(e);
    double logabs = mant == 0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(mant)) + e * std::log(2.0);
    cauchy = std::max(cauchy, 1 + std::exp(std::min(logabs, 700.0)));
    double t = (k == 0 ? logabs - std::log(2.0) : logabs) / static_cast<double>(n - k);
    fuji = std::max(fuji, std::exp(std::min(t, 700.0)));
  }
  double rad = std::min(cauchy, 2 * fuji);
  if (!(rad > 0)) rad = 1;
  std::vector<cd> out;
  for (long k = 0; k < n; ++k) out.push_back(std::polar(rad, 2 * landscape::kPi * (k + 0.25) / n + 0.4));
  return out;
}

// Aberth-Ehrlich with a Jacobi sweep; a zero is frozen once its correction drops below tol.
inline ZeroSet find_zeros(const CoefficientList& coeffs, bits_t precision_bits, double tol,
                          std::vector<cd> seeds = {}, FindOptions opts = {}) {
  long n = coeffs.degree();
  if (n < 0) throw DomainError("empty coefficient list");
  Real lead(coeffs.coeffs.back(), precision_bits);
  if (compare(lead, Real(1L, precision_bits)) != 0) throw DomainError("find_zeros needs a monic polynomial");
  ZeroSet zs;
  zs.precision_bits = precision_bits;
  zs.threshold = tol;
  if (n == 0) return zs;

  CoefficientList cl;
  for (const auto& c : coeffs.coeffs) cl.coeffs.emplace_back(c, precision_bits);
  if (seeds.size() != static_cast<std::size_t>(n)) seeds = circle_seeds(cl);

  std::vector<Complex> z, znew;
  for (cd s : seeds) z.emplace_back(s, precision_bits);
  znew = z;
  std::vector<bool> frozen(n, false);
  Real tolr(tol, precision_bits), one(1L, precision_bits), d(precision_bits);
  Complex p(precision_bits), dp(precision_bits), t(precision_bits), inv(precision_bits), S(precision_bits);
  Complex N(precision_bits), den(precision_bits), w(precision_bits);

  long it = 0;
  bool done = false;
  for (; it < opts.max_iterations && !done; ++it) {
    done = true;
    for (long i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      // P and P' by Horner.
      p.re.assign(cl.coeffs[n]);
      p.im.assign(0.0);
      dp.re.assign(0.0);
      dp.im.assign(0.0);
      for (long k = n - 1; k >= 0; --k) {
        mp::horner_step(dp, z[i], p, t);
        mp::horner_step(p, z[i], cl.coeffs[k], t);
      }
      if (p.re.is_zero() && p.im.is_zero()) {
        frozen[i] = true;
        continue;
      }
      N = p / dp;
      S.re.assign(0.0);
      S.im.assign(0.0);
      for (long j = 0; j < n; ++j) {
        if (j == i) continue;
        mp::inv_diff_into(inv, z[i], z[j], d);
        S.re += inv.re;
        S.im += inv.im;
      }
      // w = N / (1 - N S)
      mp::mul_into(den, N, S);
      den.re = one - den.re;
      den.im = -den.im;
      w = N / den;
      znew[i] = z[i] - w;
      Real scale = z[i].abs();
      if (scale < one) scale = one;
      if (w.abs() <= tolr * scale) frozen[i] = true;
      else done = false;
    }
    for (long i = 0; i < n; ++i) z[i] = znew[i];
  }

  zs.iterations = it;
  double worst = 0;
  bool ok = true;
  for (long i = 0; i < n; ++i) {
    Real res = detail::scaled_residual(cl, z[i]);
    if (!(res <= tolr)) ok = false;
    worst = std::max(worst, res.to_double());
    zs.residuals.push_back(res);
  }
  if (!done || !ok) throw NonConvergence("Aberth iteration did not converge", it, worst);

  std::vector<std::size_t> idx(n);
  for (long i = 0; i < n; ++i) idx[i] = i;
  Real eps(16 * tol, precision_bits);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return detail::lex_less(z[a], z[b], eps); });
  ZeroSet out = zs;
  out.residuals.clear();
  for (auto i : idx) {
    out.zeros.push_back(z[i]);
    out.residuals.push_back(zs.residuals[i]);
  }
  out.suspect.assign(n, false);
  return out;
}

// Re-evaluates residuals at doubled precision; a zero whose new residual exceeds both 4x its
// recorded residual and the set's threshold is flagged.
inline ZeroSet certify(const CoefficientList& coeffs, const ZeroSet& zs) {
  bits_t hi = 2 * std::max<bits_t>(zs.precision_bits, 64);
  CoefficientList cl;
  for (const auto& c : coeffs.coeffs) cl.coeffs.emplace_back(c, hi);
  ZeroSet out = zs;
  out.suspect.assign(zs.size(), false);
  Real four(4L, hi), thr(zs.threshold, hi);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    Complex z(Real(zs.zeros[i].re, hi), Real(zs.zeros[i].im, hi));
    Real r = detail::scaled_residual(cl, z);
    Real orig(zs.residuals.size() > i ? zs.residuals[i] : Real(0L, hi), hi);
    out.suspect[i] = r > four * orig && r > thr;
    out.residuals[i] = r;
  }
  return out;
}

inline bool any_suspect(const ZeroSet& zs) {
  return std::any_of(zs.suspect.begin(), zs.suspect.end(), [](bool b) { return b; });
}

namespace detail {

// x in [beta1,beta2] with cdf_interval(x) = q.
inline double mp_quantile(const landscape::PotentialContext& c, double q) {
  double total = measure::interval_mass(c);
  auto f = [&](double th) {
    double x = c.beta1 + (c.beta2 - c.beta1) * std::sin(th) * std::sin(th);
    return measure::cdf_interval(c, x) - q * total;
  };
  boost::math::tools::eps_tolerance<double> tol(40);
  std::uintmax_t iters = 100;
  auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, landscape::kPi / 2, f(0.0), f(landscape::kPi / 2), tol, iters);
  double th = 0.5 * (a + b);
  return c.beta1 + (c.beta2 - c.beta1) * std::sin(th) * std::sin(th);
}

// Point on the polyline at normalized nu position q.
inline cd loop_quantile(const contour::ContourPolyline& g, const std::vector<double>& cum, double q) {
  double target = q * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cum.begin() - 1, 0), g.size() - 1);
  double seg = cum[i + 1] - cum[i];
  double t = seg > 0 ? (target - cum[i]) / seg : 0;
  return g.points[i] + t * (g.points[(i + 1) % g.size()] - g.points[i]);
}

}  // namespace detail

// m seeds at Marchenko-Pastur quantiles, nudged off the axis alternately.
inline std::vector<cd> interval_seeds(long m, const landscape::PotentialContext& c) {
  std::vector<cd> out;
  for (long j = 0; j < m; ++j) {
    double x = c.beta2 > c.beta1 ? detail::mp_quantile(c, (j + 0.5) / m) : c.beta1;
    double off = 1e-3 * (j % 2 ? -1 : 1) * (1 + 0.1 * j);
    out.emplace_back(x, off);
  }
  return out;
}

// ceil(nA) seeds on the predicted loop (nu quantiles) and the rest at Marchenko-Pastur quantiles.
inline std::vector<cd> initial_guesses(long n, const landscape::PotentialContext& c, double r_hat,
                                       const contour::ContourPolyline* gamma = nullptr) {
  long k = std::min<long>(n, static_cast<long>(std::ceil(n * c.A - 1e-12)));
  long m = n - k;
  std::vector<cd> out;
  out.reserve(n);
  if (k > 0) {
    if (std::isinf(r_hat)) {
      for (long j = 0; j < k; ++j) out.push_back(std::polar(0.05, 2 * landscape::kPi * (j + 0.37) / k));
    } else {
      std::optional<measure::MeasureSpec> own;
      if (!gamma) {
        own = measure::make_measure(c, r_hat);
        gamma = &*own->gamma;
      }
      measure::MeasureSpec ms{c, r_hat, *gamma};
      auto cum = measure::loop_cumulative(ms);
      for (long j = 0; j < k; ++j) out.push_back(detail::loop_quantile(*gamma, cum, (j + 0.37) / k));
    }
  }
  auto rest = interval_seeds(m, c);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace lagzero::roots
