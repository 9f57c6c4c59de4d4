// The g-function g(z) = int log(z - s) dmu_0(s) and its Euler-Lagrange constant.
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "errors.hpp"
#include "landscape.hpp"
#include "measure.hpp"

namespace lagzero::landscape {

using measure::MeasureSpec;

// log w with arg in (-pi/2, 3pi/2]: continuous for w = z - s, z in the upper half plane outside the
// loop and s on the loop.
inline cd log_upper(cd w) {
  double a = std::arg(w);
  if (a <= -kPi / 2) a += 2 * kPi;
  return {std::log(std::abs(w)), a};
}

// log(1 + w) without cancellation for small w.
inline cd clog1p(cd w) {
  return {0.5 * std::log1p(2 * w.real() + std::norm(w)), std::atan2(w.imag(), 1 + w.real())};
}

namespace detail {

inline void check_g_domain(const MeasureSpec& m, cd z) {
  const auto& c = m.ctx;
  if (z == cd(0)) throw DomainError("g is singular at the origin");
  if (z.imag() == 0 && z.real() <= c.beta2) throw DomainError("point on the cut system of g");
  if (!m.atom()) {
    if (contour::point_in_loop(*m.gamma, z)) throw DomainError("point inside the loop (g is defined outside it)");
  }
}

// Loop part plus interval part, for Im z >= 0 outside the loop.
template <class LogF>
cd g_parts(const MeasureSpec& m, cd z, LogF logf, cd atom_value) {
  const auto& c = m.ctx;
  cd loop = atom_value;
  if (!m.atom()) {
    const auto& g = *m.gamma;
    loop = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      loop += measure::detail::chord_integral(c, [&](cd s) { return logf(s); }, g.points[i], g.points[(i + 1) % g.size()]);
  }
  cd interval = 0;
  if (c.beta2 > c.beta1) {
    auto f = [&](double x) { return logf(cd(x, 0)); };
    interval = measure::detail::interval_integral_near(c, f, z, "g interval part");
  }
  return loop + interval;
}

}  // namespace detail

// g(z); conjugate symmetric, g - Log z -> 0 at infinity, cut on (-inf, x_0] u Gamma_0 u [beta1, beta2].
inline cd g_eval(const MeasureSpec& m, cd z) {
  detail::check_g_domain(m, z);
  bool lower = z.imag() < 0;
  cd w = lower ? std::conj(z) : z;
  cd v = detail::g_parts(m, w, [&](cd s) { return log_upper(w - s); }, m.ctx.A * std::log(w));
  return lower ? std::conj(v) : v;
}

// g(z) - Log z for large |z| in the closed upper half plane.
inline cd g_minus_log(const MeasureSpec& m, cd z) {
  return detail::g_parts(m, z, [&](cd s) { return clog1p(-s / z); }, cd(0));
}

namespace detail {

// int_{beta1}^{i y} h(s) ds with h = R/s - 1 + (2-A)/s, path beta1 -> beta1 + i -> i -> i y.
inline cd h_integral_to_imag(const PotentialContext& c, double y) {
  const double k = 2 - c.A;
  auto h = [&](cd s) { return landscape::R_eval(c, s) / s - 1.0 + k / s; };
  auto h_from1 = [&](cd s, cd off) { return R_offsets(off, off + (c.beta1 - c.beta2)) / s - 1.0 + k / s; };
  cd p1(c.beta1, 1), p2(0, 1);
  cd v = quad::segment_from(h_from1, cd(c.beta1, 0), p1, c.quad_tol, "h leg 1");
  v += quad::segment(h, p1, p2, c.quad_tol, quad::Endpoint::smooth, "h leg 2");
  // s = i e^u: h(s) ds = (R - s + k) du, and R - s = (c0 - k2 s)/(R + s) avoids cancellation.
  auto tail = [&](double u) {
    cd s(0, std::exp(u));
    cd R = landscape::R_eval(c, s);
    cd rms = (c.beta1 * c.beta2 - (c.beta1 + c.beta2) * s) / (R + s);
    return rms + k;
  };
  v += quad::integrate(tail, 0.0, std::log(y), c.quad_tol, "h tail");
  return v;
}

// Extrapolation of E(z) = 2(g - Log z) + 2 phi - z + (2-A) Log z + A pi i to z = i infinity.
inline cd ell_extrapolate(const MeasureSpec& m, const std::array<double, 3>& ys) {
  const auto& c = m.ctx;
  std::array<cd, 3> t{}, e{};
  for (int k = 0; k < 3; ++k) {
    cd z(0, ys[k]);
    t[k] = 1.0 / z;
    e[k] = 2.0 * g_minus_log(m, z) + h_integral_to_imag(c, ys[k]) + (2 - c.A) * std::log(c.beta1) - c.beta1 +
           cd(0, c.A * kPi);
  }
  cd out = 0;
  for (int k = 0; k < 3; ++k) {
    cd w = 1;
    for (int j = 0; j < 3; ++j)
      if (j != k) w *= t[j] / (t[j] - t[k]);
    out += w * e[k];
  }
  return out;
}

}  // namespace detail

struct EllConstant {
  cd value;            // limit of 2g - (A Log z + z) + 2 phi + A pi i as z -> i infinity
  double consistency;  // spread between two independent extrapolations
  // 2 Re g(x) = A log x + x + euler_lagrange() on (beta1, beta2).
  double euler_lagrange() const { return value.real(); }
};

inline EllConstant ell_constant(const MeasureSpec& m, double agree_tol = 1e-9) {
  cd a = detail::ell_extrapolate(m, {1e3, 1e4, 1e5});
  cd b = detail::ell_extrapolate(m, {std::pow(10.0, 3.5), std::pow(10.0, 4.5), std::pow(10.0, 5.5)});
  double spread = std::abs(a - b);
  if (!(spread <= agree_tol)) throw NonConvergence("ell extrapolations disagree", 2, spread);
  return {a, spread};
}

}  // namespace lagzero::landscape
