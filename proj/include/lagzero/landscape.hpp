// The A-dependent landscape: endpoints, R, phi, phi-tilde and the constant c_n.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"
#include "mp.hpp"
#include "quadrature.hpp"

namespace lagzero::landscape {

using cd = std::complex<double>;
using mp::bits_t;
inline constexpr double kPi = std::numbers::pi;

struct PotentialContext {
  double A = 0.5;
  double beta1 = 0;
  double beta2 = 0;
  bits_t precision_bits = 256;
  double quad_tol = 1e-12;
};

enum class Side { above, below, off_axis };

inline PotentialContext make_context(double A, bits_t precision_bits = 256, double quad_tol = 1e-12) {
  if (!(A > 0 && A <= 1)) throw DomainError("A must lie in (0,1]");
  if (precision_bits < 64) throw DomainError("precision_bits must be >= 64");
  double s = std::sqrt(1 - A);
  double b2 = 2 - A + 2 * s;
  // A^2/b2 equals 2-A-2s but keeps full relative accuracy for small A.
  return {A, A * A / b2, b2, precision_bits, quad_tol};
}

inline bool on_interval(const PotentialContext& c, cd z) {
  return z.imag() == 0 && z.real() > c.beta1 && z.real() < c.beta2;
}

// Principal square roots of z-beta1 and z-beta2: cut exactly [beta1,beta2], R ~ z at infinity.
inline cd R_eval(const PotentialContext& c, cd z, Side side = Side::off_axis) {
  if (on_interval(c, z)) {
    if (side == Side::off_axis) throw BranchCutError("R on [beta1,beta2] needs a side");
    double v = std::sqrt((z.real() - c.beta1) * (c.beta2 - z.real()));
    return side == Side::above ? cd(0, v) : cd(0, -v);
  }
  if (z.imag() == 0 && z.real() < c.beta1) {
    // Negative real there; avoid the signed-zero ambiguity of std::sqrt.
    return -std::sqrt((c.beta1 - z.real()) * (c.beta2 - z.real()));
  }
  return std::sqrt(z - c.beta1) * std::sqrt(z - c.beta2);
}

// R from the offsets z-beta1 and z-beta2 (principal roots), for callers that know them exactly.
inline cd R_offsets(cd d1, cd d2) { return std::sqrt(d1) * std::sqrt(d2); }

namespace detail {

// Integrands for segments starting at beta1 or beta2 with the offset passed exactly.
inline auto half_R_over_s_from1(const PotentialContext& c) {
  return [&c](cd s, cd off) { return R_offsets(off, off + (c.beta1 - c.beta2)) / (2.0 * s); };
}
inline auto half_R_over_s_from2(const PotentialContext& c) {
  return [&c](cd s, cd off) { return R_offsets(off + (c.beta2 - c.beta1), off) / (2.0 * s); };
}

inline auto half_R_over_s(const PotentialContext& c) {
  return [&c](cd s) { return R_eval(c, s) / (2.0 * s); };
}

// 1/2 int_{beta1}^{x} R_+(s)/s ds for x in [beta1,beta2], via s = beta1 + w sin^2(t).
inline cd phi_on_interval_above(const PotentialContext& c, double x) {
  double w = c.beta2 - c.beta1;
  if (w == 0) return 0;
  double th = std::asin(std::sqrt(std::clamp((x - c.beta1) / w, 0.0, 1.0)));
  auto f = [&](double t) {
    double sn = std::sin(t), cs = std::cos(t);
    double s = c.beta1 + w * sn * sn;
    return w * w * sn * sn * cs * cs / s;
  };
  return cd(0, quad::integrate(f, 0.0, th, c.quad_tol, "phi interval"));
}

// Path beta -> beta + i h -> Re z + i h -> z in the closed upper half plane, h >= 0.1 away from 0.
template <class F>
cd upper_path_integral(const PotentialContext& c, F f, double start, cd z) {
  double h = std::max(z.imag(), 0.1);
  cd p1(start, h), p2(z.real(), h);
  cd v = start == c.beta1 ? quad::segment_from(half_R_over_s_from1(c), cd(start, 0), p1, c.quad_tol, "path leg 1")
                          : quad::segment_from(half_R_over_s_from2(c), cd(start, 0), p1, c.quad_tol, "path leg 1");
  v += quad::segment(f, p1, p2, c.quad_tol, quad::Endpoint::smooth, "path leg 2");
  v += quad::segment(f, p2, z, c.quad_tol, quad::Endpoint::smooth, "path leg 3");
  return v;
}

// Below this radius phi is reached along the negative axis (log scale) and then a circular arc,
// which keeps the 1/s behaviour of the integrand tame.
inline double small_radius(const PotentialContext& c) { return 0.5 * c.beta1; }

// phi_+(-rho).
inline cd phi_negative_axis(const PotentialContext& c, double rho) {
  auto f = half_R_over_s(c);
  double r0 = small_radius(c);
  if (rho >= r0) return upper_path_integral(c, f, c.beta1, cd(-rho, 0));
  cd anchor = upper_path_integral(c, f, c.beta1, cd(-r0, 0));
  // s = -e^u turns R(s)/(2s) ds into R(-e^u)/2 du.
  auto g = [&c](double u) { return 0.5 * R_eval(c, cd(-std::exp(u), 0)).real(); };
  return anchor - quad::integrate(g, std::log(rho), std::log(r0), c.quad_tol, "phi negative axis");
}

// phi(x) for 0 < x < beta1, real.
inline double phi_positive_gap(const PotentialContext& c, double x) {
  double r0 = small_radius(c);
  auto seg = [&](double y) {
    return quad::segment_from(half_R_over_s_from1(c), cd(c.beta1, 0), cd(y, 0), c.quad_tol, "phi (0,beta1)").real();
  };
  if (x >= r0) return seg(x);
  auto g = [&c](double u) { return 0.5 * R_eval(c, cd(std::exp(u), 0)).real(); };
  return seg(r0) - quad::integrate(g, std::log(x), std::log(r0), c.quad_tol, "phi positive gap");
}

}  // namespace detail

// phi in the upper half plane or as the limit from above on (-inf,0) and (beta1,inf).
inline cd phi_upper(const PotentialContext& c, cd z) {
  auto f = detail::half_R_over_s(c);
  double rho = std::abs(z);
  if (z.imag() == 0 && z.real() < 0) return detail::phi_negative_axis(c, rho);
  if (rho < detail::small_radius(c)) {
    // Arc s = rho e^{it} from t = pi down to arg z; ds/s = i dt.
    double th = std::arg(z);
    auto g = [&](double t) { return cd(0, 0.5) * R_eval(c, std::polar(rho, t)); };
    return detail::phi_negative_axis(c, rho) - quad::integrate(g, th, kPi, c.quad_tol, "phi arc");
  }
  if (z.imag() > 0) {
    // Close to beta1 the straight segment is the better path: the u^2 substitution absorbs the branch point.
    if (std::abs(z - c.beta1) <= 0.5 * std::min(c.beta1, c.beta2 - c.beta1))
      return quad::segment_from(detail::half_R_over_s_from1(c), cd(c.beta1, 0), z, c.quad_tol, "phi near beta1");
    return detail::upper_path_integral(c, f, c.beta1, z);
  }
  double x = z.real();
  if (x <= c.beta2) return detail::phi_on_interval_above(c, x);
  cd base = detail::phi_on_interval_above(c, c.beta2);
  return base + quad::segment_from(detail::half_R_over_s_from2(c), cd(c.beta2, 0), z, c.quad_tol, "phi right ray");
}

inline cd phi_eval(const PotentialContext& c, cd z, Side side = Side::off_axis) {
  if (z == cd(0)) throw DomainError("phi is singular at the origin");
  if (z.imag() > 0) return phi_upper(c, z);
  if (z.imag() < 0) return std::conj(phi_upper(c, std::conj(z)));
  double x = z.real();
  if (x == c.beta1) return 0;
  if (x > 0 && x < c.beta1) return detail::phi_positive_gap(c, x);
  if (side == Side::off_axis) throw BranchCutError("phi on its cut needs a side");
  cd up = phi_upper(c, cd(x, 0));
  return side == Side::above ? up : std::conj(up);
}

inline cd phi_tilde_eval(const PotentialContext& c, cd z) {
  if (z == cd(c.beta2, 0)) return 0;
  if (z.imag() == 0 && z.real() < c.beta2) throw DomainError("phi-tilde is cut on (-inf,beta2]");
  auto f = detail::half_R_over_s(c);
  if (z.imag() == 0)
    return quad::segment_from(detail::half_R_over_s_from2(c), cd(c.beta2, 0), z, c.quad_tol, "phi-tilde ray").real();
  if (z.imag() < 0) return std::conj(detail::upper_path_integral(c, f, c.beta2, std::conj(z)));
  return detail::upper_path_integral(c, f, c.beta2, z);
}

struct CConstant {
  mp::Complex value;
  bool integer_parameter = false;
};

// 2i sin(pi t) for exact t = n A_n; reduction to t - round(t) is exact.
inline CConstant c_constant(const mpq_class& nA, bits_t bits) {
  mp::Decimal t(nA);
  mpz_class k = t.round();
  mpq_class d = nA - mpq_class(k);
  mp::Complex out(bits);
  if (d == 0) return {out, true};
  mp::Real s = mp::sin(mp::pi(bits) * mp::Real(d, bits));
  if (mpz_odd_p(k.get_mpz_t())) s = -s;
  out.im = s * mp::Real(2L, bits);
  return {out, false};
}

struct Rate {
  double value = 0;
  bool integer_parameter = false;
};

// |c|^(1/n), computed in log space so |c| far below double range is fine.
inline Rate rate_from_c(long n, const mp::Complex& c) {
  mp::Real m = c.abs();
  if (m.is_zero()) return {0.0, true};
  mp::Real l = mp::log(m);
  l /= n;
  return {mp::exp(l).to_double(), false};
}

}  // namespace lagzero::landscape
