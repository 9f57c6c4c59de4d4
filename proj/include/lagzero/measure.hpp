// The limit measures: nu_r on Gamma_r, the Marchenko-Pastur part on [beta1,beta2], masses, CDFs
// and logarithmic potentials.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "contour.hpp"
#include "errors.hpp"
#include "landscape.hpp"
#include "quadrature.hpp"

namespace lagzero::measure {

using contour::ContourPolyline;
using landscape::cd;
using landscape::kPi;
using landscape::PotentialContext;

struct MeasureSpec {
  PotentialContext ctx;
  double r = 0;                         // +infinity encodes the atom A at the origin
  std::optional<ContourPolyline> gamma; // absent iff r is infinite
  bool atom() const { return !gamma.has_value(); }
};

inline MeasureSpec make_measure(const PotentialContext& c, double r, double max_step = 0) {
  if (std::isinf(r)) return {c, r, std::nullopt};
  return {c, r, contour::trace_gamma(c, r, max_step)};
}

inline MeasureSpec make_measure(const PotentialContext& c, ContourPolyline g) {
  double r = g.r;
  return {c, r, std::move(g)};
}

inline double mp_density(const PotentialContext& c, double x) {
  if (x < c.beta1 || x > c.beta2) throw DomainError("mp_density outside [beta1,beta2]");
  return std::sqrt(std::max(0.0, (x - c.beta1) * (c.beta2 - x))) / (2 * kPi * x);
}

namespace detail {

// x = beta1 + w sin^2(t): density dx becomes w^2 sin^2 cos^2 / (pi x) dt.
inline double interval_theta(const PotentialContext& c, double x) {
  double w = c.beta2 - c.beta1;
  return std::asin(std::sqrt(std::clamp((x - c.beta1) / w, 0.0, 1.0)));
}
inline double interval_weight(const PotentialContext& c, double t, double& x) {
  double w = c.beta2 - c.beta1, sn = std::sin(t), cs = std::cos(t);
  x = c.beta1 + w * sn * sn;
  return w * w * sn * sn * cs * cs / (kPi * x);
}

template <class F>
auto interval_integral(const PotentialContext& c, F f, double t0, double t1, const char* what) {
  auto g = [&](double t) {
    double x = 0;
    double wt = interval_weight(c, t, x);
    return f(x) * wt;
  };
  return quad::integrate(g, t0, t1, c.quad_tol, what);
}

// Integral over the whole interval of f(x) times the density; when z sits close to the interval
// the range is split at Re z and tanh-sinh takes the logarithmic endpoint behaviour.
template <class F>
auto interval_integral_near(const PotentialContext& c, F f, cd z, const char* what) {
  double x = z.real();
  if (std::abs(z.imag()) > 0.25 || x <= c.beta1 || x >= c.beta2)
    return interval_integral(c, f, 0.0, kPi / 2, what);
  auto g = [&](double t) {
    double xx = 0;
    double wt = interval_weight(c, t, xx);
    return f(xx) * wt;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double ts_split = interval_theta(c, x), e1 = 0, e2 = 0;
  auto v = ts.integrate(g, 0.0, ts_split, c.quad_tol, &e1) + ts.integrate(g, ts_split, kPi / 2, c.quad_tol, &e2);
  if (!(e1 + e2 <= 1e3 * c.quad_tol)) throw QuadratureError(what, e1 + e2);
  return v;
}

inline double kahan_sum(const std::vector<double>& v) {
  double s = 0, comp = 0;
  for (double x : v) {
    double y = x - comp, t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

// (1/(2 pi i)) int_a^b F(s) R(s)/s ds along the chord, F holomorphic near it.
template <class F>
cd chord_integral(const PotentialContext& c, F f, cd a, cd b) {
  const double b1 = c.beta1;
  auto dnu = [&](cd s) { return f(s) * landscape::R_eval(c, s) / (cd(0, 2 * kPi) * s); };
  if (a == cd(b1, 0) || b == cd(b1, 0)) {
    bool flip = b == cd(b1, 0);
    cd from = flip ? b : a, to = flip ? a : b;
    auto g = [&](cd s, cd off) {
      return f(s) * landscape::R_offsets(off, off + (c.beta1 - c.beta2)) / (cd(0, 2 * kPi) * s);
    };
    cd v = quad::segment_from(g, from, to, c.quad_tol, "nu chord at beta1");
    return flip ? -v : v;
  }
  return quad::segment(dnu, a, b, c.quad_tol, quad::Endpoint::smooth, "nu chord");
}

inline const ContourPolyline& curve(const MeasureSpec& m) {
  if (!m.gamma) throw DomainError("the atomic measure has no contour");
  return *m.gamma;
}

}  // namespace detail

inline double cdf_interval(const PotentialContext& c, double x) {
  if (x < c.beta1 || x > c.beta2) throw DomainError("cdf_interval outside [beta1,beta2]");
  if (c.beta2 == c.beta1) return 0;
  return detail::interval_integral(c, [](double) { return 1.0; }, 0.0, detail::interval_theta(c, x), "cdf");
}

// int_{beta2}^x of the density (<= 0): the phase integral of the oscillatory formula.
inline double cdf_from_beta2(const PotentialContext& c, double x) {
  if (x < c.beta1 || x > c.beta2) throw DomainError("cdf_from_beta2 outside [beta1,beta2]");
  if (c.beta2 == c.beta1) return 0;
  return -detail::interval_integral(c, [](double) { return 1.0; }, detail::interval_theta(c, x), kPi / 2,
                                    "cdf from beta2");
}

inline double interval_mass(const PotentialContext& c) { return cdf_interval(c, c.beta2); }

inline double nu_arclength_density(const MeasureSpec& m, cd p) {
  const auto& g = detail::curve(m);
  if (contour::polyline_distance(g, p) > g.level_tol) throw DomainError("point is not on Gamma_r");
  return std::abs(landscape::R_eval(m.ctx, p) / p) / (2 * kPi);
}

// Complex nu weight of each polyline segment (segment i joins vertex i to vertex i+1, the last one
// closes). Real and positive up to the level error of the vertices.
inline std::vector<cd> segment_weights(const MeasureSpec& m) {
  const auto& g = detail::curve(m);
  std::size_t n = g.size();
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = detail::chord_integral(m.ctx, [](cd) { return cd(1); }, g.points[i], g.points[(i + 1) % n]);
  return out;
}

inline std::vector<double> segment_masses(const MeasureSpec& m) {
  auto w = segment_weights(m);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i].real();
  return out;
}

// Exact per-segment integration of the complex differential (path independent, so chords suffice).
inline double loop_mass(const MeasureSpec& m) {
  if (m.atom()) return m.ctx.A;
  return detail::kahan_sum(segment_masses(m));
}

// Trapezoid rule for the arclength density along the polyline.
inline double loop_mass_arclength(const MeasureSpec& m) {
  const auto& g = detail::curve(m);
  std::size_t n = g.size();
  std::vector<double> dens(n), parts(n);
  for (std::size_t i = 0; i < n; ++i) dens[i] = std::abs(landscape::R_eval(m.ctx, g.points[i]) / g.points[i]) / (2 * kPi);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    parts[i] = 0.5 * (dens[i] + dens[j]) * std::abs(g.points[j] - g.points[i]);
  }
  return detail::kahan_sum(parts);
}

// Cumulative nu mass at each vertex, starting from 0 at the negative-axis crossing (clockwise).
// The returned vector has size()+1 entries; the last one is the total mass.
inline std::vector<double> loop_cumulative(const MeasureSpec& m) {
  auto seg = segment_masses(m);
  std::vector<double> cum(seg.size() + 1, 0.0);
  for (std::size_t i = 0; i < seg.size(); ++i) cum[i + 1] = cum[i] + seg[i];
  return cum;
}

// Position in [0,1] of the projection of z onto Gamma_r under the normalized nu CDF.
inline double loop_cdf_position(const MeasureSpec& m, const std::vector<double>& cum, cd z) {
  const auto& g = detail::curve(m);
  std::size_t n = g.size(), best = 0;
  double bd = std::numeric_limits<double>::infinity(), bt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cd a = g.points[i], d = g.points[(i + 1) % n] - a;
    double L2 = std::norm(d);
    double t = L2 > 0 ? std::clamp(((z - a) * std::conj(d)).real() / L2, 0.0, 1.0) : 0.0;
    double dist = std::abs(z - (a + t * d));
    if (dist < bd) {
      bd = dist;
      best = i;
      bt = t;
    }
  }
  double v = cum[best] + bt * (cum[best + 1] - cum[best]);
  return std::clamp(v / cum.back(), 0.0, 1.0);
}

namespace detail {

inline void check_off_support(const MeasureSpec& m, cd z) {
  const auto& c = m.ctx;
  if (z.imag() == 0 && z.real() >= c.beta1 && z.real() <= c.beta2) throw DomainError("point on [beta1,beta2]");
  if (m.atom()) {
    if (z == cd(0)) throw DomainError("point at the atom");
  } else if (contour::polyline_distance(*m.gamma, z) < m.gamma->level_tol) {
    throw DomainError("point on Gamma_r");
  }
}

// Log(z - s) continuous along the chord a-b: referenced to the chord midpoint.
struct LocalLog {
  cd z, m, base;
  LocalLog(cd z_, cd a, cd b) : z(z_), m(0.5 * (a + b)), base(std::log(z_ - m)) {}
  cd operator()(cd s) const { return std::log((z - s) / (z - m)) + base; }
};

}  // namespace detail

inline double interval_log_potential(const PotentialContext& c, cd z) {
  if (c.beta2 == c.beta1) return 0;
  return detail::interval_integral_near(c, [&](double x) { return std::log(std::abs(z - x)); }, z,
                                        "interval log potential");
}

inline double loop_log_potential(const MeasureSpec& m, cd z) {
  if (m.atom()) return m.ctx.A * std::log(std::abs(z));
  const auto& g = *m.gamma;
  std::size_t n = g.size();
  std::vector<double> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    cd a = g.points[i], b = g.points[(i + 1) % n];
    detail::LocalLog L(z, a, b);
    parts[i] = detail::chord_integral(m.ctx, L, a, b).real();
  }
  return detail::kahan_sum(parts);
}

// U(z) = int log|z - s| dmu_r(s).
inline double log_potential(const MeasureSpec& m, cd z) {
  detail::check_off_support(m, z);
  return loop_log_potential(m, z) + interval_log_potential(m.ctx, z);
}

}  // namespace lagzero::measure
