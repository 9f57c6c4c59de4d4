// Level curves Gamma_r = {Re phi = r/2}: axis crossing, predictor-corrector tracing, geometry queries.
#pragma once

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "landscape.hpp"

namespace lagzero::contour {

using landscape::cd;
using landscape::PotentialContext;
using landscape::Side;

struct ContourPolyline {
  std::vector<cd> points;         // closed: the last point connects back to the first
  std::vector<cd> phi;            // phi at each vertex (limit from above at the start point)
  std::vector<double> arclengths; // cumulative, arclengths[0] = 0
  double r = 0;
  double max_step = 0;
  double level_tol = 1e-9;
  double total_length = 0;        // includes the closing segment
  int winding = 0;                // about the origin
  bool best_effort = false;       // very large r: step control near the origin is not guaranteed
  std::size_t size() const { return points.size(); }
};

inline double default_max_step(const PotentialContext& c) {
  double w = c.beta2 - c.beta1;
  return w > 0 ? w / 400 : 1e-3;
}
inline constexpr double kDefaultLevelTol = 1e-9;

namespace detail {

inline double re_phi_negative(const PotentialContext& c, double x) {
  return landscape::phi_eval(c, cd(x, 0), Side::above).real();
}

// Solve f(log|x|) = 0 on a bracket in log|x| with TOMS 748.
template <class F>
double solve_log(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

inline double seg_dist(cd p, cd a, cd b) {
  cd d = b - a;
  double L2 = std::norm(d);
  double t = L2 > 0 ? std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0) : 0.0;
  return std::abs(p - (a + t * d));
}

}  // namespace detail

// x_r < 0 with Re phi_+(x_r) = r/2.
inline double axis_crossing(const PotentialContext& c, double r, double level_tol = kDefaultLevelTol) {
  if (!(r >= 0)) throw DomainError("r must be >= 0");
  double target = r / 2;
  auto f = [&](double u) { return detail::re_phi_negative(c, -std::exp(u)) - target; };
  double lo = 0.0;  // log|x| with Re phi below target
  while (f(lo) >= 0) {
    lo += std::log(2.0);
    if (lo > 60) throw BracketError("no bracket on the far negative axis");
  }
  double hi = std::log(std::max(c.beta1, 1e-3)) - 1;
  while (f(hi) <= 0) {
    hi -= std::log(10.0);
    if (hi < -680) throw BracketError("no bracket near the origin; r mis-scaled?");
  }
  double u = detail::solve_log([&](double v) { return f(v); }, hi, lo);
  double x = -std::exp(u);
  if (std::abs(detail::re_phi_negative(c, x) - target) > level_tol)
    throw BracketError("axis crossing did not reach level_tol");
  return x;
}

// x^+ in (0, beta1) with phi(x^+) = r/2, r > 0.
inline double positive_crossing(const PotentialContext& c, double r) {
  double target = r / 2;
  auto f = [&](double u) { return landscape::phi_eval(c, cd(std::exp(u), 0)).real() - target; };
  double hi = std::log(c.beta1) - 1e-12;
  double lo = hi - 1;
  while (f(lo) <= 0) {
    lo -= std::log(10.0);
    if (lo < -680) throw BracketError("no positive crossing");
  }
  return std::exp(detail::solve_log(f, lo, hi));
}

inline double polyline_distance(const ContourPolyline& g, cd z) {
  double d = std::numeric_limits<double>::infinity();
  std::size_t n = g.points.size();
  for (std::size_t i = 0; i < n; ++i) d = std::min(d, detail::seg_dist(z, g.points[i], g.points[(i + 1) % n]));
  return d;
}

// Winding number of the closed polyline about z (Sunday's crossing rule).
inline int winding_number(const std::vector<cd>& pts, cd z) {
  int wn = 0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    cd a = pts[i], b = pts[(i + 1) % n];
    double cross = (b.real() - a.real()) * (z.imag() - a.imag()) - (z.real() - a.real()) * (b.imag() - a.imag());
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross > 0) ++wn;
    } else if (b.imag() <= z.imag() && cross < 0) {
      --wn;
    }
  }
  return wn;
}

namespace detail {

struct TraceState {
  cd z;
  cd phi;
};

// One predictor-corrector step of length h from s along tangent tau. Returns false when the
// corrector fails or moves further than h/10 off the predicted point.
inline bool pc_step(const PotentialContext& c, double target, const TraceState& s, cd tau, double h,
                    double tol, TraceState& out) {
  auto f = landscape::detail::half_R_over_s(c);
  cd zp = s.z + h * tau;
  if (zp == cd(0)) return false;
  cd psi = landscape::R_eval(c, zp) / (2.0 * zp);
  if (std::abs(psi) == 0) return false;
  cd nrm = std::conj(psi) / std::abs(psi);
  double t = 0;
  cd w = zp;
  for (int it = 0; it < 12; ++it) {
    cd ph;
    try {
      ph = s.phi + quad::segment(f, s.z, w, c.quad_tol, quad::Endpoint::smooth, "trace step");
    } catch (const QuadratureError&) {
      return false;
    }
    double err = ph.real() - target;
    if (std::abs(err) <= tol) {
      if (std::abs(t) > h / 10) return false;
      out = {w, ph};
      return true;
    }
    cd pw = landscape::R_eval(c, w) / (2.0 * w);
    double d = (pw * nrm).real();
    if (d == 0) return false;
    t -= err / d;
    if (std::abs(t) > h / 2) return false;
    w = zp + t * nrm;
  }
  return false;
}

}  // namespace detail

// Traces Gamma_r clockwise from its negative-axis crossing: the upper arc is continued until it
// meets the positive axis (or beta1 when r = 0) and the lower arc is its mirror image.
inline ContourPolyline trace_gamma(const PotentialContext& c, double r, double max_step = 0,
                                   double level_tol = kDefaultLevelTol) {
  if (!(r >= 0)) throw DomainError("r must be >= 0");
  if (max_step <= 0) max_step = default_max_step(c);
  const double target = r / 2;
  const double newton_tol = level_tol * 1e-2;
  const double x_r = axis_crossing(c, r, level_tol);
  const double b1 = c.beta1;
  const double close_radius = std::min(1e-7, 1e-3 * max_step);
  const std::size_t budget = 100000;
  // Turning per step around the origin; refines together with max_step.
  const double angle_cap = std::min(0.1, 40 * max_step / std::max(c.beta2 - c.beta1, 1e-3));

  std::vector<detail::TraceState> upper;
  upper.push_back({cd(x_r, 0), landscape::phi_eval(c, cd(x_r, 0), Side::above)});
  cd dir(0, 1);
  double h = std::min(max_step, 0.05 * std::abs(x_r));
  bool closed = false;

  while (!closed) {
    if (upper.size() > budget / 2) throw ClosureError("Gamma_r did not close within the step budget");
    const auto& s = upper.back();
    cd psi = landscape::R_eval(c, s.z) / (2.0 * s.z);
    cd tau = cd(0, 1) * std::conj(psi) / std::abs(psi);
    if ((tau * std::conj(dir)).real() < 0) tau = -tau;

    double cap = std::min({max_step, angle_cap * std::abs(s.z), 0.3 * std::abs(s.z - b1)});
    h = std::min(h, cap);
    detail::TraceState next;
    bool ok = false;
    while (!ok) {
      ok = detail::pc_step(c, target, s, tau, h, newton_tol, next);
      if (!ok) {
        h *= 0.5;
        if (h < 1e-8 * std::min(1.0, std::abs(s.z))) {
          if (r == 0 && std::abs(s.z - b1) < 10 * max_step) {
            upper.push_back({cd(b1, 0), cd(0, 0)});
            closed = true;
            break;
          }
          throw StepCollapse("step size collapsed while tracing Gamma_r");
        }
      }
    }
    if (closed) break;

    if (next.z.imag() <= 0) {
      if (r == 0) {
        upper.push_back({cd(b1, 0), cd(0, 0)});
      } else {
        if (next.z.real() <= 0) throw ClosureError("upper arc met the negative axis twice");
        double xp = positive_crossing(c, r);
        upper.push_back({cd(xp, 0), landscape::phi_eval(c, cd(xp, 0))});
      }
      closed = true;
      break;
    }
    upper.push_back(next);
    dir = tau;
    if (r == 0 && std::abs(next.z - b1) < close_radius) {
      upper.push_back({cd(b1, 0), cd(0, 0)});
      closed = true;
    }
    h *= 1.5;
  }

  ContourPolyline g;
  g.r = r;
  g.max_step = max_step;
  g.level_tol = level_tol;
  g.best_effort = r > 30;
  for (const auto& s : upper) {
    g.points.push_back(s.z);
    g.phi.push_back(s.phi);
  }
  for (std::size_t j = upper.size() - 1; j-- > 1;) {
    g.points.push_back(std::conj(upper[j].z));
    g.phi.push_back(std::conj(upper[j].phi));
  }
  g.arclengths.resize(g.points.size());
  g.arclengths[0] = 0;
  for (std::size_t i = 1; i < g.points.size(); ++i)
    g.arclengths[i] = g.arclengths[i - 1] + std::abs(g.points[i] - g.points[i - 1]);
  g.total_length = g.arclengths.back() + std::abs(g.points.front() - g.points.back());
  g.winding = winding_number(g.points, cd(0, 0));
  return g;
}

inline double limit_set_distance(const PotentialContext& c, const ContourPolyline& g, cd z) {
  double d_int = detail::seg_dist(z, cd(c.beta1, 0), cd(c.beta2, 0));
  return std::min(d_int, polyline_distance(g, z));
}

inline bool point_in_loop(const ContourPolyline& g, cd z) {
  if (polyline_distance(g, z) < g.level_tol) throw OnBoundary("point lies on the contour");
  return winding_number(g.points, z) != 0;
}

// True when no two non-adjacent segments intersect.
inline bool is_simple(const ContourPolyline& g) {
  const auto& p = g.points;
  std::size_t n = p.size();
  auto orient = [](cd a, cd b, cd q) {
    return (b.real() - a.real()) * (q.imag() - a.imag()) - (b.imag() - a.imag()) * (q.real() - a.real());
  };
  // Sort segments by min real part and sweep.
  struct Seg {
    double lo, hi;
    std::size_t i;
  };
  std::vector<Seg> segs(n);
  for (std::size_t i = 0; i < n; ++i) {
    cd a = p[i], b = p[(i + 1) % n];
    segs[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), i};
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.lo < y.lo; });
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n && segs[v].lo <= segs[u].hi; ++v) {
      std::size_t i = segs[u].i, j = segs[v].i;
      std::size_t gap = i > j ? i - j : j - i;
      if (gap <= 1 || gap == n - 1) continue;
      cd a = p[i], b = p[(i + 1) % n], q1 = p[j], q2 = p[(j + 1) % n];
      double d1 = orient(a, b, q1), d2 = orient(a, b, q2), d3 = orient(q1, q2, a), d4 = orient(q1, q2, b);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return false;
    }
  }
  return true;
}

// Hausdorff distance between the vertex sets of g and its mirror image.
inline double conjugate_hausdorff(const ContourPolyline& g) {
  double worst = 0;
  for (cd p : g.points) {
    double d = std::numeric_limits<double>::infinity();
    for (cd q : g.points) d = std::min(d, std::abs(std::conj(p) - q));
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace lagzero::contour
