// Adaptive Gauss-Kronrod integration along straight segments in the complex plane.
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"

namespace lagzero::quad {

using cd = std::complex<double>;

inline constexpr unsigned kMaxDepth = 15;

// Integral of f over [a,b] (real parameter), f may be real or complex valued.
template <class F>
auto integrate(F f, double a, double b, double tol, const char* what = "quadrature") {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0, l1 = 0;
  double w = b - a;
  // Work on [0,1]: Boost's error estimate degrades when |a| is large compared with b-a.
  auto g = [&](double t) { return f(a + t * w); };
  auto v = gauss_kronrod<double, 15>::integrate(g, 0.0, 1.0, kMaxDepth, tol, &err, &l1);
  if (!(err <= 10 * tol * std::max(l1, 1e-300) || err <= 1e-15)) throw QuadratureError(std::string(what) + " [L1 " + sci(l1) + "]", err);
  return v * w;
}

enum class Endpoint { smooth, sqrt_start };

// Line integral of f(s) ds along the segment a -> b. With sqrt_start the parametrisation
// s = a + u^2 (b-a) absorbs a square-root branch point sitting at a.
template <class F>
cd segment(F f, cd a, cd b, double tol, Endpoint e = Endpoint::smooth, const char* what = "segment") {
  cd d = b - a;
  if (d == cd(0)) return 0;
  if (e == Endpoint::sqrt_start) {
    auto g = [&](double u) -> cd { return f(a + u * u * d) * (2 * u); };
    return d * integrate(g, 0.0, 1.0, tol, what);
  }
  auto g = [&](double t) -> cd { return f(a + t * d); };
  return d * integrate(g, 0.0, 1.0, tol, what);
}

// As segment(..., sqrt_start) but f receives (s, s - a) with the offset formed exactly as u^2 (b-a),
// avoiding cancellation when s is very close to a.
template <class F>
cd segment_from(F f, cd a, cd b, double tol, const char* what = "segment") {
  cd d = b - a;
  if (d == cd(0)) return 0;
  auto g = [&](double u) -> cd {
    cd off = u * u * d;
    return f(a + off, off) * (2 * u);
  };
  return d * integrate(g, 0.0, 1.0, tol, what);
}

}  // namespace lagzero::quad
