// Zero-distribution experiments: parameter plans, the root-finding pipeline on the rescaled
// polynomial, classification against the predicted limit set and distribution statistics.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contour.hpp"
#include "errors.hpp"
#include "laguerre.hpp"
#include "landscape.hpp"
#include "measure.hpp"
#include "mp.hpp"
#include "rootfinder.hpp"

namespace lagzero::harness {

using landscape::cd;
using landscape::PotentialContext;
using mp::bits_t;
using mp::Decimal;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Decimal dist_to_integers(const Decimal& alpha) { return alpha.dist_to_integers(); }

// -(1/n) log dist(alpha, Z); infinity for integers.
inline double r_hat_of(long n, const Decimal& alpha) {
  Decimal d = dist_to_integers(alpha);
  if (d.rational() == 0) return kInf;
  return -mp::log(d.to_real(256)).to_double() / static_cast<double>(n);
}

// Root-finding precision: the constant term scales with dist(alpha, Z).
inline bits_t working_precision(long n, const Decimal& alpha) {
  bits_t p = laguerre::default_precision(n);
  Decimal d = dist_to_integers(alpha);
  if (d.rational() == 0) return p;
  double l2 = mp::log(d.to_real(256)).to_double() / std::log(2.0);
  return std::max<bits_t>(p, 4 * n + 10 * static_cast<bits_t>(std::ceil(-l2)));
}

struct ParameterPlan {
  double A = 0;
  double r = 0;
  std::vector<long> n_values;
  std::vector<Decimal> alphas;
};

namespace detail {

// e^{-x} as an exact decimal with ~25 significant digits.
inline Decimal exp_neg_decimal(double x) {
  mp::Real v = mp::exp(mp::Real(-x, 256));
  return Decimal::parse(v.to_string(25));
}

inline bool admissible(long n, const Decimal& a) {
  mpq_class q = a.rational();
  return q < 0 && q > -n;
}

}  // namespace detail

// alpha_n = round(-nA) + min(e^{-rn}, 1/2), shifted by one if that leaves (-n, 0); integers for r = inf.
// overrides, when given, replace the constructed alphas one for one.
inline ParameterPlan make_plan(double A, double r, const std::vector<long>& n_values,
                               const std::vector<Decimal>& overrides = {}) {
  if (!(A > 0 && A < 1)) throw PlanError("A must lie in (0,1)");
  if (!(r >= 0)) throw PlanError("r must be nonnegative");
  if (!overrides.empty() && overrides.size() != n_values.size()) throw PlanError("override list length mismatch");
  ParameterPlan p{A, r, n_values, {}};
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    long n = n_values[i];
    if (n < 2) throw PlanError("n must be >= 2");
    if (!overrides.empty()) {
      if (!detail::admissible(n, overrides[i])) throw PlanError("override alpha outside (-n,0)");
      p.alphas.push_back(overrides[i]);
      continue;
    }
    long base = std::lround(-static_cast<double>(n) * A);
    if (std::isinf(r)) {
      base = std::clamp(base, -n + 1, -1L);
      p.alphas.emplace_back(base);
      continue;
    }
    Decimal frac = r * n > 0.6931471805599453 ? detail::exp_neg_decimal(r * n) : Decimal(mpq_class(1, 2));
    Decimal a(mpq_class(base) + frac.rational());
    if (!detail::admissible(n, a)) a = Decimal(a.rational() - 1);
    if (!detail::admissible(n, a)) throw PlanError("no admissible alpha for n = " + std::to_string(n));
    p.alphas.push_back(a);
  }
  return p;
}

// Output of the laguerre -> rootfinder pipeline on the rescaled polynomial.
struct ZeroRun {
  long n = 0;
  Decimal alpha;
  roots::ZeroSet zeros;  // the zeros away from the origin, certified
  laguerre::CoefficientList coeffs;
  bits_t precision_bits = 0;
  int attempts = 0;
};

namespace detail {

inline std::vector<cd> pipeline_seeds(long deg, long origin, const Decimal& alpha, long n,
                                      const contour::ContourPolyline* gamma) {
  mpq_class A = -alpha.rational() / n;
  if (A <= 0 || A >= 1) return {};
  auto c = landscape::make_context(A.get_d());
  if (origin > 0) return roots::interval_seeds(deg, c);
  return roots::initial_guesses(deg, c, r_hat_of(n, alpha), gamma);
}

}  // namespace detail

// Zeros of L_n^(alpha)(n z). Integer alpha in [-n,-1] is reduced first; on NonConvergence or a
// suspect certificate the run is repeated once at doubled precision.
inline ZeroRun compute_zeros(long n, const Decimal& alpha, bits_t precision_bits = 0,
                             const contour::ContourPolyline* gamma = nullptr) {
  ZeroRun run;
  run.n = n;
  run.alpha = alpha;
  bits_t bits = precision_bits ? precision_bits : working_precision(n, alpha);
  long origin = 0;
  std::optional<laguerre::LaguerreSpec> reduced;
  if (alpha.is_integer() && alpha.rational() <= -1 && alpha.rational() >= -n) {
    auto red = laguerre::integer_reduction(n, alpha, bits);
    origin = red.multiplicity;
    reduced = red.reduced;
  }
  long deg = n - origin;
  std::vector<cd> seeds = detail::pipeline_seeds(deg, origin, alpha, n, gamma);

  for (int attempt = 1; attempt <= 2; ++attempt, bits *= 2) {
    run.attempts = attempt;
    laguerre::LaguerreSpec spec = reduced ? *reduced : laguerre::make_spec(n, alpha, bits);
    spec.precision_bits = bits;
    run.coeffs = laguerre::monic_scaled(spec, n);
    run.precision_bits = bits;
    if (deg == 0) {
      run.zeros.precision_bits = bits;
      break;
    }
    double tol = std::ldexp(1.0, -static_cast<int>(bits / 2));
    try {
      auto zs = roots::find_zeros(run.coeffs, bits, tol, seeds);
      zs = roots::certify(run.coeffs, zs);
      if (roots::any_suspect(zs)) {
        if (attempt == 2) throw NonConvergence("suspect zeros after precision doubling", zs.iterations, 0);
        continue;
      }
      run.zeros = std::move(zs);
      break;
    } catch (const NonConvergence&) {
      if (attempt == 2) throw;
    }
  }
  run.zeros.origin_multiplicity = origin;
  return run;
}

inline std::vector<cd> to_double(const roots::ZeroSet& zs) {
  std::vector<cd> out;
  for (const auto& z : zs.zeros) out.emplace_back(z.re.to_double(), z.im.to_double());
  return out;
}

// |Im z| below 2^{-prec/4} max(1,|z|) counts as real.
inline bool is_real_zero(const mp::Complex& z, bits_t bits) {
  double tol = std::ldexp(1.0, -static_cast<int>(bits / 4));
  return std::abs(z.im.to_double()) <= tol * std::max(1.0, std::abs(z.re.to_double()));
}

struct RealCounts {
  long positive = 0, negative = 0;
};

inline RealCounts count_real(const ZeroRun& run) {
  RealCounts rc;
  for (const auto& z : run.zeros.zeros) {
    if (!is_real_zero(z, run.precision_bits)) continue;
    if (z.re.sign() > 0) ++rc.positive;
    else if (z.re.sign() < 0) ++rc.negative;
  }
  return rc;
}

enum class ZeroClass { interval, loop, outlier };

struct ComparisonOptions {
  double classify_tol = 0.1;
  bits_t precision_bits = 0;  // 0: working_precision
  double max_step = 0;        // contour step, 0: default
  std::vector<double> sweep{0.05, 0.1, 0.2};
};

struct SweepRow {
  double delta;
  long loop_count, interval_count, outlier_count;
};

struct ComparisonReport {
  long n = 0;
  Decimal alpha;
  double A_n = 0;
  double r_hat = 0;
  double max_deviation = 0;
  long loop_count = 0, interval_count = 0, outlier_count = 0;
  long origin_multiplicity = 0;
  double ks_interval = 0, ks_loop = 0;
  double mass_error = 0;
  double residual_max = 0;
  double loop_fraction = 0;
  bits_t precision_bits = 0;
  bool valid = false;
  std::string error;
  std::vector<SweepRow> sweep;
  std::vector<cd> zeros;  // away from the origin, sorted
  std::vector<ZeroClass> classes;
};

// Distance from z to the loop part of the limit set ({0} for the atom).
inline double loop_distance(const std::optional<contour::ContourPolyline>& g, cd z) {
  return g ? contour::polyline_distance(*g, z) : std::abs(z);
}

inline double interval_distance(const PotentialContext& c, cd z) {
  double x = std::clamp(z.real(), c.beta1, c.beta2);
  return std::abs(z - cd(x, 0));
}

inline ZeroClass classify(const PotentialContext& c, const std::optional<contour::ContourPolyline>& g, cd z,
                          double delta) {
  double di = interval_distance(c, z), dl = loop_distance(g, z);
  bool near_i = di < delta && std::abs(z.imag()) < delta, near_l = dl < delta;
  // both neighbourhoods overlap near beta1: the nearer set wins
  if (near_i && (!near_l || di <= dl)) return ZeroClass::interval;
  if (near_l) return ZeroClass::loop;
  return ZeroClass::outlier;
}

// Kolmogorov-Smirnov distance between the sample and a continuous CDF (values already mapped
// through that CDF, so the reference is uniform on [0,1]).
inline double ks_uniform(std::vector<double> u) {
  if (u.empty()) return 0;
  std::sort(u.begin(), u.end());
  double m = static_cast<double>(u.size()), d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max({d, u[i] - i / m, (i + 1) / m - u[i]});
  return d;
}

inline ComparisonReport run_comparison(long n, const Decimal& alpha, const ComparisonOptions& opts = {}) {
  ComparisonReport rep;
  rep.n = n;
  rep.alpha = alpha;
  mpq_class Aq = -alpha.rational() / n;
  if (Aq <= 0 || Aq >= 1) throw DomainError("-alpha/n must lie in (0,1)");
  rep.A_n = Aq.get_d();
  rep.r_hat = r_hat_of(n, alpha);

  auto c = landscape::make_context(rep.A_n);
  std::optional<contour::ContourPolyline> gamma;
  if (!std::isinf(rep.r_hat)) gamma = contour::trace_gamma(c, rep.r_hat, opts.max_step);

  ZeroRun run;
  try {
    run = compute_zeros(n, alpha, opts.precision_bits, gamma ? &*gamma : nullptr);
  } catch (const NonConvergence& e) {
    rep.error = e.what();
    rep.valid = false;
    return rep;
  }
  rep.precision_bits = run.precision_bits;
  rep.origin_multiplicity = run.zeros.origin_multiplicity;
  rep.zeros = to_double(run.zeros);
  for (const auto& r : run.zeros.residuals) rep.residual_max = std::max(rep.residual_max, r.to_double());

  std::vector<double> xs, us;
  std::optional<measure::MeasureSpec> ms;
  std::vector<double> cum;
  if (gamma) {
    ms = measure::make_measure(c, *gamma);
    cum = measure::loop_cumulative(*ms);
  }
  double imass = measure::interval_mass(c);
  for (cd z : rep.zeros) {
    ZeroClass k = classify(c, gamma, z, opts.classify_tol);
    rep.classes.push_back(k);
    rep.max_deviation = std::max(rep.max_deviation, std::min(interval_distance(c, z), loop_distance(gamma, z)));
    if (k == ZeroClass::interval) {
      ++rep.interval_count;
      xs.push_back(measure::cdf_interval(c, std::clamp(z.real(), c.beta1, c.beta2)) / imass);
    } else if (k == ZeroClass::loop) {
      ++rep.loop_count;
      if (ms) us.push_back(measure::loop_cdf_position(*ms, cum, z));
    } else {
      ++rep.outlier_count;
    }
  }
  rep.ks_interval = ks_uniform(xs);
  rep.ks_loop = ks_uniform(us);
  rep.loop_fraction = static_cast<double>(rep.loop_count + rep.origin_multiplicity) / n;
  rep.mass_error = std::abs(rep.loop_fraction - rep.A_n);
  for (double d : opts.sweep) {
    SweepRow row{d, 0, 0, 0};
    for (cd z : rep.zeros) {
      switch (classify(c, gamma, z, d)) {
        case ZeroClass::interval: ++row.interval_count; break;
        case ZeroClass::loop: ++row.loop_count; break;
        case ZeroClass::outlier: ++row.outlier_count; break;
      }
    }
    rep.sweep.push_back(row);
  }
  rep.valid = true;
  return rep;
}

struct StudyResult {
  std::vector<ComparisonReport> reports;  // sorted by n
  bool max_deviation_trend = true, ks_interval_trend = true, ks_loop_trend = true;
};

// Non-increasing up to a relative slack; values under floor count as zero (roundoff).
inline constexpr double kTrendFloor = 1e-12;

inline bool non_increasing(const std::vector<double>& v, double slack, double floor = kTrendFloor) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > floor && v[i] > (1 + slack) * v[i - 1]) return false;
  return true;
}

inline StudyResult convergence_study(const ParameterPlan& plan, const ComparisonOptions& opts = {}, double slack = 0.2) {
  StudyResult out;
  for (std::size_t i = 0; i < plan.n_values.size(); ++i) out.reports.push_back(run_comparison(plan.n_values[i], plan.alphas[i], opts));
  std::sort(out.reports.begin(), out.reports.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  std::vector<double> md, ki, kl;
  for (const auto& r : out.reports) {
    md.push_back(r.max_deviation);
    ki.push_back(r.ks_interval);
    kl.push_back(r.ks_loop);
  }
  out.max_deviation_trend = non_increasing(md, slack);
  out.ks_interval_trend = non_increasing(ki, slack);
  out.ks_loop_trend = non_increasing(kl, slack);
  return out;
}

}  // namespace lagzero::harness
