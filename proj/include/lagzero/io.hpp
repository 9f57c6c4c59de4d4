// CSV and JSON emission for polylines, zero sets, reports and density tables.
#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contour.hpp"
#include "harness.hpp"
#include "measure.hpp"

namespace lagzero::io {

using json = nlohmann::json;
using landscape::cd;

// Shortest round-trip text for a double.
inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string complex_text(cd z) {
  std::string im = num(std::abs(z.imag()));
  return num(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

// "3", "-1+2i", "2.5e-3-4i", "i", "-2i".
inline cd parse_complex(std::string s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw DomainError("empty complex number");
  auto real_part = [&](const std::string& u) -> double {
    std::size_t used = 0;
    double v = std::stod(u, &used);
    if (used != u.size()) throw DomainError("bad complex number: " + s);
    return v;
  };
  auto imag_part = [&](std::string u) -> double {
    u.pop_back();
    if (u.empty() || u == "+") return 1;
    if (u == "-") return -1;
    return real_part(u);
  };
  try {
    if (t.back() != 'i' && t.back() != 'j') return {real_part(t), 0};
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size() - 1; k-- > 1;)
      if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
        split = k;
        break;
      }
    if (split == std::string::npos) return {0, imag_part(t)};
    return {real_part(t.substr(0, split)), imag_part(t.substr(split))};
  } catch (const std::logic_error&) {
    throw DomainError("bad complex number: " + s);
  }
}

// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

// Polyline with explicit closure row and a winding footer.
inline void write_polyline_csv(std::ostream& os, const contour::ContourPolyline& g, bool warn_small = false) {
  csv_row(os, {"re", "im", "arclength"});
  for (std::size_t i = 0; i < g.size(); ++i) csv_row(os, {num(g.points[i].real()), num(g.points[i].imag()), num(g.arclengths[i])});
  csv_row(os, {num(g.points[0].real()), num(g.points[0].imag()), num(g.total_length)});
  os << "# winding=" << g.winding << "\r\n";
  if (g.best_effort) os << "# warning=best_effort\r\n";
  if (warn_small) os << "# warning=small_curve\r\n";
}

// Imaginary parts below 2^{-prec/4} max(1,|z|) are printed as 0.
inline void write_zeros_csv(std::ostream& os, const harness::ZeroRun& run) {
  csv_row(os, {"re", "im", "residual"});
  for (long k = 0; k < run.zeros.origin_multiplicity; ++k) csv_row(os, {"0", "0", "0"});
  for (std::size_t i = 0; i < run.zeros.size(); ++i) {
    const auto& z = run.zeros.zeros[i];
    std::string im = harness::is_real_zero(z, run.precision_bits) ? "0" : z.im.to_string(17);
    csv_row(os, {z.re.to_string(17), im, run.zeros.residuals[i].to_string(3)});
  }
}

inline const char* class_name(harness::ZeroClass k) {
  switch (k) {
    case harness::ZeroClass::interval: return "interval";
    case harness::ZeroClass::loop: return "loop";
    case harness::ZeroClass::outlier: return "outlier";
  }
  return "?";
}

// r_hat is infinite for integer alpha and is written as null.
inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json report_json(const harness::ComparisonReport& r) {
  json j;
  j["n"] = r.n;
  j["alpha"] = r.alpha.to_double();
  j["alpha_exact"] = r.alpha.to_string();
  j["r_hat"] = finite_or_null(r.r_hat);
  j["max_deviation"] = r.max_deviation;
  j["loop_count"] = r.loop_count;
  j["interval_count"] = r.interval_count;
  j["outlier_count"] = r.outlier_count;
  j["origin_multiplicity"] = r.origin_multiplicity;
  j["ks_interval"] = r.ks_interval;
  j["ks_loop"] = r.ks_loop;
  j["mass_error"] = r.mass_error;
  j["residual_max"] = r.residual_max;
  j["precision_bits"] = r.precision_bits;
  j["valid"] = r.valid;
  if (!r.error.empty()) j["error"] = r.error;
  json sw = json::array();
  for (const auto& s : r.sweep)
    sw.push_back({{"delta", s.delta}, {"loop_count", s.loop_count}, {"interval_count", s.interval_count},
                  {"outlier_count", s.outlier_count}});
  j["classification_sweep"] = sw;
  return j;
}

inline json study_json(const harness::StudyResult& s) {
  json arr = json::array();
  for (const auto& r : s.reports) arr.push_back(report_json(r));
  return arr;
}

inline void write_study_csv(std::ostream& os, const harness::StudyResult& s) {
  csv_row(os, {"n", "alpha", "r_hat", "max_deviation", "ks_interval", "ks_loop", "mass_error"});
  for (const auto& r : s.reports)
    csv_row(os, {std::to_string(r.n), r.alpha.to_string(), num(r.r_hat), num(r.max_deviation), num(r.ks_interval),
                 num(r.ks_loop), num(r.mass_error)});
}

inline void write_interval_density_csv(std::ostream& os, const landscape::PotentialContext& c, int points) {
  csv_row(os, {"x", "density"});
  for (int k = 0; k < points; ++k) {
    double x = c.beta1 + (c.beta2 - c.beta1) * k / std::max(1, points - 1);
    csv_row(os, {num(x), num(measure::mp_density(c, x))});
  }
}

inline void write_loop_density_csv(std::ostream& os, const measure::MeasureSpec& m) {
  const auto& g = *m.gamma;
  csv_row(os, {"re", "im", "arclength", "density"});
  for (std::size_t i = 0; i < g.size(); ++i)
    csv_row(os, {num(g.points[i].real()), num(g.points[i].imag()), num(g.arclengths[i]),
                 num(measure::nu_arclength_density(m, g.points[i]))});
}

}  // namespace lagzero::io
