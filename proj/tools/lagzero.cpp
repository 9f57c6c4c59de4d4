// lagzero: command-line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <lagzero/asymptotics.hpp>
#include <lagzero/harness.hpp>
#include <lagzero/io.hpp>

using namespace lagzero;
using landscape::cd;

namespace {

// exit codes
constexpr int kDomain = 2, kClosure = 3, kNonConvergence = 4, kAsympDomain = 5;

struct AsympDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw DomainError("cannot open " + path);
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

mp::bits_t precision_or_env(long flag) {
  if (flag > 0) return flag;
  if (const char* e = std::getenv("LAGZERO_PRECISION")) {
    long v = std::strtol(e, nullptr, 10);
    if (v < 64) throw DomainError("LAGZERO_PRECISION must be an integer >= 64");
    return v;
  }
  return 0;
}

double parse_r(const std::string& s) {
  if (s == "inf" || s == "infinity") return harness::kInf;
  std::size_t used = 0;
  double r = std::stod(s, &used);
  if (used != s.size() || !(r >= 0)) throw DomainError("r must be a nonnegative number or inf");
  return r;
}

mp::Decimal parse_alpha(const std::string& s) {
  try {
    return mp::Decimal::parse(s);
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
}

struct Flags {
  double A = 0;
  std::string r = "0", alpha, out, csv, regime = "oscillatory", kind = "interval";
  long n = 0, precision = 0, points = 101;
  double step = 0, delta = 0.1;
  std::vector<long> ns;
  std::vector<std::string> alphas, zpoints;
  std::vector<double> grid;
};

int cmd_betas(const Flags& f) {
  auto c = landscape::make_context(f.A);
  io::json j{{"A", f.A}, {"beta1", c.beta1}, {"beta2", c.beta2}};
  Output o(f.out);
  o.os() << j.dump(2) << "\n";
  return 0;
}

int cmd_contour(const Flags& f) {
  auto c = landscape::make_context(f.A);
  double r = parse_r(f.r);
  if (std::isinf(r)) throw DomainError("Gamma_inf is the origin; give a finite r");
  bool small = r > 30;
  if (small) std::cerr << "warning: r > 30, the curve hugs the origin\n";
  auto g = contour::trace_gamma(c, r, f.step);
  Output o(f.out);
  io::write_polyline_csv(o.os(), g, small);
  return 0;
}

int cmd_density(const Flags& f) {
  auto c = landscape::make_context(f.A);
  Output o(f.out);
  if (f.kind == "interval") {
    io::write_interval_density_csv(o.os(), c, static_cast<int>(f.points));
  } else {
    double r = parse_r(f.r);
    if (std::isinf(r)) throw DomainError("the atom has no density");
    io::write_loop_density_csv(o.os(), measure::make_measure(c, r, f.step));
  }
  return 0;
}

int cmd_zeros(const Flags& f) {
  if (f.n < 1) throw DomainError("n must be >= 1");
  auto run = harness::compute_zeros(f.n, parse_alpha(f.alpha), precision_or_env(f.precision));
  Output o(f.out);
  io::write_zeros_csv(o.os(), run);
  return 0;
}

int cmd_verify(const Flags& f) {
  if (f.n < 2) throw DomainError("n must be >= 2");
  harness::ComparisonOptions opts;
  opts.classify_tol = f.delta;
  opts.precision_bits = precision_or_env(f.precision);
  opts.max_step = f.step;
  auto rep = harness::run_comparison(f.n, parse_alpha(f.alpha), opts);
  Output o(f.out);
  o.os() << io::report_json(rep).dump(2) << "\n";
  return rep.valid ? 0 : kNonConvergence;
}

int cmd_study(const Flags& f) {
  std::vector<mp::Decimal> overrides;
  for (const auto& a : f.alphas) overrides.push_back(parse_alpha(a));
  auto plan = harness::make_plan(f.A, parse_r(f.r), f.ns, overrides);
  harness::ComparisonOptions opts;
  opts.classify_tol = f.delta;
  opts.precision_bits = precision_or_env(f.precision);
  opts.max_step = f.step;
  auto st = harness::convergence_study(plan, opts);
  Output o(f.out);
  o.os() << io::study_json(st).dump(2) << "\n";
  if (!f.csv.empty()) {
    Output c(f.csv);
    io::write_study_csv(c.os(), st);
  }
  std::cerr << "trend max_deviation " << (st.max_deviation_trend ? "ok" : "violated") << ", ks_interval "
            << (st.ks_interval_trend ? "ok" : "violated") << ", ks_loop " << (st.ks_loop_trend ? "ok" : "violated")
            << "\n";
  return 0;
}

int cmd_asymp(const Flags& f) {
  if (f.n < 2) throw DomainError("n must be >= 2");
  auto alpha = parse_alpha(f.alpha);
  mpq_class Aq = -alpha.rational() / f.n;
  if (Aq <= 0 || Aq >= 1) throw DomainError("-alpha/n must lie in (0,1)");
  auto c = landscape::make_context(Aq.get_d());
  mp::bits_t bits = precision_or_env(f.precision);
  if (!bits) bits = laguerre::default_precision(f.n);
  Output o(f.out);
  io::csv_row(o.os(), {"point", "exact", "predicted", "rel_error"});
  try {
    if (f.regime == "oscillatory") {
      std::vector<double> xs;
      if (!f.zpoints.empty()) {
        for (const auto& p : f.zpoints) xs.push_back(io::parse_complex(p).real());
      } else {
        double lo = f.grid.size() == 3 ? f.grid[0] : c.beta1 + 0.2;
        double hi = f.grid.size() == 3 ? f.grid[1] : c.beta2 - 0.2;
        int cnt = f.grid.size() == 3 ? static_cast<int>(f.grid[2]) : 20;
        for (int k = 0; k < cnt; ++k) xs.push_back(cnt > 1 ? lo + (hi - lo) * k / (cnt - 1) : lo);
      }
      auto m0 = measure::make_measure(c, 0.0);
      double ell = landscape::ell_constant(m0).euler_lagrange();
      for (double x : xs) {
        auto p = asymp::oscillatory_value(f.n, c, ell, x);
        double ex = asymp::laguerre_scaled(f.n, alpha, x, p.log_scale, bits);
        double pr = p.value.real();
        io::csv_row(o.os(), {io::num(x), io::num(ex), io::num(pr), io::num(std::abs(ex / pr - 1))});
      }
      o.os() << "# values divided by exp(log(n^n/n!) + n Re g_n(x))\r\n";
    } else if (f.regime == "outer") {
      auto m0 = measure::make_measure(c, 0.0);
      for (const auto& s : f.zpoints) {
        cd z = io::parse_complex(s);
        cd pr = asymp::outer_ratio(c, f.n, z).value;
        cd ex = asymp::outer_exact(f.n, alpha, m0, z, bits);
        io::csv_row(o.os(), {io::complex_text(z), io::complex_text(ex), io::complex_text(pr), io::num(std::abs(ex / pr - 1.0))});
      }
      o.os() << "# exact = P_n(z) exp(-n g_n(z)), predicted = N11(z)\r\n";
    } else if (f.regime == "nth_root") {
      double r = f.r == "auto" ? harness::r_hat_of(f.n, alpha) : parse_r(f.r);
      auto m = measure::make_measure(c, r, f.step);
      for (const auto& s : f.zpoints) {
        cd z = io::parse_complex(s);
        auto [e, p] = asymp::nth_root_exponent(f.n, alpha, m, z, bits);
        io::csv_row(o.os(), {io::complex_text(z), io::num(e), io::num(p), io::num(std::abs(e - p) / std::abs(p))});
      }
    } else {
      throw DomainError("unknown regime " + f.regime);
    }
  } catch (const DomainError& e) {
    throw AsympDomain(e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeros, limit sets and asymptotics of Laguerre polynomials with varying parameter"};
  app.require_subcommand(1);
  Flags f;

  auto* betas = app.add_subcommand("betas", "endpoints beta1, beta2 as JSON");
  betas->add_option("--A", f.A, "A in (0,1]")->required();
  betas->add_option("--out", f.out, "output file (default stdout)");

  auto* contour = app.add_subcommand("contour", "trace Gamma_r as a CSV polyline");
  contour->add_option("--A", f.A)->required();
  contour->add_option("--r", f.r, "level r >= 0")->required();
  contour->add_option("--step", f.step, "max step (default (beta2-beta1)/400)");
  contour->add_option("--out", f.out);

  auto* density = app.add_subcommand("density", "density table of the limit measure");
  density->add_option("--A", f.A)->required();
  density->add_option("--kind", f.kind, "interval | loop")->check(CLI::IsMember({"interval", "loop"}));
  density->add_option("--r", f.r, "loop level (kind=loop)");
  density->add_option("--points", f.points, "grid size (kind=interval)")->check(CLI::Range(2, 1000000));
  density->add_option("--step", f.step);
  density->add_option("--out", f.out);

  auto* zeros = app.add_subcommand("zeros", "zeros of L_n^(alpha)(n z) as CSV");
  zeros->add_option("--n", f.n)->required();
  zeros->add_option("--alpha", f.alpha, "exact decimal string")->required();
  zeros->add_option("--precision", f.precision, "working precision in bits (env LAGZERO_PRECISION)");
  zeros->add_option("--out", f.out);

  auto* verify = app.add_subcommand("verify", "compare zeros with the predicted limit set (JSON report)");
  verify->add_option("--n", f.n)->required();
  verify->add_option("--alpha", f.alpha)->required();
  verify->add_option("--delta", f.delta, "classification tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--precision", f.precision);
  verify->add_option("--step", f.step);
  verify->add_option("--out", f.out);

  auto* study = app.add_subcommand("study", "convergence study over a parameter plan");
  study->add_option("--A", f.A)->required();
  study->add_option("--r", f.r, "decay rate of dist(alpha,Z), or inf");
  study->add_option("--n", f.ns, "degrees")->required()->delimiter(',');
  study->add_option("--alphas", f.alphas, "explicit alphas, one per n")->delimiter(',');
  study->add_option("--delta", f.delta)->check(CLI::PositiveNumber);
  study->add_option("--precision", f.precision);
  study->add_option("--step", f.step);
  study->add_option("--out", f.out, "JSON array");
  study->add_option("--csv", f.csv, "CSV summary");

  auto* asymp = app.add_subcommand("asymp", "asymptotic formulas against exact evaluation");
  asymp->add_option("--n", f.n)->required();
  asymp->add_option("--alpha", f.alpha)->required();
  asymp->add_option("--regime", f.regime, "oscillatory | outer | nth_root")
      ->check(CLI::IsMember({"oscillatory", "outer", "nth_root"}));
  asymp->add_option("--points", f.zpoints, "evaluation points, e.g. 4,3+2i")->delimiter(',');
  asymp->add_option("--grid", f.grid, "lo,hi,count for the oscillatory regime")->delimiter(',')->expected(3);
  asymp->add_option("--r", f.r, "loop level for nth_root (default: from alpha)")->default_str("auto");
  asymp->add_option("--precision", f.precision);
  asymp->add_option("--step", f.step);
  asymp->add_option("--out", f.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kDomain;
  }
  if (asymp->parsed() && asymp->count("--r") == 0) f.r = "auto";

  try {
    if (betas->parsed()) return cmd_betas(f);
    if (contour->parsed()) return cmd_contour(f);
    if (density->parsed()) return cmd_density(f);
    if (zeros->parsed()) return cmd_zeros(f);
    if (verify->parsed()) return cmd_verify(f);
    if (study->parsed()) return cmd_study(f);
    if (asymp->parsed()) return cmd_asymp(f);
  } catch (const AsympDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAsympDomain;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const ClosureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kClosure;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
