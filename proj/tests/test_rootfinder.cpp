#include <gtest/gtest.h>

#include <lagzero/rootfinder.hpp>

#include <algorithm>
#include <random>

using namespace lagzero;
using laguerre::CoefficientList;
using mp::Complex;
using mp::Decimal;
using mp::Real;
using roots::cd;

namespace {

CoefficientList poly(std::initializer_list<double> c, mp::bits_t bits = 256) {
  CoefficientList cl;
  for (double v : c) cl.coeffs.emplace_back(v, bits);
  return cl;
}

cd dbl(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

double tol_for(mp::bits_t bits) { return std::ldexp(1.0, -static_cast<int>(bits / 2)); }

CoefficientList laguerre_monic(long n, const char* alpha) {
  return laguerre::monic_rescaled(laguerre::make_spec(n, Decimal::parse(alpha)));
}

roots::ZeroSet laguerre_zeros(long n, const char* alpha) {
  auto spec = laguerre::make_spec(n, Decimal::parse(alpha));
  auto cl = laguerre::monic_rescaled(spec);
  auto ctx = landscape::make_context((-Decimal::parse(alpha)).to_double() / n);
  double dist = Decimal::parse(alpha).dist_to_integers().to_double();
  double r_hat = -std::log(dist) / n;
  auto seeds = roots::initial_guesses(n, ctx, r_hat);
  return roots::find_zeros(cl, spec.precision_bits, tol_for(spec.precision_bits), seeds);
}

}  // namespace

TEST(FindZeros, Quadratic) {
  auto zs = roots::find_zeros(poly({0, -1, 1}), 256, tol_for(256));
  ASSERT_EQ(zs.size(), 2u);
  EXPECT_LT(std::abs(dbl(zs.zeros[0])), 1e-30);
  EXPECT_LT(std::abs(dbl(zs.zeros[1]) - 1.0), 1e-30);
}

TEST(FindZeros, ConjugatePairSorted) {
  auto zs = roots::find_zeros(poly({1, 0, 1}), 256, tol_for(256));
  ASSERT_EQ(zs.size(), 2u);
  EXPECT_LT(std::abs(dbl(zs.zeros[0]) - cd(0, -1)), 1e-30);
  EXPECT_LT(std::abs(dbl(zs.zeros[1]) - cd(0, 1)), 1e-30);
}

TEST(FindZeros, RejectsNonMonic) { EXPECT_THROW(roots::find_zeros(poly({1, 2}), 256, 1e-30), DomainError); }

TEST(FindZeros, NonConvergenceReported) {
  roots::FindOptions o;
  o.max_iterations = 1;
  EXPECT_THROW(roots::find_zeros(laguerre_monic(30, "-24.5"), 256, tol_for(256), {}, o), NonConvergence);
}

TEST(FindZeros, Vieta) {
  for (auto [n, a] : {std::pair{20L, "-16.3"}, std::pair{40L, "-32.4"}}) {
    auto cl = laguerre_monic(n, a);
    auto bits = laguerre::default_precision(n);
    auto zs = roots::find_zeros(cl, bits, tol_for(bits));
    Complex sum(cd(0), bits), prod(cd(1), bits);
    for (const auto& z : zs.zeros) {
      sum = sum + z;
      prod = prod * z;
    }
    // sum = -c_{n-1}, product = (-1)^n c_0
    Real c1 = cl.coeffs[n - 1], c0 = cl.coeffs[0];
    EXPECT_LT(((sum + Complex(Real(c1, bits), Real(0L, bits))).abs() / mp::abs(c1)).to_double(), 1e-40);
    Real want = n % 2 ? -c0 : c0;
    EXPECT_LT(((prod - Complex(want, Real(0L, bits))).abs() / mp::abs(c0)).to_double(), 1e-30);
  }
}

TEST(FindZeros, SeedPermutationInvariance) {
  auto cl = laguerre_monic(24, "-19.7");
  auto bits = laguerre::default_precision(24);
  auto seeds = roots::circle_seeds(cl);
  auto a = roots::find_zeros(cl, bits, tol_for(bits), seeds);
  std::mt19937 rng(3);
  std::shuffle(seeds.begin(), seeds.end(), rng);
  auto b = roots::find_zeros(cl, bits, tol_for(bits), seeds);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT((a.zeros[i] - b.zeros[i]).abs().to_double(), 1e-30);
}

TEST(FindZeros, ConjugateSymmetry) {
  auto zs = laguerre_zeros(40, "-32.4");
  std::vector<cd> z;
  for (const auto& w : zs.zeros) z.push_back(dbl(w));
  for (cd w : z) {
    double best = 1e300;
    for (cd v : z) best = std::min(best, std::abs(v - std::conj(w)));
    EXPECT_LT(best, 1e-25);
  }
}

TEST(FindZeros, RealZeroCounts) {
  struct Case {
    long n;
    const char* a;
    int pos, neg_max;
  };
  for (auto c : {Case{40, "-32.4", 8, 1}, Case{25, "-10.5", 15, 1}, Case{60, "-45.25", 15, 1}}) {
    auto zs = laguerre_zeros(c.n, c.a);
    double cut = std::ldexp(1.0, -static_cast<int>(zs.precision_bits / 4));
    int pos = 0, neg = 0;
    for (const auto& w : zs.zeros) {
      cd z = dbl(w);
      if (std::abs(z.imag()) > cut * std::max(1.0, std::abs(z.real()))) continue;
      (z.real() > 0 ? pos : neg)++;
    }
    EXPECT_EQ(pos, c.pos) << c.n << " " << c.a;
    EXPECT_LE(neg, c.neg_max) << c.n << " " << c.a;
  }
}

TEST(FindZeros, ResidualsBelowThreshold) {
  auto zs = laguerre_zeros(40, "-31.999999");
  ASSERT_EQ(zs.size(), 40u);
  for (const auto& r : zs.residuals) EXPECT_LE(r.to_double(), zs.threshold);
  auto cert = roots::certify(laguerre_monic(40, "-31.999999"), zs);
  EXPECT_FALSE(roots::any_suspect(cert));
}

TEST(Certify, FlagsPerturbedZero) {
  auto cl = poly({0, -1, 1});
  roots::ZeroSet zs;
  zs.precision_bits = 256;
  zs.threshold = 1e-30;
  zs.zeros = {Complex(cd(0), 256), Complex(cd(1 + 1e-8), 256)};
  zs.residuals = {Real(0L, 256), Real(0L, 256)};
  auto c = roots::certify(cl, zs);
  EXPECT_FALSE(c.suspect[0]);
  EXPECT_TRUE(c.suspect[1]);
  EXPECT_NEAR(c.residuals[1].to_double(), 1e-8, 1e-15);
  EXPECT_TRUE(roots::any_suspect(c));
}

TEST(Seeds, FallbackCircle) {
  auto s = roots::circle_seeds(poly({0, -1, 1}));
  ASSERT_EQ(s.size(), 2u);
  for (cd z : s) {
    EXPECT_NEAR(std::abs(z), 2.0, 1e-15);
    EXPECT_GT(std::abs(z.imag()), 0.1);
  }
}

TEST(Seeds, InitialGuessesSplit) {
  auto c = landscape::make_context(0.8);
  auto s = roots::initial_guesses(10, c, 0.0);
  ASSERT_EQ(s.size(), 10u);
  auto g = contour::trace_gamma(c, 0.0);
  for (int j = 0; j < 8; ++j) EXPECT_LT(contour::polyline_distance(g, s[j]), 1e-12);
  for (int j = 8; j < 10; ++j) {
    EXPECT_GE(s[j].real(), c.beta1);
    EXPECT_LE(s[j].real(), c.beta2);
    EXPECT_LT(std::abs(s[j].imag()), 0.01);
  }
  auto atom = roots::initial_guesses(10, c, std::numeric_limits<double>::infinity());
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(atom[j]), 0.05, 1e-15);
}

TEST(Seeds, IntervalQuantiles) {
  auto c = landscape::make_context(0.6);
  auto s = roots::interval_seeds(5, c);
  for (std::size_t j = 0; j < s.size(); ++j) {
    double q = measure::cdf_interval(c, s[j].real()) / measure::interval_mass(c);
    EXPECT_NEAR(q, (j + 0.5) / 5, 1e-9);
  }
}
