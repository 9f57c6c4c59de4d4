#include <gtest/gtest.h>

#include <lagzero/landscape.hpp>

#include <random>

#include "oracles.hpp"

using namespace lagzero;
using namespace lagzero::landscape;

namespace {

// fourth-order central difference of phi along direction u (|u| = 1)
cd phi_derivative(const PotentialContext& c, cd z, cd u, double h) {
  auto f = [&](double t) { return phi_eval(c, z + t * u); };
  cd dd = (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h);
  return dd / u;
}

}  // namespace

TEST(Context, Examples) {
  auto c = make_context(0.799999975);
  EXPECT_NEAR(c.beta1, 0.3055727780983864, 1e-12);
  EXPECT_NEAR(c.beta2, 2.0944272719016137, 1e-12);
  auto one = make_context(1.0);
  EXPECT_EQ(one.beta1, 1.0);
  EXPECT_EQ(one.beta2, 1.0);
  auto q = make_context(0.75);
  EXPECT_DOUBLE_EQ(q.beta1, 0.25);
  EXPECT_DOUBLE_EQ(q.beta2, 2.25);
  EXPECT_THROW(make_context(0.0), DomainError);
  EXPECT_THROW(make_context(1.5), DomainError);
  EXPECT_THROW(make_context(-0.2), DomainError);
}

TEST(Context, BetaIdentities) {
  for (double A : {1e-6, 0.01, 0.3, 0.5, 0.8, 0.81, 0.99, 0.999999}) {
    auto c = make_context(A);
    EXPECT_NEAR(c.beta1 * c.beta2, A * A, 1e-15 * A * A) << A;
    EXPECT_NEAR(c.beta1 + c.beta2, 2 * (2 - A), 1e-14) << A;
    EXPECT_GT(c.beta1, 0);
    EXPECT_LE(c.beta1, 1);
    EXPECT_GE(c.beta2, 1);
  }
}

TEST(R, Examples) {
  auto c = make_context(0.8);
  EXPECT_NEAR(R_eval(c, 0).real(), -0.8, 1e-15);
  EXPECT_EQ(R_eval(c, 0).imag(), 0);
  EXPECT_NEAR(std::abs(R_eval(c, 1e6) / 1e6 - 1.0), 0, 2e-6);
  double mid = 0.5 * (c.beta1 + c.beta2);
  cd up = R_eval(c, mid, Side::above);
  EXPECT_NEAR(up.real(), 0, 1e-15);
  EXPECT_NEAR(up.imag(), 0.5 * (c.beta2 - c.beta1), 1e-14);
  EXPECT_THROW(R_eval(c, mid), BranchCutError);
}

TEST(R, BoundaryValuesOnCut) {
  auto c = make_context(0.6);
  for (double t : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    double x = c.beta1 + t * (c.beta2 - c.beta1);
    cd p = R_eval(c, x, Side::above), m = R_eval(c, x, Side::below);
    double q = (x - c.beta1) * (c.beta2 - x);
    EXPECT_NEAR((p * m).real(), q, 1e-14);
    EXPECT_NEAR((p * p).real(), -q, 1e-14);
    EXPECT_NEAR(std::abs(p - std::conj(m)), 0, 1e-15);
    // one-sided limits agree with nearby off-axis values
    EXPECT_NEAR(std::abs(R_eval(c, cd(x, 1e-12)) - p), 0, 1e-5);
    EXPECT_NEAR(std::abs(R_eval(c, cd(x, -1e-12)) - m), 0, 1e-5);
  }
}

TEST(R, NegativeOnLeftHalfLine) {
  auto c = make_context(0.8);
  for (double x : {-100.0, -1.0, -1e-3, 0.1, 0.3}) {
    cd v = R_eval(c, x);
    EXPECT_LT(v.real(), 0);
    EXPECT_EQ(v.imag(), 0);
    EXPECT_NEAR(std::abs(R_eval(c, cd(x, 1e-13)) - v), 0, 1e-9);
    EXPECT_NEAR(std::abs(R_eval(c, cd(x, -1e-13)) - v), 0, 1e-9);
  }
}

TEST(Phi, AtBeta1AndOrigin) {
  auto c = make_context(0.8);
  EXPECT_EQ(phi_eval(c, cd(c.beta1, 0)), cd(0));
  EXPECT_THROW(phi_eval(c, 0), DomainError);
  EXPECT_THROW(phi_eval(c, cd(-1, 0)), BranchCutError);
}

TEST(Phi, JumpOnNegativeAxis) {
  for (double A : {0.5, 0.8, 0.99}) {
    auto c = make_context(A);
    for (double x : {-1e-6, -1e-3, -0.05, -0.1, -0.3, -0.7, -1.0, -3.0, -10.0, -50.0}) {
      cd j = phi_eval(c, x, Side::above) - phi_eval(c, x, Side::below);
      EXPECT_NEAR(j.real(), 0, 1e-10) << A << " " << x;
      EXPECT_NEAR(j.imag(), -A * kPi, 1e-10) << A << " " << x;
    }
  }
}

// Closed-form antiderivative below beta1.
TEST(Phi, RealPartMatchesClosedForm) {
  for (double A : {0.5, 0.8, 0.99}) {
    auto c = make_context(A);
    for (double x : {-20.0, -2.0, -0.5, -0.1, -1e-4, 0.5 * c.beta1, 0.99 * c.beta1}) {
      double ref = oracle::re_phi_closed_form(c.beta1, c.beta2, x);
      Side s = x < 0 ? Side::above : Side::off_axis;
      EXPECT_NEAR(phi_eval(c, x, s).real(), ref, 1e-10 * std::max(1.0, std::abs(ref))) << A << " " << x;
    }
  }
}

// The oracle itself: its derivative is R/(2x).
TEST(Phi, ClosedFormOracleSelfCheck) {
  auto c = make_context(0.8);
  for (double x : {-3.0, -0.4, 0.1, 0.25}) {
    double h = 1e-5;
    double fd = (oracle::re_phi_closed_form(c.beta1, c.beta2, x + h) - oracle::re_phi_closed_form(c.beta1, c.beta2, x - h)) / (2 * h);
    EXPECT_NEAR(fd, R_eval(c, x).real() / (2 * x), 1e-7);
  }
}

TEST(Phi, RealPositiveOnGap) {
  auto c = make_context(0.8);
  for (double t : {0.01, 0.3, 0.6, 0.9, 0.999}) {
    cd v = phi_eval(c, t * c.beta1);
    EXPECT_EQ(v.imag(), 0);
    EXPECT_GT(v.real(), 0);
  }
}

TEST(Phi, ZeroRealPartOnInterval) {
  for (double A : {0.5, 0.8}) {
    auto c = make_context(A);
    for (double t : {0.001, 0.1, 0.5, 0.9, 0.999}) {
      double x = c.beta1 + t * (c.beta2 - c.beta1);
      EXPECT_NEAR(phi_eval(c, x, Side::above).real(), 0, 1e-12);
      EXPECT_NEAR(phi_eval(c, x, Side::below).real(), 0, 1e-12);
    }
  }
}

TEST(Phi, DerivativeIsHalfROverZ) {
  auto c = make_context(0.8);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> re(-3, 4), im(0.05, 3);
  std::uniform_int_distribution<int> sgn(0, 1);
  int checked = 0;
  while (checked < 20) {
    cd z(re(rng), im(rng) * (sgn(rng) ? 1 : -1));
    if (std::abs(z) < 0.2) continue;
    cd ref = R_eval(c, z) / (2.0 * z);
    cd fd = phi_derivative(c, z, cd(1, 0), 1e-3);
    EXPECT_NEAR(std::abs(fd - ref), 0, 1e-8) << z;
    ++checked;
  }
}

TEST(Phi, ConjugateSymmetry) {
  auto c = make_context(0.7);
  for (cd z : {cd(0.3, 0.4), cd(-1, 2), cd(3, 0.01), cd(0.01, 0.02)})
    EXPECT_NEAR(std::abs(phi_eval(c, std::conj(z)) - std::conj(phi_eval(c, z))), 0, 1e-14);
}

// Re phi grows like -(A/2) log|z| at the origin.
TEST(Phi, LogarithmicNearOrigin) {
  auto c = make_context(0.8);
  double a = phi_eval(c, cd(-1e-6, 0), Side::above).real() + 0.4 * std::log(1e-6);
  double b = phi_eval(c, cd(-1e-9, 0), Side::above).real() + 0.4 * std::log(1e-9);
  EXPECT_NEAR(a, b, 1e-5);
  EXPECT_GT(phi_eval(c, cd(-1e-9, 0), Side::above).real(), 5);
}

TEST(PhiTilde, Basics) {
  auto c = make_context(0.8);
  EXPECT_EQ(phi_tilde_eval(c, cd(c.beta2, 0)), cd(0));
  cd v = phi_tilde_eval(c, cd(c.beta2 + 1, 0));
  EXPECT_EQ(v.imag(), 0);
  EXPECT_GT(v.real(), 0);
  EXPECT_THROW(phi_tilde_eval(c, cd(1.0, 0)), DomainError);
  for (cd z : {cd(3, 1), cd(-2, 0.5), cd(0.5, -0.3)})
    EXPECT_NEAR(std::abs(phi_tilde_eval(c, std::conj(z)) - std::conj(phi_tilde_eval(c, z))), 0, 1e-14);
}

// phi - phi_tilde is the constant i pi (1-A) on (beta2, inf) and in the upper half plane.
TEST(PhiTilde, OffsetFromPhi) {
  for (double A : {0.5, 0.8, 0.99}) {
    auto c = make_context(A);
    cd expect(0, kPi * (1 - A));
    for (cd z : {cd(c.beta2 + 1, 0), cd(c.beta2 + 0.01, 0), cd(10, 0), cd(2, 1), cd(-3, 0.5), cd(0.5, 2)}) {
      Side s = z.imag() == 0 ? Side::above : Side::off_axis;
      EXPECT_NEAR(std::abs(phi_eval(c, z, s) - phi_tilde_eval(c, z) - expect), 0, 1e-10) << A << " " << z;
    }
  }
}

TEST(CConstant, Examples) {
  auto c40 = c_constant(mpq_class(162, 5), 256);  // 32.4
  EXPECT_FALSE(c40.integer_parameter);
  EXPECT_EQ(c40.value.re.to_double(), 0);
  EXPECT_NEAR(c40.value.im.to_double(), 2 * std::sin(0.4 * kPi), 1e-15);
  EXPECT_NEAR(c40.value.im.to_double(), 1.902113, 1e-6);
  auto half = c_constant(mpq_class(1, 2), 256);
  EXPECT_EQ(half.value.im.to_double(), 2);
  auto near = c_constant(mpq_class(31999999, 1000000), 256);
  EXPECT_NEAR(std::abs(near.value.im.to_double()), 2 * std::sin(1e-6 * kPi), 1e-20);
  EXPECT_NEAR(std::abs(near.value.im.to_double()), 6.2832e-6, 1e-9);
  auto integer = c_constant(mpq_class(32), 256);
  EXPECT_TRUE(integer.integer_parameter);
  EXPECT_TRUE(integer.value.im.is_zero());
}

TEST(CConstant, ReductionUsesExactArgument) {
  // sin(pi (10^6 + 10^-20)) needs the argument reduced before rounding
  mpq_class t = mpq_class(1000000) + mpq_class(1) / mpq_class(mpz_class("100000000000000000000"));
  auto c = c_constant(t, 256);
  EXPECT_NEAR(c.value.im.to_double(), 2 * kPi * 1e-20, 1e-34);
}

TEST(Rate, Examples) {
  mp::Complex one(256);
  one.re.assign(1.0);
  EXPECT_DOUBLE_EQ(rate_from_c(17, one).value, 1.0);
  auto near = c_constant(mpq_class(31999999, 1000000), 256);
  auto r = rate_from_c(40, near.value);
  EXPECT_NEAR(r.value, std::pow(2 * std::sin(1e-6 * kPi), 1.0 / 40), 1e-14);
  EXPECT_NEAR(r.value, 0.74123, 1e-5);
  auto z = rate_from_c(40, c_constant(mpq_class(32), 256).value);
  EXPECT_TRUE(z.integer_parameter);
  EXPECT_EQ(z.value, 0);
  // bounded |c_n|: rate tends to 1
  mp::Complex c(256);
  c.im.assign(0.3);
  EXPECT_LT(std::abs(rate_from_c(10000, c).value - 1), 2e-4);
}
