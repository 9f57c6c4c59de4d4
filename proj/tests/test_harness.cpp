#include <gtest/gtest.h>

#include <lagzero/io.hpp>

#include <algorithm>

using namespace lagzero;
using harness::ComparisonOptions;
using harness::ZeroClass;
using mp::Decimal;

namespace {

Decimal dec(const char* s) { return Decimal::parse(s); }

ComparisonOptions delta(double d) {
  ComparisonOptions o;
  o.classify_tol = d;
  return o;
}

void expect_accounting(const harness::ComparisonReport& r) {
  EXPECT_EQ(r.loop_count + r.interval_count + r.outlier_count + r.origin_multiplicity, r.n);
  EXPECT_GE(r.ks_interval, 0);
  EXPECT_LE(r.ks_interval, 1);
  EXPECT_GE(r.ks_loop, 0);
  EXPECT_LE(r.ks_loop, 1);
  EXPECT_GE(r.max_deviation, 0);
  for (const auto& row : r.sweep) EXPECT_EQ(row.loop_count + row.interval_count + row.outlier_count + r.origin_multiplicity, r.n);
}

}  // namespace

TEST(Dist, Examples) {
  EXPECT_EQ(harness::dist_to_integers(dec("-32.4")).rational(), mpq_class(2, 5));
  EXPECT_EQ(harness::dist_to_integers(dec("-31.999999")).rational(), mpq_class(1, 1000000));
  EXPECT_EQ(harness::dist_to_integers(dec("7")).rational(), 0);
  EXPECT_TRUE(std::isinf(harness::r_hat_of(40, dec("-32"))));
  EXPECT_NEAR(harness::r_hat_of(40, dec("-31.999999")), std::log(1e6) / 40, 1e-14);
}

TEST(Plan, Examples) {
  auto p = harness::make_plan(0.81, 0, {40}, {dec("-32.4")});
  EXPECT_EQ(p.alphas[0].rational(), mpq_class(-162, 5));
  auto q = harness::make_plan(0.8, harness::kInf, {40});
  EXPECT_EQ(q.alphas[0].rational(), -32);
  auto s = harness::make_plan(0.8, std::log(1e6) / 40, {40});
  EXPECT_LT(std::abs(mpq_class(s.alphas[0].rational() - mpq_class(-31999999, 1000000)).get_d()), 1e-20);
}

TEST(Plan, Invariants) {
  for (double A : {0.3, 0.5, 0.8, 0.95}) {
    for (double r : {0.0, 0.1, 1.0, harness::kInf}) {
      std::vector<long> ns{5, 20, 40, 80};
      auto p = harness::make_plan(A, r, ns);
      ASSERT_EQ(p.alphas.size(), ns.size());
      for (std::size_t i = 0; i < ns.size(); ++i) {
        long n = ns[i];
        mpq_class a = p.alphas[i].rational();
        EXPECT_LE(std::abs(mpq_class(-a / n).get_d() - A), 1.0 / n) << A << " " << r << " " << n;
        EXPECT_LT(a, 0);
        EXPECT_GT(a, -n);
        double d = p.alphas[i].dist_to_integers().to_double();
        if (std::isinf(r)) {
          EXPECT_EQ(d, 0);
        } else {
          double target = std::exp(-r * n);
          EXPECT_GT(d, 0);
          EXPECT_LE(d, 2 * target);
          EXPECT_GE(d, target / 2);
        }
      }
    }
  }
}

TEST(Plan, Errors) {
  EXPECT_THROW(harness::make_plan(0, 0, {10}), PlanError);
  EXPECT_THROW(harness::make_plan(1, 0, {10}), PlanError);
  EXPECT_THROW(harness::make_plan(0.5, -1, {10}), PlanError);
  EXPECT_THROW(harness::make_plan(0.5, 0, {1}), PlanError);
  EXPECT_THROW(harness::make_plan(0.5, 0, {10}, {dec("-12")}), PlanError);
  EXPECT_THROW(harness::make_plan(0.5, 0, {10, 20}, {dec("-5.5")}), PlanError);
}

TEST(Plan, RHatReproducesR) {
  auto p = harness::make_plan(0.8, 1.0, {20, 40});
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(std::abs(harness::r_hat_of(p.n_values[i], p.alphas[i]) - 1.0), 1e-12);
}

TEST(Comparison, SplitAt32Point4) {
  auto r = harness::run_comparison(40, dec("-32.4"), delta(0.15));
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.interval_count, 8);
  EXPECT_EQ(r.loop_count, 32);
  EXPECT_EQ(r.outlier_count, 0);
  expect_accounting(r);
}

TEST(Comparison, ClusterNearOrigin) {
  auto r = harness::run_comparison(40, dec("-31.999999"), delta(0.15));
  ASSERT_TRUE(r.valid);
  double re_max = -1e300;
  for (std::size_t i = 0; i < r.zeros.size(); ++i)
    if (r.classes[i] == ZeroClass::loop) re_max = std::max(re_max, r.zeros[i].real());
  EXPECT_NEAR(re_max, 0.14, 0.01);
  expect_accounting(r);
}

TEST(Comparison, IntegerAlpha) {
  auto r = harness::run_comparison(40, dec("-32"), delta(0.15));
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.origin_multiplicity, 32);
  EXPECT_EQ(r.interval_count, 8);
  EXPECT_EQ(r.loop_count, 0);
  EXPECT_TRUE(std::isinf(r.r_hat));
  expect_accounting(r);
}

TEST(Comparison, RejectsBadAlpha) {
  EXPECT_THROW(harness::run_comparison(10, dec("1.5")), DomainError);
  EXPECT_THROW(harness::run_comparison(10, dec("-10.5")), DomainError);
}

TEST(Zeros, PositiveCountMatchesFloor) {
  for (auto [n, a] : {std::pair{40L, "-32.4"}, std::pair{25L, "-10.5"}, std::pair{60L, "-45.25"}, std::pair{40L, "-31.999999"}}) {
    auto run = harness::compute_zeros(n, dec(a));
    auto rc = harness::count_real(run);
    EXPECT_EQ(rc.positive, n - (-dec(a)).floor()) << n << " " << a;
    EXPECT_LE(rc.negative, 1) << n << " " << a;
  }
}

// Loop zeros move toward the origin as alpha approaches an integer.
TEST(Sensitivity, MinModulusNonIncreasing) {
  double prev = 1e300;
  for (const char* a : {"-31.6", "-31.9", "-31.99", "-31.999", "-31.9999", "-31.99999", "-31.999999"}) {
    auto r = harness::run_comparison(40, dec(a), delta(0.15));
    ASSERT_TRUE(r.valid) << a;
    double m = 1e300;
    for (std::size_t i = 0; i < r.zeros.size(); ++i)
      if (r.classes[i] == ZeroClass::loop) m = std::min(m, std::abs(r.zeros[i]));
    EXPECT_LE(m, prev * (1 + 1e-9)) << a;
    prev = m;
  }
}

TEST(Report, Deterministic) {
  auto a = io::report_json(harness::run_comparison(30, dec("-24.3"))).dump();
  auto b = io::report_json(harness::run_comparison(30, dec("-24.3"))).dump();
  EXPECT_EQ(a, b);
}

TEST(Study, AtomCase) {
  auto plan = harness::make_plan(0.8, harness::kInf, {20, 40, 80});
  auto st = harness::convergence_study(plan);
  ASSERT_EQ(st.reports.size(), 3u);
  double prev = 1e300;
  for (const auto& r : st.reports) {
    expect_accounting(r);
    EXPECT_EQ(r.outlier_count, 0);
    // nonzero zeros sit on the interval itself; only roundoff is left
    EXPECT_LT(r.max_deviation, harness::kTrendFloor);
    EXPECT_LE(r.max_deviation, std::max(prev, harness::kTrendFloor));
    prev = r.max_deviation;
  }
  EXPECT_TRUE(st.max_deviation_trend);
}

TEST(Study, LevelZeroKsDecreasing) {
  auto st = harness::convergence_study(harness::make_plan(0.8, 0, {20, 40, 80}));
  ASSERT_EQ(st.reports.size(), 3u);
  EXPECT_LT(st.reports[1].ks_interval, st.reports[0].ks_interval);
  EXPECT_LT(st.reports[2].ks_interval, st.reports[1].ks_interval);
  EXPECT_TRUE(st.ks_interval_trend);
  EXPECT_TRUE(st.ks_loop_trend);
}

TEST(Trend, FloorAndSlack) {
  EXPECT_TRUE(harness::non_increasing({1.0, 1.1, 0.5}, 0.2));
  EXPECT_FALSE(harness::non_increasing({1.0, 1.3}, 0.2));
  EXPECT_TRUE(harness::non_increasing({1e-155, 1e-100}, 0.2));
}

TEST(Ks, Uniform) {
  EXPECT_EQ(harness::ks_uniform({}), 0);
  EXPECT_DOUBLE_EQ(harness::ks_uniform({0.5}), 0.5);
  EXPECT_NEAR(harness::ks_uniform({0.125, 0.375, 0.625, 0.875}), 0.125, 1e-15);
}
