// Zeros of L_40^(-32.4)(40 z) next to the predicted limit set.
#include <cstdio>

#include <lagzero/harness.hpp>

int main() {
  using namespace lagzero;
  auto alpha = mp::Decimal::parse("-32.4");
  long n = 40;

  auto c = landscape::make_context(0.81);
  std::printf("beta1 = %.6f, beta2 = %.6f\n", c.beta1, c.beta2);

  auto rep = harness::run_comparison(n, alpha);
  std::printf("r_hat = %.4f, zeros on the loop %ld, on the interval %ld, outliers %ld\n", rep.r_hat, rep.loop_count,
              rep.interval_count, rep.outlier_count);
  std::printf("largest distance to the limit set %.4f, KS interval %.3f, KS loop %.3f\n", rep.max_deviation,
              rep.ks_interval, rep.ks_loop);

  auto run = harness::compute_zeros(n, alpha);
  auto real = harness::count_real(run);
  long expected = n - (-alpha).floor().get_si();
  std::printf("positive real zeros %ld (expected n - floor(-alpha) = %ld)\n", real.positive, expected);
}
