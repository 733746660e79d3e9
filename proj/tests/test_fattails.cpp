#include <doctest.h>

#include <cmath>
#include <random>

#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/fattails.hpp"

using namespace tickvar;
using doctest::Approx;

TEST_CASE("solve_coeffs") {
  const auto zero = solve_coeffs(0.0);
  CHECK(std::abs(zero.C1) < 1e-15);
  CHECK(zero.C2 == Approx(1.0 / 6.0).epsilon(1e-15));

  const auto one = solve_coeffs(1.0);
  CHECK(one.C2 == Approx(2.0 / 17.5).epsilon(1e-14));
  CHECK(one.C1 == Approx(0.94285714285714286).epsilon(1e-14));

  const auto half = solve_coeffs(0.5);
  CHECK(half.C2 == Approx(0.13986013986013986).epsilon(1e-14));
  CHECK(half.C1 == Approx(0.48251748251748252).epsilon(1e-14));

  for (int i = 0; i <= 9; ++i) {
    const double z0 = 0.1 * i;
    const auto m = solve_coeffs(z0);
    CHECK(std::abs(m.C1 + 18.0 * m.C2 - 3.0) < 1e-12);
    CHECK(std::abs(m.C1 + 0.5 * z0 * z0 * m.C2 - z0) < 1e-12);
  }
  CHECK_THROWS_AS(solve_coeffs(6.0), DomainError);
  CHECK_THROWS_AS(solve_coeffs(-6.0), DomainError);
}

TEST_CASE("correction_term") {
  const auto m0 = solve_coeffs(0.0);
  CHECK(correction_term(6.0, m0) == Approx(-3.0).epsilon(1e-14));
  CHECK(correction_term(-6.0, m0) == Approx(3.0).epsilon(1e-14));
  for (double z0 : {0.2, 0.5, 0.9}) {
    const auto m = solve_coeffs(z0);
    CHECK(correction_term(z0, m) == Approx(-z0).epsilon(1e-13));
    // The shifted value z0 + correction is the origin of the normal frame.
    CHECK(std::abs(z0 + correction_term(z0, m)) < 1e-13);
  }
  CHECK_THROWS_AS(correction_term(0.0, m0), DomainError);
}

TEST_CASE("fat_tail_cdf") {
  CHECK(fat_tail_cdf(6.0, 0.0) == Approx(0.99865010196836991).epsilon(1e-14));
  CHECK(fat_tail_cdf(6.0, 0.0) < normal_cdf(6.0));
  CHECK(fat_tail_cdf(-6.0, 0.0) == Approx(0.0013498980316300945).epsilon(1e-13));
  CHECK(fat_tail_cdf(-6.0, 0.0) > normal_cdf(-6.0));
  for (double z0 : {0.1, 0.7}) CHECK(fat_tail_cdf(z0, z0) == normal_cdf(z0));
  CHECK(fat_tail_cdf(0.0, 0.5) == 0.5);
}

TEST_CASE("fat_tail_cdf odd symmetry and tail direction") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> zeta(-8.0, 8.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double z = zeta(gen);
    const double z0 = unit(gen);
    CHECK(std::abs(fat_tail_cdf(z, z0) + fat_tail_cdf(-z, z0) - 1.0) <= 1e-12);
    if (z > z0) CHECK(1.0 - fat_tail_cdf(z, z0) >= 1.0 - normal_cdf(z));
    if (z < -z0) CHECK(fat_tail_cdf(z, z0) >= normal_cdf(z));
  }
}

TEST_CASE("tail_excess") {
  CHECK(tail_excess(-3.0, 0.01, 50) > 0.0);
  CHECK(tail_excess(3.0, -0.01, 50) < 0.0);
  for (double z : {-2.0, 0.5, 4.0}) CHECK(tail_excess(z, 0.0, 30) == 0.0);
  CHECK_THROWS_AS(tail_excess(1.0, 1.0, 10), DomainError);
}

TEST_CASE("monotonicity violations are detected") {
  const auto r = check_monotonicity(0.5, 8.0, 1601);
  CHECK_FALSE(r.monotone);
  CHECK(r.first_decrease == Approx(6.0).epsilon(0.01));
  CHECK(r.max_drop > 0.0);
  CHECK(r.zero_jump == Approx(normal_cdf(0.25 / 12.0) - normal_cdf(-0.25 / 12.0)).epsilon(1e-12));
  CHECK(check_monotonicity(0.5, 5.9, 1001).monotone);
}

TEST_CASE("invert_distortion agrees with the quadratic root") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double u = normal(gen);
    const double z0 = unit(gen);
    const auto inv = invert_distortion(u, z0);
    const double floor_value = z0 * z0 / 12.0;
    const double peak = 3.0 + z0 * z0 / 12.0;
    const double a = std::abs(u);
    if (a <= floor_value) {
      CHECK(inv.status == InversionStatus::ZeroAtom);
      CHECK(inv.zeta == 0.0);
    } else if (a > peak) {
      CHECK(inv.status == InversionStatus::Saturated);
      CHECK(std::abs(inv.zeta) == 6.0);
    } else {
      // zeta^2 - 12 zeta + 12 a - z0^2 = 0, smaller root.
      const double root = 6.0 - std::sqrt(36.0 - 12.0 * a + z0 * z0);
      CHECK(inv.status == InversionStatus::Regular);
      CHECK(std::abs(std::abs(inv.zeta) - root) <= 1e-9);
      CHECK((inv.zeta > 0) == (u > 0));
    }
  }
  CHECK_THROWS_AS(invert_distortion(0.1, 6.0), DomainError);
  CHECK_THROWS_AS(invert_distortion(0.1, -0.1), DomainError);
}

TEST_CASE("simulate_histogram is deterministic and reports non-invertible draws") {
  HistogramOptions opt;
  opt.samples = 10'000;
  opt.bins = 20;
  opt.seed = 9;
  const auto a = simulate_histogram(opt);
  const auto b = simulate_histogram(opt);
  REQUIRE(a.bins.size() == 20);
  std::uint64_t model_total = a.model_outside;
  std::uint64_t normal_total = a.normal_outside;
  for (std::size_t i = 0; i < a.bins.size(); ++i) {
    CHECK(a.bins[i].count_model == b.bins[i].count_model);
    CHECK(a.bins[i].count_normal == b.bins[i].count_normal);
    model_total += a.bins[i].count_model;
    normal_total += a.bins[i].count_normal;
  }
  CHECK(model_total == opt.samples);
  CHECK(normal_total == opt.samples);
  CHECK(a.bins.front().left == -6.0);
  CHECK(a.bins.back().right == 6.0);
  CHECK(a.model_outside == 0);
  CHECK(a.non_invertible.count == b.non_invertible.count);
  CHECK(a.tails[0].model > a.tails[0].normal);

  opt.seed = 10;
  const auto c = simulate_histogram(opt);
  bool differs = false;
  for (std::size_t i = 0; i < a.bins.size(); ++i) differs |= a.bins[i].count_normal != c.bins[i].count_normal;
  CHECK(differs);

  opt.samples = 200'000;
  const auto big = simulate_histogram(opt);
  CHECK(big.non_invertible.count > 0);
  CHECK(big.non_invertible.zeta0_examples.size() == 8);
  CHECK(big.non_invertible.zeta0_min >= 0.0);
  CHECK(big.non_invertible.zeta0_max < 1.0);
  opt.strict = true;
  CHECK_THROWS_AS(simulate_histogram(opt), DomainError);

  opt.strict = false;
  opt.samples = 999;
  CHECK_THROWS_AS(simulate_histogram(opt), DomainError);
  opt.samples = 10'000;
  opt.bins = 19;
  CHECK_THROWS_AS(simulate_histogram(opt), DomainError);
}

TEST_CASE("closed form and exact coefficients coincide only at zeta0 = 0") {
  CHECK(closed_form_discrepancy(0.0, 6.0, 1201).max_abs < 1e-15);
  for (double z0 : {0.3, 0.6, 0.9}) CHECK(closed_form_discrepancy(z0, 6.0, 1201).max_abs > 1e-3);
}
