#include <doctest.h>

#include <cmath>

#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/indicator.hpp"

using namespace tickvar;
using doctest::Approx;

namespace {

TickSeries series_of(const std::vector<double>& prices, Timestamp step = 1000) {
  std::vector<TickPoint> pts;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    pts.push_back({static_cast<Timestamp>(i) * step, prices[i]});
  }
  return TickSeries(std::move(pts));
}

}  // namespace

TEST_CASE("moments_from_alpha") {
  auto m = moments_from_alpha(50, 0.1, 1.0);
  CHECK(m.mu == Approx(-10.0).epsilon(1e-14));
  CHECK(m.sigma == Approx(std::sqrt(90.0)).epsilon(1e-14));
  m = moments_from_alpha(12, 0.0, 0.5);
  CHECK(m.mu == 0.0);
  CHECK(m.sigma == Approx(0.5 * std::sqrt(24.0)).epsilon(1e-15));
  m = moments_from_alpha(50, -0.1, 2.0);
  CHECK(m.mu == Approx(20.0).epsilon(1e-14));
  CHECK(m.sigma == Approx(2.0 * std::sqrt(90.0)).epsilon(1e-14));
  CHECK_THROWS_AS(moments_from_alpha(50, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(moments_from_alpha(0, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(moments_from_alpha(5, 0.1, 0.0), DomainError);
}

TEST_CASE("alpha_from_moments") {
  auto e = alpha_from_moments(-10.0, 90.0);
  CHECK(e.n == 50);
  CHECK(e.alpha == Approx(0.1).epsilon(1e-14));
  e = alpha_from_moments(0.0, 40.0);
  CHECK(e.n == 20);
  CHECK(e.alpha == 0.0);
  e = alpha_from_moments(20.0, 180.0);
  CHECK(e.n == 100);
  CHECK(e.alpha == Approx(-0.1).epsilon(1e-14));
  CHECK_THROWS_AS(alpha_from_moments(1.0, 0.0), DomainError);
}

TEST_CASE("alpha_from_moments inverts moments_from_alpha") {
  for (std::int64_t n : {1, 3, 50, 777}) {
    for (int i = -98; i <= 98; i += 7) {
      const double alpha = i / 100.0;
      const auto m = moments_from_alpha(n, alpha, 1.0);
      const auto back = alpha_from_moments(m.mu, m.sigma * m.sigma);
      CHECK(back.n == n);
      CHECK(std::abs(back.alpha - alpha) <= 1e-12);
    }
  }
}

TEST_CASE("prob_decline") {
  CHECK(prob_decline(0.0, 3.0) == 0.5);
  CHECK(prob_decline(-10.0, std::sqrt(90.0)) == Approx(0.85407972742810575).epsilon(1e-13));
  CHECK(prob_decline(10.0, std::sqrt(90.0)) == Approx(0.14592027257189425).epsilon(1e-12));
  CHECK_THROWS_AS(prob_decline(0.0, 0.0), DomainError);
}

TEST_CASE("prob_decline through the moments equals prob_nonpositive") {
  for (std::int64_t n : {1, 10, 100, 10'000}) {
    for (int i = -99; i <= 99; ++i) {
      const double alpha = i / 100.0;
      const auto m = moments_from_alpha(n, alpha, 0.37);
      CHECK(std::abs(prob_decline(m.mu, m.sigma) - prob_nonpositive(alpha, n)) <= 1e-12);
    }
  }
}

TEST_CASE("variation_band") {
  auto b = variation_band(50, 0.1, 1.0, 0.0);
  CHECK(b.lower == Approx(-100.0).epsilon(1e-14));
  CHECK(b.upper == Approx(80.0).epsilon(1e-14));
  b = variation_band(8, 0.0, 0.5, 10.0);
  CHECK(b.lower == 2.0);
  CHECK(b.upper == 18.0);
  b = variation_band(50, -0.1, 1.0, 100.0);
  CHECK(b.lower == Approx(20.0).epsilon(1e-14));
  CHECK(b.upper == Approx(200.0).epsilon(1e-14));

  // Width 2 omega (2n - |z0|) shrinks as |alpha| grows.
  double prev = 4.0 * 20 * 1.5;
  CHECK(variation_band(20, 0.0, 1.5, 0.0).upper - variation_band(20, 0.0, 1.5, 0.0).lower == prev);
  for (int i = 1; i < 100; ++i) {
    const auto band = variation_band(20, i / 100.0, 1.5, 0.0);
    const double width = band.upper - band.lower;
    CHECK(width < prev);
    CHECK(band.lower <= band.upper);
    prev = width;
  }
}

TEST_CASE("rolling_indicator on an alternating series") {
  std::vector<double> prices;
  for (int i = 0; i < 400; ++i) prices.push_back(i % 2 == 0 ? 100.0 : 101.0);
  const auto run = rolling_indicator(series_of(prices), 80, 9, 0.25);
  CHECK(run.stride == 20);
  CHECK(run.warnings.empty());
  REQUIRE(run.snapshots.size() == (400 - 80) / 20 + 1);
  for (const auto& s : run.snapshots) {
    CHECK(s.alpha == 0.0);
    CHECK(s.p_decline == 0.5);
    CHECK(s.omega_bar == 1.0);
    CHECK(s.band.lower < s.band.upper);
  }
}

TEST_CASE("rolling_indicator on a falling series") {
  std::vector<double> prices;
  for (int i = 0; i < 300; ++i) prices.push_back(200.0 - 0.25 * i);
  const auto run = rolling_indicator(series_of(prices), 60, 5, 0.25);
  REQUIRE_FALSE(run.snapshots.empty());
  for (const auto& s : run.snapshots) {
    CHECK(s.alpha > 0.0);
    CHECK(s.p_decline > 0.5);
    CHECK(s.mu < 0.0);
    // mu and sigma follow from alpha and omega_bar.
    const auto m = moments_from_alpha(s.n, s.alpha, s.omega_bar);
    CHECK(s.mu == m.mu);
    CHECK(s.sigma == m.sigma);
    CHECK(s.p_decline == Approx(prob_nonpositive(s.alpha, s.n)).epsilon(1e-12));
  }
}

TEST_CASE("rolling_indicator skips sparse windows with a warning") {
  // A long gap in time leaves middle segments empty in windows that span it.
  std::vector<TickPoint> pts;
  Timestamp t = 0;
  for (int i = 0; i < 40; ++i) {
    pts.push_back({t, 100.0 + (i % 3)});
    t += i == 19 ? 1'000'000 : 1000;
  }
  const auto run = rolling_indicator(TickSeries(std::move(pts)), 20, 4, 0.25);
  CHECK_FALSE(run.warnings.empty());
  CHECK_FALSE(run.snapshots.empty());
  CHECK(run.warnings.front().find("skipped") != std::string::npos);
}

TEST_CASE("rolling_indicator clamps alpha and validates parameters") {
  // One big jump between two flat halves pushes |alpha| past 1.
  std::vector<double> prices;
  for (int i = 0; i < 20; ++i) prices.push_back(i < 10 ? 100.0 + 0.01 * (i % 2) : 50.0 + 0.01 * (i % 2));
  const auto run = rolling_indicator(series_of(prices), 20, 1, 0.25);
  REQUIRE(run.snapshots.size() == 1);
  CHECK(run.snapshots[0].alpha_clamped);
  CHECK(run.snapshots[0].alpha == 1.0 - kAlphaClamp);

  const auto s = series_of({1, 2, 3, 4});
  CHECK_THROWS_AS(rolling_indicator(s, 5, 1, 0.25), DomainError);
  CHECK_THROWS_AS(rolling_indicator(s, 4, 4, 0.25), DomainError);
  CHECK_THROWS_AS(rolling_indicator(s, 4, 1, 1.5), DomainError);
}
