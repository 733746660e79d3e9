#include "tickvar/indicator.hpp"

#include <algorithm>
#include <cmath>

#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/structure.hpp"
#include "tickvar/variation.hpp"

namespace tickvar {

namespace {

void check_domain(std::int64_t n, double alpha, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be >= 1");
  if (!(std::abs(alpha) < 1.0)) throw DomainError(std::string(what) + ": |alpha| must be < 1");
}

}  // namespace

Moments moments_from_alpha(std::int64_t n, double alpha, double omega_bar) {
  check_domain(n, alpha, "moments_from_alpha");
  if (!(omega_bar > 0.0) || !std::isfinite(omega_bar)) {
    throw DomainError("moments_from_alpha: omega_bar must be positive");
  }
  const double two_n = 2.0 * static_cast<double>(n);
  return {-two_n * alpha * omega_bar, omega_bar * std::sqrt(two_n * (1.0 - std::abs(alpha)))};
}

AlphaEstimate alpha_from_moments(double mu_omega, double sigma_omega_sq) {
  if (!(sigma_omega_sq > 0.0) || !std::isfinite(sigma_omega_sq) || !std::isfinite(mu_omega)) {
    throw DomainError("alpha_from_moments: variance must be positive");
  }
  const double two_n = sigma_omega_sq + std::abs(mu_omega);
  const auto n = std::max<std::int64_t>(1, std::llround(0.5 * two_n));
  return {n, -mu_omega / (2.0 * static_cast<double>(n))};
}

double prob_decline(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("prob_decline: sigma must be positive");
  return normal_cdf(-mu / sigma);
}

Band variation_band(std::int64_t n, double alpha, double omega_bar, double anchor_price) {
  check_domain(n, alpha, "variation_band");
  const double two_n = 2.0 * static_cast<double>(n);
  const double z0 = -two_n * alpha;
  const double reach = two_n - std::abs(z0);
  return {anchor_price + omega_bar * (z0 - reach), anchor_price + omega_bar * (z0 + reach)};
}

IndicatorRun rolling_indicator(const TickSeries& series, std::size_t window_ticks,
                               std::size_t transitions, double epsilon_rho) {
  if (window_ticks < 2 || window_ticks > series.size()) {
    throw DomainError("rolling_indicator: window must hold between 2 and " +
                      std::to_string(series.size()) + " ticks");
  }
  if (transitions < 1 || transitions + 1 > window_ticks) {
    throw DomainError("rolling_indicator: transitions + 1 segments must fit in a window");
  }
  if (!(epsilon_rho > 0.0 && epsilon_rho < 1.0)) {
    throw DomainError("rolling_indicator: epsilon_rho must lie in (0, 1)");
  }

  IndicatorRun run;
  run.stride = std::max<std::size_t>(1, window_ticks / 4);
  const auto n = static_cast<std::int64_t>(transitions);

  for (std::size_t first = 0; first + window_ticks <= series.size(); first += run.stride) {
    const TickSeries window = series.slice(first, window_ticks);
    const Timestamp window_end = window.end();
    try {
      const auto part = partition(window, transitions);
      const auto osc = segment_oscillations(window, part);
      const auto profile = density_profile(osc, epsilon_rho);
      const auto params = structure_params(osc, profile);

      IndicatorSnapshot snap;
      snap.window_end = window_end;
      snap.n = n;
      snap.omega_bar = profile.lambda * profile.rho_bar;
      snap.alpha = std::clamp(params.alpha, -1.0 + kAlphaClamp, 1.0 - kAlphaClamp);
      snap.alpha_clamped = snap.alpha != params.alpha;
      const Moments mom = moments_from_alpha(n, snap.alpha, snap.omega_bar);
      snap.mu = mom.mu;
      snap.sigma = mom.sigma;
      snap.p_decline = prob_decline(mom.mu, mom.sigma);
      snap.band = variation_band(n, snap.alpha, snap.omega_bar, window.points().back().price);
      run.snapshots.push_back(snap);
    } catch (const DomainError& e) {
      run.warnings.push_back("window ending " + std::to_string(window_end) + " skipped: " +
                             e.what());
    }
  }
  return run;
}

}  // namespace tickvar
