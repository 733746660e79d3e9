#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tickvar/ticks.hpp"

namespace tickvar {

struct Moments {
  double mu = 0.0;     // mean of D, price units
  double sigma = 0.0;  // standard deviation of D, price units
};

/// mu = -2 n alpha omega_bar, sigma = omega_bar sqrt(2 n (1 - |alpha|)).
Moments moments_from_alpha(std::int64_t n, double alpha, double omega_bar);

struct AlphaEstimate {
  std::int64_t n = 0;
  double alpha = 0.0;
};

/// Inverts moments_from_alpha in oscillation units:
/// n = round((sigma_omega^2 + |mu_omega|) / 2), alpha = -mu_omega / (2n).
AlphaEstimate alpha_from_moments(double mu_omega, double sigma_omega_sq);

/// Phi(-mu / sigma). Throws DomainError for sigma <= 0.
double prob_decline(double mu, double sigma);

struct Band {
  double lower = 0.0;
  double upper = 0.0;
};

/// Admissible endpoint range |d - z0| <= 2n - |z0| with z0 = -2 n alpha,
/// in price units around `anchor_price`.
Band variation_band(std::int64_t n, double alpha, double omega_bar, double anchor_price);

struct IndicatorSnapshot {
  Timestamp window_end = 0;
  std::int64_t n = 0;
  double omega_bar = 0.0;
  double alpha = 0.0;
  bool alpha_clamped = false;
  double mu = 0.0;
  double sigma = 0.0;
  double p_decline = 0.0;
  Band band;
};

struct IndicatorRun {
  std::vector<IndicatorSnapshot> snapshots;
  std::vector<std::string> warnings;
  std::size_t stride = 0;
};

/// alpha is clamped to (-1 + kAlphaClamp, 1 - kAlphaClamp) before use.
inline constexpr double kAlphaClamp = 1e-9;

/// Sliding windows of `window_ticks` ticks advanced by max(1, window_ticks / 4).
/// Each window is partitioned into `transitions + 1` segments; alpha comes
/// from the structure parameters and omega_bar = lambda rho_bar. Windows with
/// an empty segment or no oscillation are skipped with a warning.
IndicatorRun rolling_indicator(const TickSeries& series, std::size_t window_ticks,
                               std::size_t transitions, double epsilon_rho);

}  // namespace tickvar
