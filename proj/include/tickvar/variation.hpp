#pragma once

#include <span>
#include <vector>

#include "tickvar/ticks.hpp"

namespace tickvar {

/// Monotone components of the Jordan decomposition, one value per tick:
/// f_plus = (V(t) + f(t)) / 2 and f_minus = (V(t) - f(t)) / 2, where V(t)
/// is the running variation up to tick t.
struct JordanPair {
  std::vector<double> f_plus;
  std::vector<double> f_minus;
};

/// Total variation V, endpoint difference D = f(b) - f(a), and the upward
/// and downward parts of the variation. sigma_plus - sigma_minus = D and
/// sigma_plus + sigma_minus = V.
struct VariationSummary {
  double V = 0.0;
  double D = 0.0;
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
};

/// Sup/inf of the prices in one elementary segment.
struct Oscillation {
  double M = 0.0;
  double m = 0.0;
  double omega = 0.0;

  friend bool operator==(const Oscillation&, const Oscillation&) = default;
};

/// Running variation V(t_i) = sum_{j <= i} |f(t_j) - f(t_{j-1})|.
std::vector<double> running_variation(const TickSeries& series);

JordanPair jordan_decompose(const TickSeries& series);

/// The supremum over partitions of a finite sample is attained at the full
/// sample, so V is the sum of absolute consecutive differences.
VariationSummary variation_summary(const TickSeries& series);

/// Per-segment max/min price. Boundary ticks belong to the left segment.
std::vector<Oscillation> segment_oscillations(const TickSeries& series,
                                              const SegmentPartition& partition);

/// Smaller of the two cross-segment gaps |M_k - m_{k-1}| and |M_{k-1} - m_k|.
double transition_gap(const Oscillation& prev, const Oscillation& next);

/// Oscillation-level variation estimate
///   sum_{k=1..n} (omega_{k-1} + omega_k) + sum_{k=1..n} transition_gap(k-1, k).
/// This is a model estimate, not an identity with the tick-level V.
/// Throws DomainError for fewer than 2 oscillations.
double oscillation_variation(std::span<const Oscillation> oscillations);

}  // namespace tickvar
