#include "tickvar/variation.hpp"

#include <algorithm>
#include <cmath>

#include "tickvar/errors.hpp"

namespace tickvar {

std::vector<double> running_variation(const TickSeries& series) {
  const auto pts = series.points();
  std::vector<double> v(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    v[i] = v[i - 1] + std::abs(pts[i].price - pts[i - 1].price);
  }
  return v;
}

JordanPair jordan_decompose(const TickSeries& series) {
  const auto v = running_variation(series);
  const auto pts = series.points();
  JordanPair pair;
  pair.f_plus.resize(pts.size());
  pair.f_minus.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pair.f_plus[i] = 0.5 * (v[i] + pts[i].price);
    pair.f_minus[i] = 0.5 * (v[i] - pts[i].price);
  }
  return pair;
}

VariationSummary variation_summary(const TickSeries& series) {
  // Accumulate the upward and downward moves separately; each is a sum of
  // non-negative terms, so the identities hold to rounding of V itself.
  const auto pts = series.points();
  double up = 0.0;
  double down = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double step = pts[i].price - pts[i - 1].price;
    if (step > 0.0) {
      up += step;
    } else {
      down -= step;
    }
  }
  VariationSummary s;
  s.V = up + down;
  s.D = pts.back().price - pts.front().price;
  s.sigma_plus = up;
  s.sigma_minus = down;
  return s;
}

std::vector<Oscillation> segment_oscillations(const TickSeries& series,
                                              const SegmentPartition& partition) {
  const auto pts = series.points();
  std::vector<Oscillation> out;
  out.reserve(partition.tick_ranges.size());
  for (std::size_t k = 0; k < partition.tick_ranges.size(); ++k) {
    const auto [begin, end] = partition.tick_ranges[k];
    if (begin >= end || end > pts.size()) {
      throw EmptySegmentError(k, "segment " + std::to_string(k) + " holds no tick");
    }
    double hi = pts[begin].price;
    double lo = hi;
    for (std::size_t i = begin + 1; i < end; ++i) {
      hi = std::max(hi, pts[i].price);
      lo = std::min(lo, pts[i].price);
    }
    out.push_back({hi, lo, hi - lo});
  }
  return out;
}

double transition_gap(const Oscillation& prev, const Oscillation& next) {
  return std::min(std::abs(next.M - prev.m), std::abs(prev.M - next.m));
}

double oscillation_variation(std::span<const Oscillation> osc) {
  if (osc.size() < 2) {
    throw DomainError("oscillation_variation: need at least 2 oscillations");
  }
  double total = 0.0;
  for (std::size_t k = 1; k < osc.size(); ++k) {
    total += osc[k - 1].omega + osc[k].omega;
  }
  for (std::size_t k = 1; k < osc.size(); ++k) {
    total += transition_gap(osc[k - 1], osc[k]);
  }
  return total;
}

}  // namespace tickvar
