#include "tickvar/fattails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tickvar/counting.hpp"
#include "tickvar/errors.hpp"
#include "tickvar/random.hpp"

namespace tickvar {

namespace {

constexpr std::size_t kNonInvertibleExamples = 8;

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

FatTailModel solve_coeffs(double zeta0) {
  if (!std::isfinite(zeta0)) throw DomainError("solve_coeffs: zeta0 must be finite");
  const double det = 18.0 - 0.5 * zeta0 * zeta0;
  if (det == 0.0) throw DomainError("solve_coeffs: singular system (zeta0^2 = 36)");
  FatTailModel m;
  m.zeta0 = zeta0;
  m.C2 = (3.0 - zeta0) / det;
  m.C1 = 3.0 - 18.0 * m.C2;
  return m;
}

double correction_term(double zeta, const FatTailModel& model) {
  if (zeta == 0.0) throw DomainError("correction_term: undefined at zeta = 0");
  return -sign_of(zeta) * (model.C1 + 0.5 * model.C2 * zeta * zeta);
}

double coefficient_cdf(double zeta, const FatTailModel& model) {
  if (zeta == 0.0) return normal_cdf(0.0);
  return normal_cdf(zeta + correction_term(zeta, model));
}

double fat_tail_distortion(double zeta, double zeta0) {
  if (zeta == 0.0) return 0.0;
  return zeta - sign_of(zeta) * (zeta * zeta - zeta0 * zeta0) / 12.0;
}

double fat_tail_cdf(double zeta, double zeta0) {
  return normal_cdf(fat_tail_distortion(zeta, zeta0));
}

double tail_excess(double zeta, double alpha, std::int64_t n) {
  return normal_cdf(zeta_transform(zeta, alpha, n)) - normal_cdf(zeta);
}

MonotonicityReport check_monotonicity(double zeta0, double half_width, std::size_t points) {
  if (points < 2 || !(half_width > 0.0)) {
    throw DomainError("check_monotonicity: need a non-empty grid");
  }
  MonotonicityReport r;
  r.zero_jump = fat_tail_cdf(std::numeric_limits<double>::min(), zeta0) -
                fat_tail_cdf(-std::numeric_limits<double>::min(), zeta0);
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  double prev = fat_tail_cdf(-half_width, zeta0);
  r.first_decrease = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points; ++i) {
    const double zeta = -half_width + step * static_cast<double>(i);
    const double cur = fat_tail_cdf(zeta, zeta0);
    if (cur < prev) {
      r.monotone = false;
      r.max_drop = std::max(r.max_drop, prev - cur);
      r.first_decrease = std::min(r.first_decrease, std::abs(zeta));
    }
    prev = cur;
  }
  if (r.monotone) r.first_decrease = 0.0;
  return r;
}

Inversion invert_distortion(double u, double zeta0) {
  if (!(zeta0 >= 0.0 && zeta0 < kDistortionPeak)) {
    throw DomainError("invert_distortion: zeta0 must lie in [0, 6)");
  }
  if (!std::isfinite(u)) throw DomainError("invert_distortion: u must be finite");
  const double target = std::abs(u);
  const double floor_value = zeta0 * zeta0 / 12.0;  // limit of the branch at 0+
  const double peak_value = fat_tail_distortion(kDistortionPeak, zeta0);

  if (target <= floor_value) return {0.0, InversionStatus::ZeroAtom};
  if (target > peak_value) return {sign_of(u) * kDistortionPeak, InversionStatus::Saturated};

  double lo = 0.0;
  double hi = kDistortionPeak;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mid == 0.0 || fat_tail_distortion(mid, zeta0) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {sign_of(u) * 0.5 * (lo + hi), InversionStatus::Regular};
}

FatTailHistogram simulate_histogram(const HistogramOptions& opt) {
  if (opt.samples < kMinHistogramSamples) {
    throw DomainError("simulate_histogram: samples must be >= " +
                      std::to_string(kMinHistogramSamples));
  }
  if (opt.bins < 20) throw DomainError("simulate_histogram: bins must be >= 20");
  if (!(opt.half_width > 0.0) || !std::isfinite(opt.half_width)) {
    throw DomainError("simulate_histogram: half_width must be positive");
  }

  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (opt.samples + kChunk - 1) / kChunk;
  constexpr std::array<double, 4> thresholds{3.0, 4.0, 5.0, 6.0};

  struct Partial {
    std::vector<std::uint64_t> model;
    std::vector<std::uint64_t> normal;
    std::uint64_t model_outside = 0;
    std::uint64_t normal_outside = 0;
    std::array<std::uint64_t, 4> model_tail{};
    std::array<std::uint64_t, 4> normal_tail{};
    double model_max = 0.0;
    double normal_max = 0.0;
    std::uint64_t zero_atom = 0;
    std::uint64_t saturated = 0;
    std::vector<double> saturated_zeta0;  // first few, in sample order
    double zeta0_min = std::numeric_limits<double>::infinity();
    double zeta0_max = -std::numeric_limits<double>::infinity();
    bool strict_failure = false;
    double strict_zeta0 = 0.0;
  };
  std::vector<Partial> partials(chunks);

  const double width = 2.0 * opt.half_width / static_cast<double>(opt.bins);
  auto bin_of = [&](double x) -> std::ptrdiff_t {
    if (x < -opt.half_width || x > opt.half_width) return -1;
    const auto b = static_cast<std::ptrdiff_t>(std::floor((x + opt.half_width) / width));
    return std::min<std::ptrdiff_t>(b, static_cast<std::ptrdiff_t>(opt.bins) - 1);
  };

  rng::for_each_chunk(opt.samples, kChunk, [&](std::size_t chunk, std::size_t begin,
                                                std::size_t end) {
    Partial& p = partials[chunk];
    p.model.assign(opt.bins, 0);
    p.normal.assign(opt.bins, 0);
    rng::Engine eng(rng::derive_seed(opt.seed, chunk + 1));
    for (std::size_t i = begin; i < end; ++i) {
      const double zeta0 = rng::uniform01(eng);
      const double u = rng::standard_normal(eng);
      const Inversion inv = invert_distortion(u, zeta0);
      if (inv.status == InversionStatus::Saturated) {
        if (opt.strict) {
          p.strict_failure = true;
          p.strict_zeta0 = zeta0;
          return;
        }
        ++p.saturated;
        p.zeta0_min = std::min(p.zeta0_min, zeta0);
        p.zeta0_max = std::max(p.zeta0_max, zeta0);
        if (p.saturated_zeta0.size() < kNonInvertibleExamples) p.saturated_zeta0.push_back(zeta0);
      } else if (inv.status == InversionStatus::ZeroAtom) {
        ++p.zero_atom;
      }

      const double model = inv.zeta;
      if (const auto b = bin_of(model); b >= 0) {
        ++p.model[static_cast<std::size_t>(b)];
      } else {
        ++p.model_outside;
      }
      if (const auto b = bin_of(u); b >= 0) {
        ++p.normal[static_cast<std::size_t>(b)];
      } else {
        ++p.normal_outside;
      }
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        if (std::abs(model) > thresholds[t]) ++p.model_tail[t];
        if (std::abs(u) > thresholds[t]) ++p.normal_tail[t];
      }
      p.model_max = std::max(p.model_max, std::abs(model));
      p.normal_max = std::max(p.normal_max, std::abs(u));
    }
  });

  FatTailHistogram h;
  h.bins.resize(opt.bins);
  for (std::size_t b = 0; b < opt.bins; ++b) {
    h.bins[b].left = -opt.half_width + width * static_cast<double>(b);
    h.bins[b].right =
        b + 1 == opt.bins ? opt.half_width : -opt.half_width + width * static_cast<double>(b + 1);
  }
  std::array<std::uint64_t, 4> model_tail{};
  std::array<std::uint64_t, 4> normal_tail{};
  h.non_invertible.zeta0_min = std::numeric_limits<double>::infinity();
  h.non_invertible.zeta0_max = -std::numeric_limits<double>::infinity();
  for (const Partial& p : partials) {
    if (p.strict_failure) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "simulate_histogram: draw beyond the monotone branch of the distortion "
             "(zeta0 = "
          << p.strict_zeta0 << ")";
      throw DomainError(msg.str());
    }
    for (std::size_t b = 0; b < opt.bins; ++b) {
      h.bins[b].count_model += p.model[b];
      h.bins[b].count_normal += p.normal[b];
    }
    h.model_outside += p.model_outside;
    h.normal_outside += p.normal_outside;
    for (std::size_t t = 0; t < 4; ++t) {
      model_tail[t] += p.model_tail[t];
      normal_tail[t] += p.normal_tail[t];
    }
    h.model_max_abs = std::max(h.model_max_abs, p.model_max);
    h.normal_max_abs = std::max(h.normal_max_abs, p.normal_max);
    h.zero_atom += p.zero_atom;
    h.non_invertible.count += p.saturated;
    h.non_invertible.zeta0_min = std::min(h.non_invertible.zeta0_min, p.zeta0_min);
    h.non_invertible.zeta0_max = std::max(h.non_invertible.zeta0_max, p.zeta0_max);
    for (double z : p.saturated_zeta0) {
      if (h.non_invertible.zeta0_examples.size() < kNonInvertibleExamples) {
        h.non_invertible.zeta0_examples.push_back(z);
      }
    }
  }
  if (h.non_invertible.count == 0) {
    h.non_invertible.zeta0_min = 0.0;
    h.non_invertible.zeta0_max = 0.0;
  }
  const double total = static_cast<double>(opt.samples);
  for (std::size_t t = 0; t < 4; ++t) {
    h.tails[t] = {thresholds[t], static_cast<double>(model_tail[t]) / total,
                  static_cast<double>(normal_tail[t]) / total};
  }
  return h;
}

CoefficientDiscrepancy closed_form_discrepancy(double zeta0, double half_width,
                                               std::size_t points) {
  if (points < 2 || !(half_width > 0.0)) {
    throw DomainError("closed_form_discrepancy: need a non-empty grid");
  }
  const FatTailModel model = solve_coeffs(zeta0);
  CoefficientDiscrepancy d;
  d.zeta0 = zeta0;
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double zeta = -half_width + step * static_cast<double>(i);
    const double gap = std::abs(fat_tail_cdf(zeta, zeta0) - coefficient_cdf(zeta, model));
    if (gap > d.max_abs) {
      d.max_abs = gap;
      d.at_zeta = zeta;
    }
  }
  return d;
}

}  // namespace tickvar
