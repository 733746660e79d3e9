#include "tickvar/counting.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "tickvar/errors.hpp"
#include "tickvar/random.hpp"

namespace tickvar {

namespace {

void require_positive_n(std::int64_t n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be >= 1");
}

void require_alpha(double alpha, const char* what) {
  if (!(std::abs(alpha) < 1.0)) {
    throw DomainError(std::string(what) + ": |alpha| must be < 1");
  }
}

BigInt binomial(std::int64_t m, std::int64_t k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  BigInt c = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    c *= m - i;
    c /= i + 1;
  }
  return c;
}

}  // namespace

BigInt binom_count(std::int64_t n, std::int64_t z) {
  require_positive_n(n, "binom_count");
  if (z < -n || z > n) return 0;
  return binomial(2 * n, z + n);
}

double binom_pz_log(std::int64_t n, std::int64_t z) {
  require_positive_n(n, "binom_pz_log");
  if (z < -n || z > n) return 0.0;
  const std::int64_t k = n - (z < 0 ? -z : z);  // C(2n, n + |z|) = C(2n, n - |z|)
  const std::int64_t m = 2 * n;
  long double log_c = 0.0L;
  for (std::int64_t i = 1; i <= k; ++i) {
    log_c += std::log(static_cast<long double>(m - k + i)) - std::log(static_cast<long double>(i));
  }
  const long double ln2 = std::numbers::ln2_v<long double>;
  return static_cast<double>(std::exp(log_c - static_cast<long double>(m) * ln2));
}

double binom_pz_exact(std::int64_t n, std::int64_t z) {
  require_positive_n(n, "binom_pz_exact");
  if (z < -n || z > n) return 0.0;
  if (n > kExactBinomialLimit) return binom_pz_log(n, z);
  // C(2n, k) < 2^(2n) <= 2^1000 fits a double exactly enough; dividing by a
  // power of two is exact while the result stays normal.
  const double count = binom_count(n, z).convert_to<double>();
  return std::ldexp(count, static_cast<int>(-2 * n));
}

double pz_gaussian(std::int64_t n, std::int64_t z) {
  require_positive_n(n, "pz_gaussian");
  const double nd = static_cast<double>(n);
  const double zd = static_cast<double>(z);
  return std::exp(-zd * zd / nd) / std::sqrt(std::numbers::pi * nd);
}

double zeta_of_z(std::int64_t n, std::int64_t z) {
  require_positive_n(n, "zeta_of_z");
  return static_cast<double>(z) * std::sqrt(2.0 / static_cast<double>(n));
}

double delta_zeta(std::int64_t n) {
  require_positive_n(n, "delta_zeta");
  return std::sqrt(2.0 / static_cast<double>(n));
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * std::numbers::sqrt2 * 0.5);
}

bool ShiftedFrame::contains(std::int64_t z) const noexcept {
  const std::int64_t lhs = 2 * z - z0;
  return (lhs < 0 ? -lhs : lhs) <= 2 * n - (z0 < 0 ? -z0 : z0);
}

double ShiftedFrame::pz(std::int64_t z) const {
  if (!contains(z)) return 0.0;
  return binom_pz_exact(n_prime, z - z0 / 2);
}

ShiftedFrame shift_frame(std::int64_t n, std::int64_t z0) {
  require_positive_n(n, "shift_frame");
  if (z0 % 2 != 0) throw DomainError("shift_frame: z0 must be even");
  const std::int64_t abs_z0 = z0 < 0 ? -z0 : z0;
  if (abs_z0 >= 2 * n) {
    throw DomainError("shift_frame: |z0| >= 2n leaves no oscillations");
  }
  ShiftedFrame f;
  f.n = n;
  f.z0 = z0;
  f.n_prime = n - abs_z0 / 2;
  f.z_min = std::max(-n, -n + z0);
  f.z_max = std::min(n, n + z0);
  return f;
}

std::int64_t even_shift(std::int64_t n, double alpha) {
  require_positive_n(n, "even_shift");
  if (!std::isfinite(alpha)) throw DomainError("even_shift: alpha must be finite");
  const double half = -static_cast<double>(n) * alpha;  // (-2 n alpha) / 2
  const double floor_half = std::floor(half);
  const double frac = half - floor_half;
  double rounded = floor_half;
  if (frac > 0.5) {
    rounded = floor_half + 1.0;
  } else if (frac == 0.5) {
    rounded = half > 0.0 ? floor_half : floor_half + 1.0;
  }
  return 2 * static_cast<std::int64_t>(rounded);
}

double zeta_transform(double zeta, double alpha, std::int64_t n) {
  require_positive_n(n, "zeta_transform");
  require_alpha(alpha, "zeta_transform");
  return (zeta + alpha * std::sqrt(2.0 * static_cast<double>(n))) / std::sqrt(1.0 - std::abs(alpha));
}

double prob_nonpositive(double alpha, std::int64_t n) {
  require_positive_n(n, "prob_nonpositive");
  require_alpha(alpha, "prob_nonpositive");
  return normal_cdf(alpha * std::sqrt(2.0 * static_cast<double>(n)) /
                    std::sqrt(1.0 - std::abs(alpha)));
}

std::map<std::int64_t, std::uint64_t> enumerate_paths(std::int64_t n_prime, std::int64_t z0) {
  if (n_prime < 1) throw DomainError("enumerate_paths: n' must be >= 1");
  if (n_prime > kEnumerationLimit) throw DomainError("enumerate_paths: n' too large (max 12)");
  if (z0 % 2 != 0) throw DomainError("enumerate_paths: z0 must be even");

  const unsigned unit_count = static_cast<unsigned>(2 * n_prime);
  // Each bit of `path` sends one unit oscillation to the upward part.
  std::vector<std::uint64_t> by_up(unit_count + 1, 0);
  const std::uint64_t total = std::uint64_t{1} << unit_count;
  for (std::uint64_t path = 0; path < total; ++path) {
    std::int64_t up = 0;
    for (unsigned bit = 0; bit < unit_count; ++bit) up += (path >> bit) & 1U;
    ++by_up[static_cast<std::size_t>(up)];
  }

  std::map<std::int64_t, std::uint64_t> counts;
  for (std::int64_t up = 0; up <= static_cast<std::int64_t>(unit_count); ++up) {
    const std::int64_t down = static_cast<std::int64_t>(unit_count) - up;
    // up - down = 2 z' is always even: the difference is an integer z'.
    const std::int64_t z_prime = (up - down) / 2;
    counts[z_prime + z0 / 2] += by_up[static_cast<std::size_t>(up)];
  }
  return counts;
}

std::vector<std::int64_t> sample_difference(std::int64_t n, double alpha, std::size_t count,
                                            std::uint64_t seed) {
  require_positive_n(n, "sample_difference");
  require_alpha(alpha, "sample_difference");
  const ShiftedFrame frame = shift_frame(n, even_shift(n, alpha));
  const auto units = static_cast<std::uint64_t>(2 * frame.n_prime);

  std::vector<std::int64_t> out(count);
  constexpr std::size_t kChunk = 1 << 16;
  rng::for_each_chunk(count, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    rng::Engine eng(rng::derive_seed(seed, chunk + 1));
    for (std::size_t i = begin; i < end; ++i) {
      const auto up = static_cast<std::int64_t>(rng::fair_binomial(eng, units));
      out[i] = 2 * (up - frame.n_prime) + frame.z0;
    }
  });
  return out;
}

double CountingDistribution::discrete_nonpositive() const {
  double below = 0.0;
  for (const auto& row : rows) {
    if (row.z < 0) {
      below += row.p_exact;
    } else if (row.z == 0) {
      below += 0.5 * row.p_exact;
    }
  }
  return below;
}

CountingDistribution distribution_table(std::int64_t n, double alpha) {
  require_positive_n(n, "distribution_table");
  require_alpha(alpha, "distribution_table");
  CountingDistribution dist;
  dist.alpha = alpha;
  dist.frame = shift_frame(n, even_shift(n, alpha));
  const auto& f = dist.frame;
  const std::int64_t half_shift = f.z0 / 2;
  dist.rows.reserve(static_cast<std::size_t>(f.z_max - f.z_min + 1));

  if (f.n_prime <= kExactBinomialLimit) {
    // One big-integer row, walked with C(m, k+1) = C(m, k) (m - k) / (k + 1).
    const std::int64_t m = 2 * f.n_prime;
    BigInt c = 1;
    for (std::int64_t k = 0; k <= m; ++k) {
      const std::int64_t z = k - f.n_prime + half_shift;
      dist.rows.push_back({z, std::ldexp(c.convert_to<double>(), static_cast<int>(-m)),
                           pz_gaussian(f.n_prime, z - half_shift), zeta_of_z(n, z)});
      c *= m - k;
      c /= k + 1;
    }
  } else {
    const std::int64_t m = 2 * f.n_prime;
    long double log_p = -static_cast<long double>(m) * std::numbers::ln2_v<long double>;
    for (std::int64_t k = 0; k <= m; ++k) {
      const std::int64_t z = k - f.n_prime + half_shift;
      dist.rows.push_back({z, static_cast<double>(std::exp(log_p)),
                           pz_gaussian(f.n_prime, z - half_shift), zeta_of_z(n, z)});
      log_p += std::log(static_cast<long double>(m - k)) -
               std::log(static_cast<long double>(k + 1));
    }
  }
  return dist;
}

}  // namespace tickvar
