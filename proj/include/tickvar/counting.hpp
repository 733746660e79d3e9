#pragma once

// Combinatorial distribution of the endpoint difference measured in units of
// the average oscillation.
//
// With 2n unit oscillations each assigned to the upward or downward part,
// the difference z = (up - down) / 2 ranges over [-n, n] and the share of
// assignments giving z is C(2n, z + n) / 2^(2n). A non-zero alpha shifts the
// centre to z0 / 2 (z0 = -2 n alpha, rounded to even) and leaves
// n' = n - |z0| / 2 free oscillation pairs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tickvar {

using BigInt = boost::multiprecision::cpp_int;

/// Largest n for which binom_pz_exact uses big-integer arithmetic.
inline constexpr std::int64_t kExactBinomialLimit = 500;

/// Largest n' accepted by enumerate_paths (2^(2n') assignments).
inline constexpr std::int64_t kEnumerationLimit = 12;

/// Number of assignments with difference z: C(2n, z + n), or 0 for |z| > n.
BigInt binom_count(std::int64_t n, std::int64_t z);

/// C(2n, z + n) / 2^(2n). Exact big-integer evaluation for n <= 500, log
/// space above. Throws DomainError for n <= 0.
double binom_pz_exact(std::int64_t n, std::int64_t z);

/// The same probability always evaluated in log space.
double binom_pz_log(std::int64_t n, std::int64_t z);

/// Gaussian display exp(-z^2 / n) / sqrt(pi n).
double pz_gaussian(std::int64_t n, std::int64_t z);

/// zeta_z = z sqrt(2 / n), sign of z kept.
double zeta_of_z(std::int64_t n, std::int64_t z);

/// Grid step sqrt(2 / n) of zeta_z.
double delta_zeta(std::int64_t n);

/// Standard normal CDF.
double normal_cdf(double x);

struct ShiftedFrame {
  std::int64_t n = 0;
  std::int64_t z0 = 0;
  std::int64_t n_prime = 0;
  std::int64_t z_min = 0;
  std::int64_t z_max = 0;

  /// |2z - z0| <= 2n - |z0|.
  bool contains(std::int64_t z) const noexcept;

  /// Shifted distribution binom_pz_exact(n', z - z0 / 2); zero outside range.
  double pz(std::int64_t z) const;
};

/// Throws DomainError for n < 1, odd z0 or |z0| >= 2n.
ShiftedFrame shift_frame(std::int64_t n, std::int64_t z0);

/// -2 n alpha rounded to the nearest even integer; an exact odd value rounds
/// toward zero.
std::int64_t even_shift(std::int64_t n, double alpha);

/// zeta' = (zeta + alpha sqrt(2n)) / sqrt(1 - |alpha|). Throws for |alpha| >= 1.
double zeta_transform(double zeta, double alpha, std::int64_t n);

/// P(zeta <= 0) = Phi(alpha sqrt(2n) / sqrt(1 - |alpha|)).
double prob_nonpositive(double alpha, std::int64_t n);

/// Brute-force oracle: visits all 2^(2n') up/down assignments and counts the
/// resulting differences z = z' + z0 / 2. Throws DomainError for n' > 12.
std::map<std::int64_t, std::uint64_t> enumerate_paths(std::int64_t n_prime, std::int64_t z0);

/// Draws `count` differences d = 2z in shifted frame (n, alpha): the upward
/// count is Binomial(2n', 1/2) and d = 2 (up - n') + z0. The result is a
/// pure function of (n, alpha, count, seed) regardless of thread count.
std::vector<std::int64_t> sample_difference(std::int64_t n, double alpha, std::size_t count,
                                            std::uint64_t seed);

struct DistributionRow {
  std::int64_t z = 0;
  double p_exact = 0.0;
  double p_gauss = 0.0;
  double zeta = 0.0;
};

/// Distribution of z in the frame shifted by alpha.
struct CountingDistribution {
  ShiftedFrame frame;
  double alpha = 0.0;
  std::vector<DistributionRow> rows;  // z_min .. z_max

  /// P(z < 0) + p(0) / 2, the discrete counterpart of P(zeta <= 0).
  double discrete_nonpositive() const;
};

CountingDistribution distribution_table(std::int64_t n, double alpha);

}  // namespace tickvar
