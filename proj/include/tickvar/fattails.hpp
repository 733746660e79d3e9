#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tickvar {

/// Heavy-tail coefficients: the frame shift alpha sqrt(2n) is modelled as
/// -sign(zeta) (C1 + C2 zeta^2 / 2), with C1 + 18 C2 = 3 (the normal frame
/// keeps the three-sigma rule at six sigma in the observed frame) and
/// C1 + (zeta0^2 / 2) C2 = zeta0 (a zero in the normal frame is seen at zeta0).
struct FatTailModel {
  double zeta0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

/// Throws DomainError when the system is singular (zeta0^2 = 36) or zeta0 is
/// not finite.
FatTailModel solve_coeffs(double zeta0);

/// -sign(zeta) (C1 + C2 zeta^2 / 2). Throws DomainError at zeta = 0.
double correction_term(double zeta, const FatTailModel& model);

/// Phi(zeta + correction_term(zeta, model)); the correction is taken as 0 at
/// zeta = 0.
double coefficient_cdf(double zeta, const FatTailModel& model);

/// zeta - (zeta / (12 |zeta|)) (zeta^2 - zeta0^2), with value 0 at zeta = 0.
double fat_tail_distortion(double zeta, double zeta0);

/// Closed-form heavy-tail CDF Phi(fat_tail_distortion(zeta, zeta0)).
double fat_tail_cdf(double zeta, double zeta0);

/// Phi(zeta') - Phi(zeta) with zeta' the frame transform of zeta.
double tail_excess(double zeta, double alpha, std::int64_t n);

/// The distortion rises on (0, 6] and falls beyond; it jumps by zeta0^2 / 6
/// across zero. Values are mirrored for negative zeta.
inline constexpr double kDistortionPeak = 6.0;

struct MonotonicityReport {
  bool monotone = true;
  double first_decrease = 0.0;  // smallest |zeta| on the grid where the CDF falls
  double max_drop = 0.0;        // largest single-step decrease on the grid
  double zero_jump = 0.0;       // CDF jump across zeta = 0
};

/// Scans fat_tail_cdf on a uniform grid of [-half_width, half_width].
MonotonicityReport check_monotonicity(double zeta0, double half_width, std::size_t points);

enum class InversionStatus { Regular, ZeroAtom, Saturated };

struct Inversion {
  double zeta = 0.0;
  InversionStatus status = InversionStatus::Regular;
};

/// Solves fat_tail_distortion(zeta, zeta0) = u on the monotone branch by
/// bisection (tolerance 1e-10). |u| inside the jump at zero maps to 0
/// (ZeroAtom); |u| beyond the branch peak has no preimage and is pinned to
/// +-6 (Saturated). Throws DomainError if zeta0 is outside [0, 6).
Inversion invert_distortion(double u, double zeta0);

inline constexpr std::size_t kMinHistogramSamples = 1000;

struct HistogramOptions {
  std::size_t samples = 1'000'000;
  std::size_t bins = 60;
  double half_width = 6.0;
  std::uint64_t seed = 0;
  /// Throw DomainError on the first draw with no preimage instead of
  /// pinning it to the branch edge.
  bool strict = false;
};

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::uint64_t count_model = 0;
  std::uint64_t count_normal = 0;
};

struct TailMass {
  double threshold = 0.0;
  double model = 0.0;
  double normal = 0.0;
};

struct NonInvertibleReport {
  std::uint64_t count = 0;
  double zeta0_min = 0.0;
  double zeta0_max = 0.0;
  std::vector<double> zeta0_examples;  // first few offending zeta0, in sample order
};

struct FatTailHistogram {
  std::vector<HistogramBin> bins;
  std::uint64_t model_outside = 0;   // samples beyond +-half_width
  std::uint64_t normal_outside = 0;
  std::array<TailMass, 4> tails{};   // P(|zeta| > t), t = 3, 4, 5, 6
  double model_max_abs = 0.0;
  double normal_max_abs = 0.0;
  std::uint64_t zero_atom = 0;
  NonInvertibleReport non_invertible;
};

/// Per sample: zeta0 ~ U(0, 1), u ~ N(0, 1); the model value inverts the
/// closed-form CDF at Phi(u), the normal value is u itself. Deterministic
/// per seed. Requires samples >= 1000 and bins >= 20.
FatTailHistogram simulate_histogram(const HistogramOptions& options);

struct CoefficientDiscrepancy {
  double zeta0 = 0.0;
  double max_abs = 0.0;   // max |closed form - exact-coefficient CDF| over the grid
  double at_zeta = 0.0;
};

/// Compares fat_tail_cdf with coefficient_cdf(solve_coeffs(zeta0)) on a grid
/// of [-half_width, half_width].
CoefficientDiscrepancy closed_form_discrepancy(double zeta0, double half_width, std::size_t points);

}  // namespace tickvar
