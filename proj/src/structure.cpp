#include "tickvar/structure.hpp"

#include <algorithm>
#include <cmath>

#include "tickvar/errors.hpp"

namespace tickvar {

DensityProfile density_profile(std::span<const Oscillation> osc, double epsilon_rho) {
  if (osc.size() < 2) throw DomainError("density_profile: need at least 2 segments");
  if (!(epsilon_rho > 0.0 && epsilon_rho < 1.0)) {
    throw DomainError("density_profile: epsilon_rho must lie in (0, 1)");
  }
  double lambda = 0.0;
  for (const auto& o : osc) lambda = std::max(lambda, o.omega);
  if (!(lambda > 0.0)) {
    throw DomainError("density_profile: all segment oscillations are zero, lambda undefined");
  }

  DensityProfile p;
  p.lambda = lambda;
  p.epsilon_rho = epsilon_rho;
  p.n = osc.size() - 1;
  p.densities.reserve(osc.size());
  double sum = 0.0;
  for (const auto& o : osc) {
    const double rho = o.omega == lambda ? 1.0 : o.omega / lambda;
    p.densities.push_back(rho);
    sum += rho;
  }
  p.rho_bar = sum / static_cast<double>(osc.size());
  return p;
}

std::vector<std::uint8_t> binary_digits(double rho, std::size_t J) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("binary_digits: rho must lie in [0, 1]");
  if (J < 1) throw DomainError("binary_digits: need at least one digit");
  // Doubling and subtracting one are exact in binary floating point.
  std::vector<std::uint8_t> bits;
  bits.reserve(J);
  double x = rho;
  for (std::size_t j = 0; j < J; ++j) {
    x *= 2.0;
    if (x >= 1.0) {
      bits.push_back(1);
      x -= 1.0;
    } else {
      bits.push_back(0);
    }
  }
  return bits;
}

DensityCondition density_condition(const DensityProfile& profile) {
  const auto& rho = profile.densities;
  DensityCondition c;
  if (rho.size() < 2) return c;
  std::size_t ok = 0;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    const double gap = std::abs(rho[k] - rho[k - 1]);
    if (gap < profile.epsilon_rho) ++ok;
    c.worst_gap = std::max(c.worst_gap, gap);
  }
  c.fraction_ok = static_cast<double>(ok) / static_cast<double>(rho.size() - 1);
  return c;
}

int transition_sign(const Oscillation& prev, const Oscillation& next) {
  const double before = 0.5 * (prev.M + prev.m);
  const double after = 0.5 * (next.M + next.m);
  if (after > before) return -1;
  if (after < before) return 1;
  return 0;
}

StructureParams structure_params(std::span<const Oscillation> osc, const DensityProfile& profile) {
  if (osc.size() != profile.densities.size() || osc.size() < 2) {
    throw DomainError("structure_params: profile does not match the oscillations");
  }
  const double n = static_cast<double>(profile.n);
  const double scale = 2.0 * n * profile.rho_bar;

  StructureParams s;
  s.alpha1 = (profile.densities.front() - profile.densities.back()) / scale;

  double shift = 0.0;
  for (std::size_t k = 1; k < osc.size(); ++k) {
    shift += transition_sign(osc[k - 1], osc[k]) * transition_gap(osc[k - 1], osc[k]);
  }
  s.alpha2 = shift / (scale * profile.lambda);
  s.alpha = s.alpha1 + s.alpha2;
  s.v_model = scale * profile.lambda * (1.0 + s.alpha);
  return s;
}

}  // namespace tickvar
