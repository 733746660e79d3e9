#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tickvar/variation.hpp"

namespace tickvar {

/// Segment oscillations normalised by their bound lambda.
struct DensityProfile {
  double lambda = 0.0;
  std::vector<double> densities;  // rho_k = omega_k / lambda, one per segment
  double rho_bar = 0.0;           // mean over all n + 1 segments
  double epsilon_rho = 0.0;
  std::size_t n = 0;              // transitions
};

/// Non-uniformity (alpha1) and anisotropy (alpha2) of the price's target
/// space, and the model variation 2 n lambda rho_bar (1 + alpha).
struct StructureParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha = 0.0;
  double v_model = 0.0;
};

struct DensityCondition {
  double fraction_ok = 0.0;  // share of neighbour pairs with |rho_k - rho_{k-1}| < eps
  double worst_gap = 0.0;
};

/// lambda = max omega_k. Throws DomainError when every oscillation is zero,
/// when fewer than two segments are given, or when epsilon_rho is not in (0, 1).
DensityProfile density_profile(std::span<const Oscillation> oscillations, double epsilon_rho);

/// First J digits of the binary expansion of rho in [0, 1], truncated.
/// rho = 1 yields all ones (the expansion 0.111...).
std::vector<std::uint8_t> binary_digits(double rho, std::size_t J);

DensityCondition density_condition(const DensityProfile& profile);

/// Direction of a transition: -sign(midpoint_k - midpoint_{k-1}), 0 on ties.
/// Upward moves count negative so that upward drift gives negative alpha.
int transition_sign(const Oscillation& prev, const Oscillation& next);

/// alpha1 = (rho_0 - rho_n) / (2 n rho_bar)
/// alpha2 = sum_k s_k * transition_gap(k-1, k) / (2 n lambda rho_bar)
StructureParams structure_params(std::span<const Oscillation> oscillations,
                                 const DensityProfile& profile);

}  // namespace tickvar
