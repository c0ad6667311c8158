#pragma once

#include <variant>

#include "photondm/attenuation.hpp"
#include "photondm/entangled.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/oam.hpp"

namespace photondm {

// Which product the interference-system solver pins to zero. Pinning
// a2*b1 = 0 (arms a = (1,0), b = (0,1)) makes the ratio increase with the
// polarization angle; pinning a1*b2 = 0 (arms a = (0,1), b = (1,0)) makes it
// decrease. Both loci cover all targets r > 0.
enum class OamRatioLocus { a2b1_zero, a1b2_zero };

// Ratio p21 / p12 along a locus as a function of the polarization angle theta
// in (-pi/4, pi/4):
//   a2b1_zero: tan(theta + pi/4)^4   (strictly increasing),
//   a1b2_zero: tan(pi/4 - theta)^4   (strictly decreasing).
double oam_ratio_forward(double theta, OamRatioLocus locus);

struct RatioSolution {
  SystemId system = SystemId::oam;
  AsymmetryRatio target = AsymmetryRatio::finite(1.0);
  std::variant<OamSystemConfig, EntangledConfig, AttenuationConfig> parameters;
  double theta = 0.0;  // interference system only: solved polarization angle
  OamRatioLocus locus = OamRatioLocus::a2b1_zero;  // interference system only
  int bisection_steps = 0;
  AsymmetryRatio achieved;  // p21 / p12 re-derived through the distribution op
  // Residual whose magnitude certifies the solution: for the interference
  // system the defining polynomial in (theta, r) evaluated at the solution;
  // for the other systems |achieved - target| / max(1, target).
  double residual = 0.0;
  double p12 = 0.0;
  double p21 = 0.0;
  double loss = 0.0;
  double conflict = 0.0;
};

// Finds a configuration of the interference system realizing p21 / p12 = r on
// the chosen locus. Finite targets must be positive. Finite solves bisect the
// strictly monotone forward map (at most 200 steps); the unbounded target maps
// to the exact corner (p12, p21) = (0, 1). Solutions lie on the
// success-probability frontier and have exactly zero conflict.
RatioSolution solve_oam_ratio(const AsymmetryRatio& target,
                              OamRatioLocus locus = OamRatioLocus::a2b1_zero);

// Same contract for the entangled source: the smaller probability is scaled
// by a polarizer angle while the larger stays at its maximum 1/2.
RatioSolution solve_entangled_ratio(const AsymmetryRatio& target);

// Same contract for the attenuation system: the smaller probability is scaled
// by one transmission amplitude while the larger stays at its maximum 1/4.
RatioSolution solve_attenuation_ratio(const AsymmetryRatio& target);

}  // namespace photondm
