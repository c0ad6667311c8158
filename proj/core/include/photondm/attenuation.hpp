#pragma once

#include "photondm/oam.hpp"

namespace photondm {

// Two-arm interference system with per-arm attenuators in front of the
// detectors and polarization fixed to horizontal (alpha = 1, beta = 0).
// d_x1, d_x2 attenuate detector X's arms 1 and 2; d_y1, d_y2 detector Y's.
// Each transmission amplitude lies in [0, 1].
struct AttenuationConfig {
  OamSystemConfig base;
  double d_x1 = 1.0;
  double d_x2 = 1.0;
  double d_y1 = 1.0;
  double d_y2 = 1.0;

  AttenuationConfig() = default;
  // Requires base.arm_count() == 2, base.pol == (1, 0) within
  // kNormalizationTol, and all transmissions in [0, 1].
  AttenuationConfig(OamSystemConfig base_in, double d_x1_in, double d_x2_in,
                    double d_y1_in, double d_y2_in);
};

// Joint distribution with attenuators applied. The diagonal is exactly zero;
//   p12 = t/4 * d_x1^2 d_y2^2,  p21 = t/4 * d_x2^2 d_y1^2,
// where t = a1^2 b2^2 + a2^2 b1^2 - 2 a1 a2 b1 b2 cos(delta1 - delta2) and
// delta_k = phi_k - psi_k. With all transmissions 1 this reduces exactly to
// the horizontal-polarization case of joint_distribution_closed.
JointDecisionDistribution attenuation_distribution(const AttenuationConfig& config);

// Feasibility of a joint-probability pair for this family: both entries can be
// realized iff each is at most 1/4. Inputs must lie in [0, 1].
bool attenuation_feasible(double p12, double p21);

}  // namespace photondm
