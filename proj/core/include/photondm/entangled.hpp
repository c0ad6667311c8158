#pragma once

#include "photondm/oam.hpp"
#include "photondm/tensor.hpp"

namespace photondm {

// Polarization-entangled source feeding two measurement stations. Each station
// has a half-wave plate and a polarizer in front of a splitter with two
// single-photon detectors; a joint decision is a coincidence between one
// detector of station X and one of station Y. All angles are radians and are
// stored reduced to [0, 2*pi).
struct EntangledConfig {
  double theta1 = 0.0;      // first source polarization direction
  double theta2 = 0.0;      // second source polarization direction
  double theta_hw1 = 0.0;   // station X half-wave plate angle
  double theta_hw2 = 0.0;   // station Y half-wave plate angle
  double alpha_x = 0.0;     // station X polarizer: transmitted-axis weight angle
  double beta_x = 0.0;      // station X polarizer: reflected-axis weight angle
  double alpha_y = 0.0;     // station Y polarizer weight angle
  double beta_y = 0.0;      // station Y polarizer weight angle

  EntangledConfig() = default;
  EntangledConfig(double theta1_in, double theta2_in, double theta_hw1_in,
                  double theta_hw2_in, double alpha_x_in, double beta_x_in,
                  double alpha_y_in, double beta_y_in);
};

// The four coincidence amplitudes in the order
// (X arm 1, Y arm 1), (X arm 1, Y arm 2), (X arm 2, Y arm 1), (X arm 2, Y arm 2).
// Valid for any configuration. Amplitudes are real-valued; the complex return
// type matches the rest of the library.
ComplexVector entangled_amplitudes_general(const EntangledConfig& config);

// Squared general amplitudes with loss = 1 - sum. Valid for any configuration.
JointDecisionDistribution entangled_distribution_general(const EntangledConfig& config);

// Closed-form distribution, valid only in the regime
//   theta2 - theta1 = pi/2 (mod 2*pi)  and  theta_hw1 = theta_hw2 (mod 2*pi),
// both within 1e-9 of circular distance; throws closed_form_inapplicable
// otherwise. In this regime the diagonal vanishes and
//   p12 = sin(beta_y)^2 cos(alpha_x)^2 / 2,
//   p21 = sin(beta_x)^2 cos(alpha_y)^2 / 2.
JointDecisionDistribution entangled_distribution(const EntangledConfig& config);

// Feasibility of a joint-probability pair for this family: both entries can be
// realized iff each is at most 1/2. Inputs must lie in [0, 1].
bool entangled_feasible(double p12, double p21);

}  // namespace photondm
