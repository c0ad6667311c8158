#include "photondm/attenuation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

void require_transmission(double d, const char* what) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw invalid_configuration(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

AttenuationConfig::AttenuationConfig(OamSystemConfig base_in, double d_x1_in,
                                     double d_x2_in, double d_y1_in, double d_y2_in)
    : base(std::move(base_in)), d_x1(d_x1_in), d_x2(d_x2_in), d_y1(d_y1_in), d_y2(d_y2_in) {
  if (base.arm_count() != 2) {
    throw invalid_configuration("the attenuation system is defined for two arms");
  }
  if (std::abs(base.pol.alpha - 1.0) > kNormalizationTol ||
      std::abs(base.pol.beta) > kNormalizationTol) {
    throw invalid_configuration(
        "the attenuation system requires horizontal polarization (alpha = 1, beta = 0)");
  }
  require_transmission(d_x1, "transmission d_x1");
  require_transmission(d_x2, "transmission d_x2");
  require_transmission(d_y1, "transmission d_y1");
  require_transmission(d_y2, "transmission d_y2");
}

JointDecisionDistribution attenuation_distribution(const AttenuationConfig& config) {
  const auto& a = config.base.phi_input.amplitudes;
  const auto& b = config.base.psi_input.amplitudes;
  const double delta1 = config.base.phi_input.phases[0] - config.base.psi_input.phases[0];
  const double delta2 = config.base.phi_input.phases[1] - config.base.psi_input.phases[1];
  const double t = a[0] * a[0] * b[1] * b[1] + a[1] * a[1] * b[0] * b[0] -
                   2.0 * a[0] * a[1] * b[0] * b[1] * std::cos(delta1 - delta2);
  const double quarter = 0.25 * t;
  const double p12 = quarter * config.d_x1 * config.d_x1 * config.d_y2 * config.d_y2;
  const double p21 = quarter * config.d_x2 * config.d_x2 * config.d_y1 * config.d_y1;
  return JointDecisionDistribution::checked(2, {0.0, p12, p21, 0.0}, 1.0 - p12 - p21);
}

bool attenuation_feasible(double p12, double p21) {
  if (!(p12 >= 0.0 && p12 <= 1.0) || !(p21 >= 0.0 && p21 <= 1.0)) {
    throw contract_violation("probabilities must lie in [0, 1]");
  }
  constexpr double bound = 0.25 + 1e-12;
  return p12 <= bound && p21 <= bound;
}

}  // namespace photondm
