#include "photondm/entangled.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "photondm/angles.hpp"
#include "photondm/errors.hpp"

namespace photondm {

namespace {

// Circular-distance tolerance for the closed-form regime checks.
constexpr double kRegimeTol = 1e-9;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw invalid_configuration(std::string(what) + " must be finite");
  }
}

}  // namespace

EntangledConfig::EntangledConfig(double theta1_in, double theta2_in, double theta_hw1_in,
                                 double theta_hw2_in, double alpha_x_in, double beta_x_in,
                                 double alpha_y_in, double beta_y_in) {
  require_finite(theta1_in, "source angle");
  require_finite(theta2_in, "source angle");
  require_finite(theta_hw1_in, "half-wave plate angle");
  require_finite(theta_hw2_in, "half-wave plate angle");
  require_finite(alpha_x_in, "polarizer angle");
  require_finite(beta_x_in, "polarizer angle");
  require_finite(alpha_y_in, "polarizer angle");
  require_finite(beta_y_in, "polarizer angle");
  theta1 = reduce_angle(theta1_in);
  theta2 = reduce_angle(theta2_in);
  theta_hw1 = reduce_angle(theta_hw1_in);
  theta_hw2 = reduce_angle(theta_hw2_in);
  alpha_x = reduce_angle(alpha_x_in);
  beta_x = reduce_angle(beta_x_in);
  alpha_y = reduce_angle(alpha_y_in);
  beta_y = reduce_angle(beta_y_in);
}

ComplexVector entangled_amplitudes_general(const EntangledConfig& c) {
  // Station responses to a source photon polarized along `theta`: component 0
  // reaches the station's first detector, component 1 the second.
  const auto station_x = [&c](double theta) {
    const double u = 2.0 * c.theta_hw1 - theta;
    return std::array<double, 2>{std::cos(c.alpha_x) * std::cos(u),
                                 std::sin(c.beta_x) * std::sin(u)};
  };
  const auto station_y = [&c](double theta) {
    const double u = 2.0 * c.theta_hw2 - theta;
    return std::array<double, 2>{std::cos(c.alpha_y) * std::cos(u),
                                 std::sin(c.beta_y) * std::sin(u)};
  };
  const std::array<double, 2> f1 = station_x(c.theta1);
  const std::array<double, 2> f2 = station_y(c.theta2);
  const std::array<double, 2> g1 = station_x(c.theta2);
  const std::array<double, 2> g2 = station_y(c.theta1);
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out[2 * i + j] = r * (f1[i] * f2[j] - g1[i] * g2[j]);
    }
  }
  return out;
}

JointDecisionDistribution entangled_distribution_general(const EntangledConfig& config) {
  const ComplexVector amps = entangled_amplitudes_general(config);
  std::vector<double> p(4);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = std::norm(amps[i]);
    total += p[i];
  }
  return JointDecisionDistribution::checked(2, std::move(p), 1.0 - total);
}

JointDecisionDistribution entangled_distribution(const EntangledConfig& config) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (circular_distance(config.theta2 - config.theta1, half_pi) > kRegimeTol) {
    throw closed_form_inapplicable(
        "closed form needs theta2 - theta1 = pi/2 (mod 2*pi)");
  }
  if (circular_distance(config.theta_hw1, config.theta_hw2) > kRegimeTol) {
    throw closed_form_inapplicable(
        "closed form needs equal half-wave plate angles (mod 2*pi)");
  }
  const double cax = std::cos(config.alpha_x);
  const double cay = std::cos(config.alpha_y);
  const double sbx = std::sin(config.beta_x);
  const double sby = std::sin(config.beta_y);
  const double p12 = 0.5 * sby * sby * cax * cax;
  const double p21 = 0.5 * sbx * sbx * cay * cay;
  return JointDecisionDistribution::checked(2, {0.0, p12, p21, 0.0},
                                            1.0 - p12 - p21);
}

bool entangled_feasible(double p12, double p21) {
  if (!(p12 >= 0.0 && p12 <= 1.0) || !(p21 >= 0.0 && p21 <= 1.0)) {
    throw contract_violation("probabilities must lie in [0, 1]");
  }
  constexpr double bound = 0.5 + 1e-12;
  return p12 <= bound && p21 <= bound;
}

}  // namespace photondm
