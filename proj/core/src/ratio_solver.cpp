#include "photondm/ratio_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kMaxBisectionSteps = 200;

void require_target(const AsymmetryRatio& target) {
  if (target.unbounded) return;
  if (!std::isfinite(target.value) || target.value <= 0.0) {
    throw contract_violation("ratio target must be positive (or the unbounded marker)");
  }
}

AsymmetryRatio achieved_ratio(const JointDecisionDistribution& dist) {
  const double p12 = dist.prob(1, 2);
  const double p21 = dist.prob(2, 1);
  if (p12 == 0.0) return AsymmetryRatio::infinite();
  return AsymmetryRatio::finite(p21 / p12);
}

void fill_achieved(RatioSolution& sol, const JointDecisionDistribution& dist) {
  sol.p12 = dist.prob(1, 2);
  sol.p21 = dist.prob(2, 1);
  sol.loss = dist.loss;
  sol.conflict = dist.conflict();
  sol.achieved = achieved_ratio(dist);
}

// The polynomial whose root in theta defines the solved configuration for a
// given target r; vanishes identically at exact solutions on either locus.
double locus_polynomial(double theta, double r, OamRatioLocus locus) {
  const double sign = (locus == OamRatioLocus::a2b1_zero) ? 1.0 : -1.0;
  return 3.0 - 3.0 * r - std::cos(4.0 * theta) + r * std::cos(4.0 * theta) +
         sign * 4.0 * std::sin(2.0 * theta) + sign * 4.0 * r * std::sin(2.0 * theta);
}

OamSystemConfig locus_config(double theta, OamRatioLocus locus) {
  const bool first = (locus == OamRatioLocus::a2b1_zero);
  std::vector<double> a = first ? std::vector<double>{1.0, 0.0}
                                : std::vector<double>{0.0, 1.0};
  std::vector<double> b = first ? std::vector<double>{0.0, 1.0}
                                : std::vector<double>{1.0, 0.0};
  return OamSystemConfig(PolarizationAmplitudes::from_theta(theta),
                         OamSuperposition(std::move(a), {0.0, 0.0}, OamSign::positive),
                         OamSuperposition(std::move(b), {0.0, 0.0}, OamSign::negative));
}

}  // namespace

double oam_ratio_forward(double theta, OamRatioLocus locus) {
  if (!(theta > -kQuarterPi && theta < kQuarterPi)) {
    throw contract_violation("theta must lie in (-pi/4, pi/4)");
  }
  // tan(pi/4 +/- theta) expanded through the addition identity: exact at
  // theta = 0 and well conditioned across the whole open interval.
  const double t = std::tan(theta);
  const double u = (locus == OamRatioLocus::a2b1_zero) ? (1.0 + t) / (1.0 - t)
                                                       : (1.0 - t) / (1.0 + t);
  const double u2 = u * u;
  return u2 * u2;
}

RatioSolution solve_oam_ratio(const AsymmetryRatio& target, OamRatioLocus locus) {
  require_target(target);
  RatioSolution sol;
  sol.system = SystemId::oam;
  sol.target = target;
  sol.locus = locus;

  if (target.unbounded) {
    // Exact corner (p12, p21) = (0, 1): equal polarization amplitudes cancel
    // the p12 pathway identically. Bit-equal amplitudes, not cos/sin of pi/4,
    // so the cancellation is exact in floating point as well.
    const double half = std::sqrt(0.5);
    const bool first = (locus == OamRatioLocus::a2b1_zero);
    sol.theta = first ? kQuarterPi : -kQuarterPi;
    OamSystemConfig config(
        PolarizationAmplitudes(half, first ? half : -half),
        OamSuperposition(first ? std::vector<double>{1.0, 0.0}
                               : std::vector<double>{0.0, 1.0},
                         {0.0, 0.0}, OamSign::positive),
        OamSuperposition(first ? std::vector<double>{0.0, 1.0}
                               : std::vector<double>{1.0, 0.0},
                         {0.0, 0.0}, OamSign::negative));
    const JointDecisionDistribution dist = joint_distribution_closed(config);
    fill_achieved(sol, dist);
    sol.parameters = std::move(config);
    sol.residual = 0.0;
    return sol;
  }

  const double r = target.value;
  double theta = 0.0;
  int steps = 0;
  if (r != 1.0) {
    // The forward map is strictly monotone on (-pi/4, pi/4) (increasing on the
    // first locus, decreasing on the second) and spans (0, inf), so plain
    // bisection cannot fail on this bracket.
    const double margin = 1e-12;
    double lo = -kQuarterPi + margin;
    double hi = kQuarterPi - margin;
    const double direction = (locus == OamRatioLocus::a2b1_zero) ? 1.0 : -1.0;
    while (hi - lo > 1e-16 && steps < kMaxBisectionSteps) {
      const double mid = 0.5 * (lo + hi);
      const double value = oam_ratio_forward(mid, locus);
      if ((value < r) == (direction > 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++steps;
    }
    if (hi - lo > 1e-12) {
      throw solver_failure("bisection did not converge");
    }
    theta = 0.5 * (lo + hi);
  }
  sol.theta = theta;
  sol.bisection_steps = steps;
  OamSystemConfig config = locus_config(theta, locus);
  const JointDecisionDistribution dist = joint_distribution_closed(config);
  fill_achieved(sol, dist);
  sol.parameters = std::move(config);
  sol.residual = locus_polynomial(theta, r, locus);
  return sol;
}

RatioSolution solve_entangled_ratio(const AsymmetryRatio& target) {
  require_target(target);
  RatioSolution sol;
  sol.system = SystemId::entangled;
  sol.target = target;

  // Regime: theta2 = theta1 + pi/2, shared half-wave plate angle. The larger
  // probability sits at its maximum 1/2 (polarizer fully open); the smaller is
  // scaled by one closing polarizer angle. sin(0) = 0 makes the unbounded
  // corner exact.
  double alpha_x = 0.0, beta_x = kHalfPi, alpha_y = 0.0, beta_y = kHalfPi;
  if (target.unbounded) {
    beta_y = 0.0;  // p12 = 0 exactly, p21 = 1/2
  } else if (target.value <= 1.0) {
    alpha_y = std::acos(std::sqrt(target.value));  // p12 = 1/2, p21 = r/2
  } else {
    alpha_x = std::acos(std::sqrt(1.0 / target.value));  // p21 = 1/2, p12 = 1/(2r)
  }
  EntangledConfig config(0.0, kHalfPi, 0.0, 0.0, alpha_x, beta_x, alpha_y, beta_y);
  const JointDecisionDistribution dist = entangled_distribution(config);
  fill_achieved(sol, dist);
  sol.parameters = config;
  if (target.unbounded) {
    sol.residual = (sol.achieved.unbounded && sol.p21 == 0.5) ? 0.0 : 1.0;
  } else {
    sol.residual = std::abs(sol.achieved.unbounded
                                ? std::numeric_limits<double>::infinity()
                                : sol.achieved.value - target.value) /
                   std::max(1.0, target.value);
  }
  return sol;
}

RatioSolution solve_attenuation_ratio(const AsymmetryRatio& target) {
  require_target(target);
  RatioSolution sol;
  sol.system = SystemId::attenuation;
  sol.target = target;

  // Fully asymmetric arms make the interference bracket exactly 1, so each
  // probability is transmission^2 / 4; the smaller side is scaled by one
  // attenuator and every other transmission stays at 1.
  OamSystemConfig base(PolarizationAmplitudes(1.0, 0.0),
                       OamSuperposition({1.0, 0.0}, {0.0, 0.0}, OamSign::positive),
                       OamSuperposition({0.0, 1.0}, {0.0, 0.0}, OamSign::negative));
  double d_x1 = 1.0, d_x2 = 1.0, d_y1 = 1.0, d_y2 = 1.0;
  if (target.unbounded) {
    d_x1 = 0.0;  // p12 = 0 exactly, p21 = 1/4
  } else if (target.value <= 1.0) {
    d_x2 = std::sqrt(target.value);  // p12 = 1/4, p21 = r/4
  } else {
    d_x1 = std::sqrt(1.0 / target.value);  // p21 = 1/4, p12 = 1/(4r)
  }
  AttenuationConfig config(std::move(base), d_x1, d_x2, d_y1, d_y2);
  const JointDecisionDistribution dist = attenuation_distribution(config);
  fill_achieved(sol, dist);
  sol.parameters = std::move(config);
  if (target.unbounded) {
    sol.residual = (sol.achieved.unbounded && sol.p21 == 0.25) ? 0.0 : 1.0;
  } else {
    sol.residual = std::abs(sol.achieved.unbounded
                                ? std::numeric_limits<double>::infinity()
                                : sol.achieved.value - target.value) /
                   std::max(1.0, target.value);
  }
  return sol;
}

}  // namespace photondm
