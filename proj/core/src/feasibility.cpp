#include "photondm/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "photondm/errors.hpp"

namespace photondm {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

void require_probability(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw contract_violation("probabilities must be finite and non-negative");
  }
}

void require_in_domain(double x, const FrontierDomain& dom, const char* system) {
  if (!std::isfinite(x) || x < dom.x_min || x > dom.x_max) {
    throw frontier_domain_error(std::string("x outside the ") + system +
                                " frontier domain [" + std::to_string(dom.x_min) + ", " +
                                std::to_string(dom.x_max) + "]");
  }
}

void require_branch_ratio(double y, FrontierBranch branch) {
  if (!std::isfinite(y) || y <= 0.0) {
    throw contract_violation("frontier ratio must be finite and positive");
  }
  if (branch == FrontierBranch::upper && y < 1.0) {
    throw contract_violation("the upper branch covers ratios >= 1");
  }
  if (branch == FrontierBranch::lower && y > 1.0) {
    throw contract_violation("the lower branch covers ratios <= 1");
  }
}

}  // namespace

bool oam_feasible(double p12, double p21) {
  require_probability(p12);
  require_probability(p21);
  const double d = p12 - p21;
  return 2.0 * (p12 + p21) <= 1.0 + d * d + kFeasibilitySlack;
}

double oam_frontier_x_of_y(const AsymmetryRatio& y) {
  if (y.unbounded) return 0.0;
  if (!std::isfinite(y.value) || y.value < 0.0) {
    throw contract_violation("frontier ratio must be non-negative");
  }
  const double s = std::sqrt(y.value);
  return 2.0 * s / ((s + 1.0) * (s + 1.0));
}

AsymmetryRatio oam_frontier_y_of_x(double x, FrontierBranch branch) {
  const FrontierDomain dom = frontier_domain(SystemId::oam);
  require_in_domain(x, dom, "interference-system");
  const double s = std::sqrt(std::max(0.0, 1.0 - 2.0 * x));
  if (branch == FrontierBranch::upper) {
    if (x == 0.0) return AsymmetryRatio::infinite();
    const double q = (1.0 + s) / (1.0 - s);
    return AsymmetryRatio::finite(q * q);
  }
  const double q = (1.0 - s) / (1.0 + s);
  return AsymmetryRatio::finite(q * q);
}

double entangled_frontier_y_of_x(double x, FrontierBranch branch) {
  const FrontierDomain dom = frontier_domain(SystemId::entangled);
  require_in_domain(x, dom, "entangled-system");
  if (branch == FrontierBranch::upper) {
    if (x >= *dom.upper_open_at) {
      throw frontier_domain_error(
          "the upper entangled branch is open at x = 1/2 (ratio diverges)");
    }
    return 1.0 / (1.0 - 2.0 * x);
  }
  return 1.0 - 2.0 * x;
}

double entangled_frontier_x_of_y(double y, FrontierBranch branch) {
  require_branch_ratio(y, branch);
  if (branch == FrontierBranch::upper) return (y - 1.0) / (2.0 * y);
  return (1.0 - y) / 2.0;
}

double attenuation_frontier_y_of_x(double x, FrontierBranch branch) {
  const FrontierDomain dom = frontier_domain(SystemId::attenuation);
  require_in_domain(x, dom, "attenuation-system");
  if (branch == FrontierBranch::upper) {
    if (x >= *dom.upper_open_at) {
      throw frontier_domain_error(
          "the upper attenuation branch is open at x = 3/4 (ratio diverges)");
    }
    return 1.0 / (3.0 - 4.0 * x);
  }
  return 3.0 - 4.0 * x;
}

double attenuation_frontier_x_of_y(double y, FrontierBranch branch) {
  require_branch_ratio(y, branch);
  if (branch == FrontierBranch::upper) return (3.0 * y - 1.0) / (4.0 * y);
  return (3.0 - y) / 4.0;
}

FrontierDomain frontier_domain(SystemId system) {
  switch (system) {
    case SystemId::oam:
      return {0.0, 0.5, std::nullopt};
    case SystemId::entangled:
      return {0.0, 0.5, 0.5};
    case SystemId::attenuation:
      return {0.5, 0.75, 0.75};
  }
  throw contract_violation("unknown system");
}

BoundaryWitness BoundaryWitness::from_indices(int n, int m, int k) {
  constexpr double pi = std::numbers::pi;
  BoundaryWitness w;
  w.n = n;
  w.m = m;
  w.k = k;
  w.theta_a = (n + m + 1) * pi / 2.0;
  w.theta_b = (m - n) * pi / 2.0;
  w.theta = (2 * k + 1) * pi / 4.0;
  return w;
}

OamSystemConfig BoundaryWitness::to_config() const {
  return OamSystemConfig(
      PolarizationAmplitudes::from_theta(theta),
      OamSuperposition({std::cos(theta_a), std::sin(theta_a)}, {0.0, 0.0},
                       OamSign::positive),
      OamSuperposition({std::cos(theta_b), std::sin(theta_b)}, {0.0, 0.0},
                       OamSign::negative));
}

double frontier_conversion_check(SystemId system, const std::vector<double>& y_grid) {
  double worst = 0.0;
  for (double y : y_grid) {
    if (!std::isfinite(y) || y <= 0.0) {
      throw contract_violation("conversion check needs finite positive ratios");
    }
    const FrontierBranch branch =
        (y >= 1.0) ? FrontierBranch::upper : FrontierBranch::lower;
    double back = 0.0;
    switch (system) {
      case SystemId::oam: {
        const double x = oam_frontier_x_of_y(AsymmetryRatio::finite(y));
        const AsymmetryRatio r = oam_frontier_y_of_x(x, branch);
        back = r.value;  // finite: y > 0 implies x > 0
        break;
      }
      case SystemId::entangled:
        back = entangled_frontier_y_of_x(entangled_frontier_x_of_y(y, branch), branch);
        break;
      case SystemId::attenuation:
        back = attenuation_frontier_y_of_x(attenuation_frontier_x_of_y(y, branch), branch);
        break;
    }
    worst = std::max(worst, std::abs(back - y) / std::max(1.0, y));
  }
  return worst;
}

}  // namespace photondm
