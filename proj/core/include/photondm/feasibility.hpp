#pragma once

#include <optional>
#include <vector>

#include "photondm/oam.hpp"

namespace photondm {

enum class SystemId { oam, entangled, attenuation };

// The asymmetry ratio y = p21 / p12. Corners with p12 = 0 are legitimate
// operating points, so the unbounded case is an explicit marker rather than a
// floating-point infinity that could leak into arithmetic.
struct AsymmetryRatio {
  double value = 0.0;
  bool unbounded = false;

  static AsymmetryRatio finite(double v) { return {v, false}; }
  static AsymmetryRatio infinite() { return {0.0, true}; }
};

enum class FrontierBranch { upper, lower };

// Feasibility region of the interference system in the (p12, p21) plane:
//   2 * (p12 + p21) <= 1 + (p12 - p21)^2   (within 1e-12 slack).
// Inputs must be finite and non-negative.
bool oam_feasible(double p12, double p21);

// Frontier of the interference system: x is the minimum loss-plus-conflict
// probability achievable at asymmetry ratio y = p21 / p12. The minimizing
// configurations are conflict-free, so x equals their loss.
//
// x as a function of the boundary ratio: x = 2*sqrt(y) / (sqrt(y) + 1)^2 for
// finite y >= 0; unbounded y maps to x = 0.
double oam_frontier_x_of_y(const AsymmetryRatio& y);

// Boundary ratio as a function of x in [0, 1/2]. The upper branch at x = 0 is
// the unbounded marker; elsewhere
//   upper: ((1 + s) / (1 - s))^2,  lower: ((1 - s) / (1 + s))^2,
// with s = sqrt(1 - 2x). The two branches meet at x = 1/2 with y = 1.
AsymmetryRatio oam_frontier_y_of_x(double x, FrontierBranch branch);

// Entangled-source frontier: x (minimum loss-plus-conflict at ratio y, met
// conflict-free) ranges over [0, 1/2]; the upper branch y = 1 / (1 - 2x) is
// open at x = 1/2, the lower branch y = 1 - 2x is closed. Throws
// frontier_domain_error outside the branch domain.
double entangled_frontier_y_of_x(double x, FrontierBranch branch);
// Inverse maps: upper needs y >= 1 (x = (y - 1) / (2y)), lower 0 < y <= 1
// (x = (1 - y) / 2).
double entangled_frontier_x_of_y(double y, FrontierBranch branch);

// Attenuation frontier: x (minimum loss-plus-conflict at ratio y; the system
// is conflict-free by construction) ranges over [1/2, 3/4]; the upper branch
// y = 1 / (3 - 4x) is open at x = 3/4, the lower branch y = 3 - 4x is closed.
double attenuation_frontier_y_of_x(double x, FrontierBranch branch);
// Inverse maps: upper needs y >= 1 (x = (3y - 1) / (4y)), lower 0 < y <= 1
// (x = (3 - y) / 4).
double attenuation_frontier_x_of_y(double y, FrontierBranch branch);

// Valid x-range of a system's frontier; when the upper branch is open at the
// right endpoint, that endpoint is reported here.
struct FrontierDomain {
  double x_min = 0.0;
  double x_max = 0.0;
  std::optional<double> upper_open_at;
};
FrontierDomain frontier_domain(SystemId system);

// Interference-system configurations that sit exactly on the feasibility
// boundary at a fully asymmetric corner: arm amplitudes (cos, sin) of
//   theta_a = (n + m + 1) * pi / 2,  theta_b = (m - n) * pi / 2,
// zero phases, and polarization angle theta = (2k + 1) * pi / 4.
struct BoundaryWitness {
  int n = 0;
  int m = 0;
  int k = 0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta = 0.0;

  static BoundaryWitness from_indices(int n, int m, int k);
  OamSystemConfig to_config() const;
};

// Round-trip consistency of the frontier maps: for each y in `grid` (finite,
// positive), converts y -> x -> y on the matching branch (upper when y >= 1)
// and returns the maximum relative error |y_back - y| / max(1, y).
double frontier_conversion_check(SystemId system, const std::vector<double>& y_grid);

}  // namespace photondm
