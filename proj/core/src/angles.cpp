#include "photondm/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace photondm {

double reduce_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  // Adding two_pi to a tiny negative remainder can round up to two_pi itself.
  if (r >= two_pi) r = 0.0;
  return r;
}

double circular_distance(double u, double v) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double d = reduce_angle(u - v);
  return std::min(d, two_pi - d);
}

}  // namespace photondm
