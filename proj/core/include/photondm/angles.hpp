#pragma once

namespace photondm {

// Canonical representative of `angle` in [0, 2*pi). All angles in this library
// are radians.
double reduce_angle(double angle);

// Shortest angular distance between two directions, in [0, pi].
double circular_distance(double u, double v);

}  // namespace photondm
