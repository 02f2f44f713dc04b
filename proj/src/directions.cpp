#include "priomap/directions.hpp"

#include <cmath>
#include <numbers>

namespace priomap {

Eigen::MatrixXd nonnegative_direction_grid(int d, int count) {
  if (count < 1) throw InvalidConfig("direction grid needs count >= 1");
  Eigen::MatrixXd grid(count, d);
  const double half_pi = std::numbers::pi / 2.0;
  if (d == 2) {
    // Inclusive sweep: both axes are always present.
    for (int t = 0; t < count; ++t) {
      const double theta = count == 1 ? 0.0 : half_pi * t / (count - 1);
      grid(t, 0) = std::cos(theta);
      grid(t, 1) = std::sin(theta);
    }
  } else if (d == 3) {
    // Fibonacci lattice on the sphere, restricted to the z >= 0 band and the
    // azimuth folded into [0, pi/2] so every point lands in the octant.
    const double phi = std::numbers::phi;
    for (int t = 0; t < count; ++t) {
      const double z = (t + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double frac = std::fmod(t / phi, 1.0);
      const double azim = frac * half_pi;
      grid(t, 0) = r * std::cos(azim);
      grid(t, 1) = r * std::sin(azim);
      grid(t, 2) = z;
    }
  } else {
    throw UnsupportedDimension("direction grid supports d = 2 or 3");
  }
  return grid;
}

}  // namespace priomap
