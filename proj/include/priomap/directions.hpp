#pragma once

#include <Eigen/Dense>

#include "priomap/errors.hpp"

namespace priomap {

/// Deterministic grid of `count` unit directions covering the non-negative
/// orthant. d == 2 uses an inclusive angle sweep of [0, pi/2]; d == 3 uses a
/// Fibonacci lattice with the azimuth folded into the first quadrant. Other
/// dimensions throw UnsupportedDimension; count < 1 throws InvalidConfig.
Eigen::MatrixXd nonnegative_direction_grid(int d, int count);

}  // namespace priomap
