// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cuntz/matrix_field.hpp"

namespace cuntz {

struct RandomFieldOptions {
  int n = 2;
  int rank = 0;          // rank of the factor M(x); 0 means n
  int degree = 2;        // trig degree on the circle, polynomial degree elsewhere
  double norm = 1.0;     // sup norm of the result
  bool vanishing = false;  // multiply by a bump so the field drops rank on part of the space
};

/// b(x) = M(x)* M(x) rescaled to the requested sup norm, with M smooth in the coordinates
/// (periodic on the circle).
MatrixField random_field(const SpacePtr& space, std::mt19937_64& rng, const RandomFieldOptions& options);

/// exp(i H(x)) for a Hermitian H affine in the coordinates.
std::vector<Matrix> random_unitary_field(const BaseSpace& space, int n, std::uint64_t seed);

}  // namespace cuntz
