#pragma once

#include "spinent/matrix.hpp"

#include <span>
#include <vector>

namespace spinent {

/**
 * Projector onto |b_1> x |b_2> x ... x |b_n>.
 *
 * Bit 1 is spin up (the first single-spin basis vector, I^z = +1/2) and bit 0 is
 * spin down. Site 1 is the most significant position of the basis index, so
 * bits (0, 1) select basis index 2 of a two-spin space.
 */
DensityMatrix product_state(std::span<const int> bits);
DensityMatrix product_state(std::initializer_list<int> bits);

/// All spins up.
DensityMatrix rho_plus(int n);

/// All spins up except site 1, which is down.
DensityMatrix rho_minus(int n);

/**
 * Explicit pseudopure mixture (1 - epsilon) / 2^n * identity + epsilon * pure.
 *
 * Only for demonstration and tests: the identity part is invisible to traceless
 * observables and to unitary evolution, so all dynamics run on the pure part.
 */
DensityMatrix pseudopure(const DensityMatrix& pure, double epsilon);

} // namespace spinent
