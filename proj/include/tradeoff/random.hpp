#pragma once

// Seeded random generators.

#include <cstdint>
#include <random>
#include <vector>

#include "tradeoff/qmat.hpp"

namespace tradeoff {

using Rng = std::mt19937_64;

/// Complex Gaussian matrix with independent standard normal real and imaginary parts.
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed isometry (rows >= cols) from QR of a Gaussian matrix with the phase fix.
Matrix haar_isometry(int rows, int cols, Rng& rng);
Matrix haar_unitary(int d, Rng& rng);
Vector haar_state(int d, Rng& rng);

/// Full-rank Ginibre density operator (Hilbert-Schmidt measure).
DensityOperator random_density(int d, Rng& rng);

/// Uniform point in the interior of the probability simplex.
std::vector<double> random_simplex(int k, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
Matrix random_hermitian(int d, Rng& rng);

}  // namespace tradeoff
