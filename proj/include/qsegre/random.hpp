#pragma once

#include <cstdint>
#include <random>

#include "qsegre/state.hpp"
#include "qsegre/types.hpp"

namespace qsegre {

using Rng = std::mt19937_64;

/// Vector of iid standard complex Gaussians.
Vector gaussian_vector(Index dim, Rng& rng);

/// Haar-random pure state: normalized complex Gaussian amplitudes.
StateVector haar_state(int qubits, Rng& rng);

/// Random point of P^dim (dim+1 Gaussian homogeneous coordinates).
ProjectivePoint random_point(Index proj_dim, Rng& rng);

/// Haar-random unitary via QR of a Gaussian matrix with phase-corrected R.
Matrix haar_unitary(Index dim, Rng& rng);

} // namespace qsegre
