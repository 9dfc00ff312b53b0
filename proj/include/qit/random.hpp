#pragma once

// Seeded generators of random quantum objects for Monte-Carlo estimators and
// randomized property checks.

#include <cstddef>
#include <random>
#include <vector>

#include "qit/matquant.hpp"

namespace qit {

using Rng = std::mt19937_64;

/// Haar-distributed pure state (normalized complex Gaussian vector).
PureState random_pure_state(std::size_t dim, Rng& rng);
/// Haar unitary via QR of a complex Ginibre matrix with phase correction.
UnitaryMatrix random_unitary(std::size_t dim, Rng& rng);
/// Full-rank mixed state G G† / tr(G G†) for a complex Ginibre G.
DensityMatrix random_density(std::size_t dim, Rng& rng);
/// Random state of the given rank (rank ≤ dim).
DensityMatrix random_density_of_rank(std::size_t dim, std::size_t rank, Rng& rng);
/// Trace-preserving channel with `kraus_count` Kraus operators obtained from a
/// random isometry.
QuantumOperation random_channel(std::size_t dim, std::size_t kraus_count, Rng& rng);
/// Orthogonal projector of the given rank in a random basis.
ComplexMatrix random_projector(std::size_t dim, std::size_t rank, Rng& rng);
/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Random POVM with `outcomes` elements, Σ E_y = I.
std::vector<ComplexMatrix> random_povm(std::size_t dim, std::size_t outcomes, Rng& rng);

}  // namespace qit
