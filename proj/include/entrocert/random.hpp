#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "entrocert/channels.hpp"
#include "entrocert/classical.hpp"
#include "entrocert/quantum.hpp"

namespace entrocert {

/// Seeded generator with a fixed, portable algorithm:
///  - engine: std::mt19937_64 seeded with the given 64-bit seed;
///  - uniform(): (engine() >> 11) * 2^-53, in [0, 1);
///  - normal(): Box-Muller on two uniforms u1, u2 as
///    sqrt(-2 ln(1 - u1)) * cos(2 pi u2), one draw per call (no caching).
/// The standard library's distributions are avoided because their output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double normal();
    Complex complex_normal();
    /// Uniform integer in [lo, hi].
    std::size_t index(std::size_t lo, std::size_t hi);

private:
    std::mt19937_64 engine_;
};

/// Uniform point of the simplex on n outcomes (normalized exponentials).
Distribution random_distribution(Rng& rng, std::size_t n);

/// G G^dagger / Tr(G G^dagger) with G a dim x dim standard complex Gaussian.
DensityMatrix random_density_matrix(Rng& rng, std::size_t dim);

/// Normalized complex Gaussian vector.
std::vector<Complex> random_pure_vector(Rng& rng, std::size_t dim);

/// Eigenvectors of a random Hermitian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

/// Gaussian Kraus stack V_j, then V_j <- V_j S^{-1/2} with S = sum_j V_j^dagger V_j.
/// Requires num_kraus * dim_out >= dim_in so that S is invertible.
KrausChannel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                            std::size_t num_kraus);

/// Random ensemble of full-rank members with positive weights; its barycenter
/// is returned alongside.
struct RandomEnsemble {
    DensityMatrix barycenter;
    QuantumEnsemble ensemble;
};
RandomEnsemble random_quantum_ensemble(Rng& rng, std::size_t dim, std::size_t members);

/// A distribution x with x below x0 in the chaoticity order (x0 is more
/// chaotic than x), produced by `transfers` random moves of mass from a
/// smaller to a larger entry of the sorted vector.
Distribution less_chaotic_sample(Rng& rng, const Distribution& x0, std::size_t transfers);

}  // namespace entrocert
