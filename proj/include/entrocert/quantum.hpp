#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "entrocert/classical.hpp"
#include "entrocert/matrix.hpp"

namespace entrocert {

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// The spectrum is computed once at construction. Eigenvalues in
/// [-tol, 0] are clamped to zero and the spectrum renormalized; anything more
/// negative is rejected.
class DensityMatrix {
public:
    /// Throws NotSquare or ValidationError (Hermiticity, trace, or negative
    /// eigenvalue residual in the message).
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix pure(std::span<const Complex> psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix diagonal(std::span<const double> probs);

    [[nodiscard]] std::size_t dim() const { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
    [[nodiscard]] const EigenSystem& eigensystem() const { return eig_; }
    /// Clamped, renormalized eigenvalues, nonincreasing.
    [[nodiscard]] std::span<const double> spectrum() const { return spectrum_; }
    /// Number of eigenvalues above the quantum support threshold.
    [[nodiscard]] std::size_t rank() const;

private:
    ComplexMatrix matrix_;
    EigenSystem eig_;
    std::vector<double> spectrum_;
};

/// Atomic ensemble {weights_i, members_i} of density matrices.
class QuantumEnsemble {
public:
    QuantumEnsemble(std::vector<double> weights, std::vector<DensityMatrix> members);

    [[nodiscard]] std::span<const double> weights() const { return weights_; }
    [[nodiscard]] std::span<const DensityMatrix> members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    [[nodiscard]] ComplexMatrix barycenter() const;

private:
    std::vector<double> weights_;
    std::vector<DensityMatrix> members_;
};

/// Throws BarycenterMismatch when the ensemble does not average to rho.
void require_barycenter(const DensityMatrix& rho, const QuantumEnsemble& e);

/// -Tr rho ln rho in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// H(rho || sigma) evaluated in rho's eigenbasis; +infinity when supp rho is
/// not contained in supp sigma (tested as Tr[rho P_ker(sigma)] > tolerance).
double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// rho = sum_i s_i |e_i><e_i| over the positive part of the spectrum.
QuantumEnsemble spectral_ensemble(const DensityMatrix& rho);

/// Eigenvalues (nonincreasing) grouped in consecutive blocks of k; each member
/// mixes its block's eigenprojectors and has rank <= k. Returns {1: rho} when
/// rank(rho) <= k.
QuantumEnsemble rank_k_decomposition(const DensityMatrix& rho, std::size_t k);

/// sum_i pi_i H(rho_i || rho). Throws BarycenterMismatch, or ValidationError
/// if the value disagrees with H(rho) - sum_i pi_i H(rho_i).
double quantum_ensemble_gap(const DensityMatrix& rho, const QuantumEnsemble& e);

/// |[H(rho) - sum_i pi_i H(rho_i)] - sum_i pi_i H(rho_i || rho)|
double quantum_gap_identity_residual(const DensityMatrix& rho, const QuantumEnsemble& e);

/// Gap of the rank-k eigenblock decomposition; upper bound on Delta_k(rho|H).
double delta_k_vn_bound(const DensityMatrix& rho, std::size_t k);

/// sum_j sqrt(s_j) |e_j> (x) |j>, a vector of length dim^2. Tracing out the
/// second factor returns rho; tracing out the first returns diag(spectrum).
std::vector<Complex> purify(const DensityMatrix& rho);

/// |H(w) - H(w_1) - H(w_2) + H(w || w_1 (x) w_2)| for a bipartite state w.
double bipartite_entropy_identity_residual(const DensityMatrix& omega,
                                           std::pair<std::size_t, std::size_t> dims);

}  // namespace entrocert
