#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entrocert/matrix.hpp"
#include "entrocert/quantum.hpp"

namespace entrocert {

/// Channel in Kraus form, A -> sum_j V_j A V_j^dagger, with every V_j of
/// shape dim_out x dim_in and sum_j V_j^dagger V_j = I within tolerance.
class KrausChannel {
public:
    /// Throws DimensionMismatch on badly shaped operators and ValidationError
    /// on an empty list, too many operators, or a trace-preservation residual
    /// above tolerance.
    KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus);

    static KrausChannel identity(std::size_t dim);
    /// Kraus operators |i><i|: kills off-diagonal entries.
    static KrausChannel dephasing(std::size_t dim);
    /// Kraus operators |i><j| / sqrt(d): every input goes to I/d.
    static KrausChannel completely_depolarizing(std::size_t dim);
    /// Qubit amplitude damping with decay probability gamma.
    static KrausChannel amplitude_damping(double gamma);
    /// Kraus operators <i|: the trace functional onto a 1-dim output.
    static KrausChannel trace_out(std::size_t dim);

    /// max |sum_j V_j^dagger V_j - I| entrywise. No validation beyond shapes.
    static double kraus_sum_residual(std::size_t dim_in, std::span<const ComplexMatrix> kraus);

    [[nodiscard]] std::size_t dim_in() const { return dim_in_; }
    [[nodiscard]] std::size_t dim_out() const { return dim_out_; }
    [[nodiscard]] std::size_t num_kraus() const { return kraus_.size(); }
    [[nodiscard]] std::span<const ComplexMatrix> kraus() const { return kraus_; }
    [[nodiscard]] double trace_preservation_residual() const;

    /// The linear action on an arbitrary dim_in x dim_in operator.
    [[nodiscard]] ComplexMatrix operator()(const ComplexMatrix& a) const;
    [[nodiscard]] MatrixMap as_map() const;

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::vector<ComplexMatrix> kraus_;
};

/// Environment-side action A -> sum_{ij} Tr[V_i A V_j^dagger] |i><j|, an
/// m x m matrix for a channel with m Kraus operators.
class ComplementaryMap {
public:
    explicit ComplementaryMap(const KrausChannel& phi);

    [[nodiscard]] std::size_t dim_in() const { return dim_in_; }
    [[nodiscard]] std::size_t dim_out() const { return kraus_.size(); }

    [[nodiscard]] ComplexMatrix operator()(const ComplexMatrix& a) const;
    [[nodiscard]] DensityMatrix apply(const DensityMatrix& rho) const;
    [[nodiscard]] MatrixMap as_map() const;

private:
    std::size_t dim_in_;
    std::vector<ComplexMatrix> kraus_;
};

/// Phi(rho) as a state. The output is renormalized to unit trace, absorbing
/// the channel's admitted trace-preservation residual.
DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho);

ComplementaryMap complementary(const KrausChannel& phi);

/// H(Phi(rho))
double output_entropy(const KrausChannel& phi, const DensityMatrix& rho);

/// H(Phi~(rho))
double complementary_output_entropy(const KrausChannel& phi, const DensityMatrix& rho);

/// I(rho, Phi) = H(rho) + H(Phi(rho)) - H(Phi~(rho))
double mutual_information_sum(const KrausChannel& phi, const DensityMatrix& rho);

/// I(rho, Phi) = H((Phi (x) Id)(|p><p|) || Phi(rho) (x) rho_K), with |p> =
/// purify(rho) and rho_K its reduced state on the reference factor.
double mutual_information_rel(const KrausChannel& phi, const DensityMatrix& rho);

/// The three weighted relative-entropy sums of the mutual-information gap
/// evaluated on one ensemble.
struct MutualInformationGapTerms {
    double input = 0.0;        // sum_i pi_i H(rho_i || rho)
    double output = 0.0;       // sum_i pi_i H(Phi(rho_i) || Phi(rho))
    double environment = 0.0;  // sum_i pi_i H(Phi~(rho_i) || Phi~(rho))

    [[nodiscard]] double value() const { return input + output - environment; }
};

MutualInformationGapTerms mutual_information_gap_terms(const KrausChannel& phi,
                                                       const DensityMatrix& rho,
                                                       const QuantumEnsemble& e);

/// Mutual-information gap on the rank-k eigenblock ensemble of rho; an upper
/// bound on Delta_k(rho|I_Phi). Exactly 0 when rank(rho) <= k.
double delta_k_mi_bound(const KrausChannel& phi, const DensityMatrix& rho, std::size_t k);

/// sum_i pi_i H(Phi(rho_i) || Phi(rho)): the Holevo quantity of the ensemble,
/// a lower bound on chi_Phi(rho), never its exact value.
double chi_lower_bound(const KrausChannel& phi, const DensityMatrix& rho,
                       const QuantumEnsemble& e);

/// max over matrix units E_ab of |Lambda(Phi(E_ab)) - Phi~(E_ab)|.
double verify_degrading(const KrausChannel& phi, const KrausChannel& lambda);

/// True when verify_degrading is below the degrading tolerance.
bool is_degrading_map(const KrausChannel& phi, const KrausChannel& lambda);

/// H(rho || sigma) - H(Phi(rho) || Phi(sigma)); nonnegative up to rounding.
double data_processing_check(const KrausChannel& phi, const DensityMatrix& rho,
                             const DensityMatrix& sigma);

}  // namespace entrocert
