#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entrocert/channels.hpp"
#include "entrocert/classical.hpp"
#include "entrocert/quantum.hpp"

namespace entrocert {

/// All distributions less chaotic than `dominator`.
struct MajorizationBall {
    Distribution dominator;
};

/// States diag(spectrum) for each listed spectrum. Every gap bound used here
/// is unitarily invariant, so this stands for the unitary orbits as well.
struct SpectrumFamily {
    std::vector<Distribution> spectra;
};

enum class StateSetKind { kExplicitList, kMajorizationBall, kSpectrumFamily };

/// A set of distributions or states to certify, with a free-text description.
class StateSet {
public:
    using Payload = std::variant<std::vector<Distribution>, MajorizationBall,
                                 std::vector<DensityMatrix>, SpectrumFamily>;

    StateSet(Payload payload, std::string descriptor);

    [[nodiscard]] StateSetKind kind() const;
    [[nodiscard]] bool is_classical() const;
    [[nodiscard]] const Payload& payload() const { return payload_; }
    [[nodiscard]] const std::string& descriptor() const { return descriptor_; }

    /// Members of a quantum set as states (spectrum families expanded).
    [[nodiscard]] std::vector<DensityMatrix> quantum_members() const;

private:
    Payload payload_;
    std::string descriptor_;
};

/// k -> certified upper bound on sup over the set of the gap functional.
/// Bounds can only certify continuity, never refute it: `bound_based` is
/// always set and the converse direction is left undecided.
struct ConvergenceReport {
    std::vector<std::size_t> k_values;
    std::vector<double> gap_bounds;  // nats
    std::string set_descriptor;
    double threshold = 0.0;
    bool certified = false;  // final gap bound < threshold
    bool bound_based = true;
    std::string note;

    /// Whether some gap bound at or before row i is below the threshold.
    [[nodiscard]] bool certified_so_far(std::size_t row) const;
};

/// 1, 2, ..., k_max
std::vector<std::size_t> linear_k_grid(std::size_t k_max);
/// 1, 2, 4, ..., always ending at k_max.
std::vector<std::size_t> geometric_k_grid(std::size_t k_max);

/// Gap-decay report for a classical set. Explicit lists use the max of the
/// per-member coarse-graining bound; a majorization ball at x0 uses S(k(x0)),
/// which bounds every member of the (infinite) set.
///
/// Throws InfiniteEntropyDominator if S(x0) is not finite and
/// std::invalid_argument for quantum sets.
ConvergenceReport certify_shannon_set(const StateSet& s, std::size_t k_max, double threshold);
ConvergenceReport certify_shannon_set(const StateSet& s, const std::vector<std::size_t>& k_grid,
                                      double threshold);

/// Gap-decay report for a quantum set (explicit list or spectrum family)
/// from the max of the per-member eigenblock bound.
ConvergenceReport certify_vn_set(const StateSet& s, std::size_t k_max, double threshold);
ConvergenceReport certify_vn_set(const StateSet& s, const std::vector<std::size_t>& k_grid,
                                 double threshold);

/// Per-k line of the mutual-information audit. Slacks are minima over the
/// set's members; an inequality holds when its slack is >= -tolerance.
struct MutualInformationAuditRow {
    std::size_t k = 0;
    double max_vn_bound = 0.0;
    double max_mi_bound = 0.0;
    double upper_slack = 0.0;        // min(2 vn - mi); tolerance 1e-9
    double environment_slack = 0.0;  // min(input term - environment term); tolerance 1e-9
    std::optional<double> lower_slack;  // min(mi - vn), only for verified degrading maps; 1e-8
    bool passed = true;
};

struct MutualInformationAudit {
    std::string set_descriptor;
    std::optional<double> degrading_residual;
    bool degradable = false;
    std::vector<MutualInformationAuditRow> rows;
    bool passed = true;
};

inline constexpr double kUpperSlackTolerance = 1e-9;
inline constexpr double kLowerSlackTolerance = 1e-8;
inline constexpr double kIdentityResidualTolerance = 1e-8;

/// Checks, for k = 1..k_max over every member of an explicit quantum list:
/// mi bound <= 2 vn bound, and (when `lambda` is given and passes
/// verify_degrading) mi bound >= vn bound.
MutualInformationAudit audit_mutual_information(const KrausChannel& phi, const StateSet& s,
                                                std::size_t k_max,
                                                const KrausChannel* lambda = nullptr);

struct OutputEntropyAuditRow {
    std::size_t k = 0;
    double max_vn_bound = 0.0;
    double max_output_gap = 0.0;          // sum_i pi_i H(Phi rho_i || Phi rho) on the eigenblocks
    double monotonicity_slack = 0.0;      // min(vn - output gap); tolerance 1e-9
    double max_identity_residual = 0.0;   // |H_Phi(rho) - sum pi H_Phi(rho_i) - gap|; 1e-8
    bool passed = true;
};

struct OutputEntropyAudit {
    std::string set_descriptor;
    std::vector<OutputEntropyAuditRow> rows;
    bool passed = true;
};

/// Output-entropy gap audit on the eigenblock ensembles of every member.
OutputEntropyAudit audit_output_entropy(const KrausChannel& phi, const StateSet& s,
                                        std::size_t k_max);

}  // namespace entrocert
