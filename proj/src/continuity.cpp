#include "entrocert/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entrocert/errors.hpp"

namespace entrocert {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ConvergenceReport finish(std::vector<std::size_t> grid, std::vector<double> bounds,
                         std::string descriptor, double threshold, std::string note) {
    ConvergenceReport r;
    r.k_values = std::move(grid);
    r.gap_bounds = std::move(bounds);
    r.set_descriptor = std::move(descriptor);
    r.threshold = threshold;
    r.certified = !r.gap_bounds.empty() && r.gap_bounds.back() < threshold;
    r.note = std::move(note);
    return r;
}

void check_grid(const std::vector<std::size_t>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == 0 || (i > 0 && grid[i] <= grid[i - 1])) {
            throw std::invalid_argument("k grid must be increasing and start at >= 1");
        }
    }
}

std::vector<DensityMatrix> explicit_quantum_list(const StateSet& s, const char* who) {
    if (const auto* list = std::get_if<std::vector<DensityMatrix>>(&s.payload())) {
        if (list->empty()) throw std::invalid_argument(std::string(who) + ": empty state set");
        return *list;
    }
    throw std::invalid_argument(std::string(who) + " needs an explicit list of states");
}

}  // namespace

StateSet::StateSet(Payload payload, std::string descriptor)
    : payload_(std::move(payload)), descriptor_(std::move(descriptor)) {}

StateSetKind StateSet::kind() const {
    return std::visit(Overloaded{
                          [](const MajorizationBall&) { return StateSetKind::kMajorizationBall; },
                          [](const SpectrumFamily&) { return StateSetKind::kSpectrumFamily; },
                          [](const auto&) { return StateSetKind::kExplicitList; },
                      },
                      payload_);
}

bool StateSet::is_classical() const {
    return std::holds_alternative<std::vector<Distribution>>(payload_) ||
           std::holds_alternative<MajorizationBall>(payload_);
}

std::vector<DensityMatrix> StateSet::quantum_members() const {
    if (const auto* list = std::get_if<std::vector<DensityMatrix>>(&payload_)) return *list;
    if (const auto* family = std::get_if<SpectrumFamily>(&payload_)) {
        std::vector<DensityMatrix> out;
        for (const auto& spectrum : family->spectra)
            out.push_back(DensityMatrix::diagonal(spectrum.probs()));
        return out;
    }
    throw std::invalid_argument("state set is classical");
}

bool ConvergenceReport::certified_so_far(std::size_t row) const {
    for (std::size_t i = 0; i <= row && i < gap_bounds.size(); ++i)
        if (gap_bounds[i] < threshold) return true;
    return false;
}

std::vector<std::size_t> linear_k_grid(std::size_t k_max) {
    std::vector<std::size_t> grid(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) grid[k - 1] = k;
    return grid;
}

std::vector<std::size_t> geometric_k_grid(std::size_t k_max) {
    std::vector<std::size_t> grid;
    for (std::size_t k = 1; k < k_max; k *= 2) grid.push_back(k);
    if (k_max >= 1) grid.push_back(k_max);
    return grid;
}

ConvergenceReport certify_shannon_set(const StateSet& s, std::size_t k_max, double threshold) {
    return certify_shannon_set(s, linear_k_grid(k_max), threshold);
}

ConvergenceReport certify_shannon_set(const StateSet& s, const std::vector<std::size_t>& k_grid,
                                      double threshold) {
    check_grid(k_grid);
    std::vector<double> bounds;
    bounds.reserve(k_grid.size());
    std::string note;
    if (const auto* ball = std::get_if<MajorizationBall>(&s.payload())) {
        if (!std::isfinite(shannon_entropy(ball->dominator))) {
            throw InfiniteEntropyDominator("dominating distribution has infinite entropy");
        }
        for (std::size_t k : k_grid) bounds.push_back(delta_k_shannon_bound(ball->dominator, k));
        note = "majorization ball: S(k(x0)) bounds every member";
    } else if (const auto* list = std::get_if<std::vector<Distribution>>(&s.payload())) {
        if (list->empty()) throw std::invalid_argument("certify_shannon_set: empty state set");
        for (std::size_t k : k_grid) {
            double worst = 0.0;
            for (const auto& x : *list) worst = std::max(worst, delta_k_shannon_bound(x, k));
            bounds.push_back(worst);
        }
        note = "explicit list: max of per-member coarse-graining bounds";
    } else {
        throw std::invalid_argument("certify_shannon_set needs a classical state set");
    }
    return finish(k_grid, std::move(bounds), s.descriptor(), threshold,
                  note + "; bound-based, sufficiency only");
}

ConvergenceReport certify_vn_set(const StateSet& s, std::size_t k_max, double threshold) {
    return certify_vn_set(s, linear_k_grid(k_max), threshold);
}

ConvergenceReport certify_vn_set(const StateSet& s, const std::vector<std::size_t>& k_grid,
                                 double threshold) {
    check_grid(k_grid);
    if (s.is_classical()) {
        throw std::invalid_argument("certify_vn_set needs a quantum state set");
    }
    const auto members = s.quantum_members();
    if (members.empty()) throw std::invalid_argument("certify_vn_set: empty state set");
    std::vector<double> bounds;
    bounds.reserve(k_grid.size());
    for (std::size_t k : k_grid) {
        double worst = 0.0;
        for (const auto& rho : members) worst = std::max(worst, delta_k_vn_bound(rho, k));
        bounds.push_back(worst);
    }
    return finish(k_grid, std::move(bounds), s.descriptor(), threshold,
                  "eigenblock bounds; bound-based, sufficiency only; a failed certificate "
                  "does not show discontinuity");
}

MutualInformationAudit audit_mutual_information(const KrausChannel& phi, const StateSet& s,
                                                std::size_t k_max, const KrausChannel* lambda) {
    const auto members = explicit_quantum_list(s, "audit_mutual_information");
    for (const auto& rho : members) {
        if (rho.dim() != phi.dim_in()) {
            throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                                    " does not match channel input dim " +
                                    std::to_string(phi.dim_in()));
        }
    }
    MutualInformationAudit audit;
    audit.set_descriptor = s.descriptor();
    if (lambda != nullptr) {
        audit.degrading_residual = verify_degrading(phi, *lambda);
        audit.degradable = is_degrading_map(phi, *lambda);
    }
    for (std::size_t k = 1; k <= k_max; ++k) {
        MutualInformationAuditRow row;
        row.k = k;
        double upper = INFINITY, env = INFINITY, lower = INFINITY;
        for (const auto& rho : members) {
            const double vn = delta_k_vn_bound(rho, k);
            double mi = 0.0;
            double env_gap = 0.0;
            if (rho.rank() > k) {
                const auto terms = mutual_information_gap_terms(phi, rho, rank_k_decomposition(rho, k));
                mi = terms.value();
                env_gap = terms.input - terms.environment;
            }
            row.max_vn_bound = std::max(row.max_vn_bound, vn);
            row.max_mi_bound = std::max(row.max_mi_bound, mi);
            upper = std::min(upper, 2.0 * vn - mi);
            env = std::min(env, env_gap);
            lower = std::min(lower, mi - vn);
        }
        row.upper_slack = upper;
        row.environment_slack = env;
        row.passed = upper >= -kUpperSlackTolerance && env >= -kUpperSlackTolerance;
        if (audit.degradable) {
            row.lower_slack = lower;
            row.passed = row.passed && lower >= -kLowerSlackTolerance;
        }
        audit.passed = audit.passed && row.passed;
        audit.rows.push_back(row);
    }
    return audit;
}

OutputEntropyAudit audit_output_entropy(const KrausChannel& phi, const StateSet& s,
                                        std::size_t k_max) {
    const auto members = explicit_quantum_list(s, "audit_output_entropy");
    for (const auto& rho : members) {
        if (rho.dim() != phi.dim_in()) {
            throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                                    " does not match channel input dim " +
                                    std::to_string(phi.dim_in()));
        }
    }
    OutputEntropyAudit audit;
    audit.set_descriptor = s.descriptor();
    for (std::size_t k = 1; k <= k_max; ++k) {
        OutputEntropyAuditRow row;
        row.k = k;
        double slack = INFINITY;
        for (const auto& rho : members) {
            const double vn = delta_k_vn_bound(rho, k);
            const QuantumEnsemble blocks = rank_k_decomposition(rho, k);
            const double gap = blocks.size() == 1 ? 0.0 : chi_lower_bound(phi, rho, blocks);
            double mean_output = 0.0;
            for (std::size_t i = 0; i < blocks.size(); ++i)
                mean_output += blocks.weights()[i] * output_entropy(phi, blocks.members()[i]);
            const double residual = std::abs(output_entropy(phi, rho) - mean_output - gap);
            row.max_vn_bound = std::max(row.max_vn_bound, vn);
            row.max_output_gap = std::max(row.max_output_gap, gap);
            row.max_identity_residual = std::max(row.max_identity_residual, residual);
            slack = std::min(slack, vn - gap);
        }
        row.monotonicity_slack = slack;
        row.passed = slack >= -kUpperSlackTolerance &&
                     row.max_identity_residual <= kIdentityResidualTolerance;
        audit.passed = audit.passed && row.passed;
        audit.rows.push_back(row);
    }
    return audit;
}

}  // namespace entrocert
