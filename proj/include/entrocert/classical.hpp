#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entrocert {

/// Finite-support probability vector; the desk-scale stand-in for a
/// countable distribution. Entries are >= 0 and sum to 1 within tolerance.
class Distribution {
public:
    /// Validates nonnegativity and the unit sum. Throws ValidationError
    /// naming the first offending index, or the sum residual.
    explicit Distribution(std::vector<double> probs);

    /// Ingestion of a truncated countable distribution: renormalizes when the
    /// missing mass 1 - sum is below the truncation tolerance, rejects otherwise.
    static Distribution from_truncated(std::vector<double> probs);

    /// Point mass at `index` on a universe of `size` outcomes.
    static Distribution point_mass(std::size_t size, std::size_t index = 0);

    /// Geometric distribution (1 - r) r^{j-1}, j = 1..terms, renormalized.
    static Distribution geometric(double ratio, std::size_t terms);

    [[nodiscard]] std::span<const double> probs() const { return probs_; }
    [[nodiscard]] std::size_t size() const { return probs_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }
    /// Number of entries above the support threshold.
    [[nodiscard]] std::size_t support_size() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<double> probs_;
};

/// Atomic measure {weights_i, members_i} over distributions.
class ClassicalEnsemble {
public:
    /// Requires equal lengths, positive weights summing to 1, and members of a
    /// common outcome-universe size.
    ClassicalEnsemble(std::vector<double> weights, std::vector<Distribution> members);

    [[nodiscard]] std::span<const double> weights() const { return weights_; }
    [[nodiscard]] std::span<const Distribution> members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return weights_.size(); }

    /// sum_i weights_i members_i
    [[nodiscard]] std::vector<double> barycenter() const;

private:
    std::vector<double> weights_;
    std::vector<Distribution> members_;
};

enum class BlockOrder { kAsGiven, kNonincreasing };

/// Shannon entropy in nats with 0 ln 0 = 0.
double shannon_entropy(const Distribution& x);
double shannon_entropy(std::span<const double> probs);

/// Kullback-Leibler divergence in nats; +infinity unless supp x is inside
/// supp y. The shorter vector is padded with zeros.
double kl_divergence(const Distribution& x, const Distribution& y);

/// k-order coarse-graining: sums of consecutive blocks of k entries, after an
/// optional nonincreasing rearrangement.
Distribution coarse_grain(const Distribution& x, std::size_t k,
                          BlockOrder order = BlockOrder::kNonincreasing);

/// The block decomposition x = sum_i lambda_i p_i behind the coarse-graining
/// bound: lambda_i are the (nonzero) block sums and p_i is x restricted to
/// block i, renormalized, in the original coordinates.
ClassicalEnsemble coarse_decomposition(const Distribution& x, std::size_t k,
                                       BlockOrder order = BlockOrder::kNonincreasing);

/// sum_i pi_i KL(x_i || x) for an ensemble whose barycenter is x.
///
/// Throws BarycenterMismatch when the barycenter differs from x by more than
/// the barycenter tolerance, and ValidationError when the result disagrees
/// with S(x) - sum_i pi_i S(x_i).
double ensemble_entropy_gap(const Distribution& x, const ClassicalEnsemble& e);

/// S(k(x)) under nonincreasing order; an upper bound on the gap functional
/// Delta_k(x|S). Exactly 0 when the support size is <= k.
double delta_k_shannon_bound(const Distribution& x, std::size_t k);

/// Minimum of ensemble_entropy_gap over decompositions induced by set
/// partitions of supp x into blocks of size <= k. Still only an upper bound on
/// Delta_k(x|S). Throws SupportTooLarge for support above 10.
double delta_k_shannon_oracle(const Distribution& x, std::size_t k);

inline constexpr std::size_t kOracleMaxSupport = 10;

/// True iff the partial sums of sorted x dominate those of sorted y, i.e. y
/// is more chaotic than x.
bool majorizes(const Distribution& x, const Distribution& y);

}  // namespace entrocert
