#include "entrocert/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "entrocert/errors.hpp"
#include "entrocert/tolerances.hpp"

namespace entrocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_entries(std::span<const double> probs) {
    if (probs.empty()) {
        throw ValidationError("distribution has no entries");
    }
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
            std::ostringstream msg;
            msg << "probability at index " << i << " is " << probs[i];
            throw ValidationError(msg.str());
        }
    }
}

// Indices of x in the requested order; ties keep their original order.
std::vector<std::size_t> ordered_indices(const Distribution& x, BlockOrder order) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (order == BlockOrder::kNonincreasing) {
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    }
    return idx;
}

std::vector<double> sorted_desc_padded(std::span<const double> v, std::size_t n) {
    std::vector<double> s(v.begin(), v.end());
    s.resize(n, 0.0);
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    check_entries(probs_);
    const double residual = std::abs(sum_of(probs_) - 1.0);
    if (residual > tolerances().probability_sum) {
        std::ostringstream msg;
        msg << "probabilities sum to 1 within " << residual;
        throw ValidationError(msg.str());
    }
}

Distribution Distribution::from_truncated(std::vector<double> probs) {
    check_entries(probs);
    const double total = sum_of(probs);
    const double missing = 1.0 - total;
    if (missing > tolerances().truncation_tail || missing < -tolerances().probability_sum) {
        std::ostringstream msg;
        msg << "truncated distribution is missing mass " << missing;
        throw ValidationError(msg.str());
    }
    for (auto& p : probs) p /= total;
    return Distribution(std::move(probs));
}

Distribution Distribution::point_mass(std::size_t size, std::size_t index) {
    std::vector<double> p(size, 0.0);
    p.at(index) = 1.0;
    return Distribution(std::move(p));
}

Distribution Distribution::geometric(double ratio, std::size_t terms) {
    if (!(ratio > 0.0 && ratio < 1.0) || terms == 0)
        throw ValidationError("geometric: need 0 < ratio < 1 and terms >= 1");
    std::vector<double> p(terms);
    double sum = 0.0;
    for (std::size_t j = 0; j < terms; ++j) sum += p[j] = (1.0 - ratio) * std::pow(ratio, double(j));
    for (double& v : p) v /= sum;
    return Distribution(std::move(p));
}

std::size_t Distribution::support_size() const {
    const double thr = tolerances().classical_support;
    return static_cast<std::size_t>(
        std::count_if(probs_.begin(), probs_.end(), [&](double p) { return p > thr; }));
}

ClassicalEnsemble::ClassicalEnsemble(std::vector<double> weights,
                                     std::vector<Distribution> members)
    : weights_(std::move(weights)), members_(std::move(members)) {
    if (weights_.empty() || weights_.size() != members_.size()) {
        throw ValidationError("ensemble needs matching, nonempty weights and members");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0)) {
            std::ostringstream msg;
            msg << "ensemble weight at index " << i << " is " << weights_[i];
            throw ValidationError(msg.str());
        }
        if (members_[i].size() != members_[0].size()) {
            throw DimensionMismatch("ensemble members have different outcome counts");
        }
    }
    const double residual = std::abs(sum_of(weights_) - 1.0);
    if (residual > tolerances().probability_sum) {
        std::ostringstream msg;
        msg << "ensemble weights sum to 1 within " << residual;
        throw ValidationError(msg.str());
    }
}

std::vector<double> ClassicalEnsemble::barycenter() const {
    std::vector<double> b(members_[0].size(), 0.0);
    for (std::size_t i = 0; i < weights_.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) b[j] += weights_[i] * members_[i][j];
    return b;
}

double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

double shannon_entropy(const Distribution& x) { return shannon_entropy(x.probs()); }

double kl_divergence(const Distribution& x, const Distribution& y) {
    const double thr = tolerances().classical_support;
    const std::size_t n = std::max(x.size(), y.size());
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = j < x.size() ? x[j] : 0.0;
        const double yj = j < y.size() ? y[j] : 0.0;
        if (xj <= 0.0) continue;
        if (yj <= thr) {
            if (xj > thr) return kInf;
            continue;  // dust on both sides
        }
        d += xj * std::log(xj / yj);
    }
    return std::max(d, 0.0);
}

Distribution coarse_grain(const Distribution& x, std::size_t k, BlockOrder order) {
    if (k == 0) {
        throw std::invalid_argument("coarse_grain: k must be >= 1");
    }
    if (k == 1 && order == BlockOrder::kAsGiven) return x;
    const auto idx = ordered_indices(x, order);
    std::vector<double> blocks((x.size() + k - 1) / k, 0.0);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) blocks[pos / k] += x[idx[pos]];
    return Distribution(std::move(blocks));
}

ClassicalEnsemble coarse_decomposition(const Distribution& x, std::size_t k, BlockOrder order) {
    if (k == 0) {
        throw std::invalid_argument("coarse_decomposition: k must be >= 1");
    }
    const auto idx = ordered_indices(x, order);
    std::vector<double> weights;
    std::vector<Distribution> members;
    for (std::size_t start = 0; start < idx.size(); start += k) {
        const std::size_t end = std::min(start + k, idx.size());
        double lambda = 0.0;
        for (std::size_t pos = start; pos < end; ++pos) lambda += x[idx[pos]];
        if (lambda == 0.0) continue;
        std::vector<double> member(x.size(), 0.0);
        for (std::size_t pos = start; pos < end; ++pos) member[idx[pos]] = x[idx[pos]] / lambda;
        weights.push_back(lambda);
        members.push_back(Distribution(std::move(member)));
    }
    return ClassicalEnsemble(std::move(weights), std::move(members));
}

double ensemble_entropy_gap(const Distribution& x, const ClassicalEnsemble& e) {
    const Tolerances& tol = tolerances();
    const auto bary = e.barycenter();
    const std::size_t n = std::max(bary.size(), x.size());
    double mismatch = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = j < bary.size() ? bary[j] : 0.0;
        const double b = j < x.size() ? x[j] : 0.0;
        mismatch = std::max(mismatch, std::abs(a - b));
    }
    if (mismatch > tol.barycenter) {
        std::ostringstream msg;
        msg << "ensemble barycenter differs from x by " << mismatch;
        throw BarycenterMismatch(msg.str());
    }

    double gap = 0.0;
    double mean_entropy = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        gap += e.weights()[i] * kl_divergence(e.members()[i], x);
        mean_entropy += e.weights()[i] * shannon_entropy(e.members()[i]);
    }
    const double direct = shannon_entropy(x) - mean_entropy;
    if (std::isfinite(gap) && std::abs(gap - direct) > tol.classical_gap_identity) {
        std::ostringstream msg;
        msg << "entropy gap identity violated: relative-entropy form " << gap
            << " vs entropy difference " << direct;
        throw ValidationError(msg.str());
    }
    return gap;
}

double delta_k_shannon_bound(const Distribution& x, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("delta_k_shannon_bound: k must be >= 1");
    }
    if (x.support_size() <= k) return 0.0;
    return shannon_entropy(coarse_grain(x, k, BlockOrder::kNonincreasing));
}

double delta_k_shannon_oracle(const Distribution& x, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("delta_k_shannon_oracle: k must be >= 1");
    }
    const double thr = tolerances().classical_support;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] > thr) support.push_back(j);
    if (support.size() > kOracleMaxSupport) {
        throw SupportTooLarge("delta_k_shannon_oracle: support " +
                              std::to_string(support.size()) + " exceeds " +
                              std::to_string(kOracleMaxSupport));
    }
    if (k >= support.size()) return 0.0;

    // Restricted-growth enumeration of set partitions with block sizes <= k.
    const std::size_t n = support.size();
    std::vector<std::size_t> label(n, 0);
    std::vector<std::size_t> block_size(n, 0);
    double best = kInf;

    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t pos,
                                                              std::size_t blocks) {
        if (pos == n) {
            std::vector<double> weights(blocks, 0.0);
            for (std::size_t t = 0; t < n; ++t) weights[label[t]] += x[support[t]];
            std::vector<double> kept_weights;
            std::vector<Distribution> members;
            for (std::size_t b = 0; b < blocks; ++b) {
                std::vector<double> member(x.size(), 0.0);
                for (std::size_t t = 0; t < n; ++t)
                    if (label[t] == b) member[support[t]] = x[support[t]] / weights[b];
                kept_weights.push_back(weights[b]);
                members.push_back(Distribution(std::move(member)));
            }
            best = std::min(best, ensemble_entropy_gap(
                                      x, ClassicalEnsemble(std::move(kept_weights),
                                                           std::move(members))));
            return;
        }
        for (std::size_t b = 0; b <= blocks && b < n; ++b) {
            if (block_size[b] == k) continue;
            label[pos] = b;
            ++block_size[b];
            visit(pos + 1, b == blocks ? blocks + 1 : blocks);
            --block_size[b];
        }
    };
    visit(0, 0);
    return best;
}

bool majorizes(const Distribution& x, const Distribution& y) {
    const std::size_t n = std::max(x.size(), y.size());
    const auto xs = sorted_desc_padded(x.probs(), n);
    const auto ys = sorted_desc_padded(y.probs(), n);
    const double tol = tolerances().majorization;
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sx += xs[j];
        sy += ys[j];
        if (sx < sy - tol) return false;
    }
    return true;
}

}  // namespace entrocert
