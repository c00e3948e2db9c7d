#include "entrocert/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "entrocert/errors.hpp"
#include "entrocert/tolerances.hpp"

namespace entrocert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix projector(const ComplexMatrix& vectors, std::size_t column) {
    const auto v = vectors.column(column);
    return ComplexMatrix::outer(v, v);
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    const Tolerances& tol = tolerances();
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw NotSquare("density matrix must be square and nonempty");
    }
    const double herm = matrix_.hermiticity_residual();
    if (herm > tol.density_hermitian) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: max |a - a^dagger| = " << herm;
        throw ValidationError(msg.str());
    }
    const Complex tr = matrix_.trace();
    const double trace_residual = std::abs(tr - Complex{1.0, 0.0});
    if (trace_residual > tol.density_trace) {
        std::ostringstream msg;
        msg << "density matrix trace residual " << trace_residual;
        throw ValidationError(msg.str());
    }
    eig_ = hermitian_eig(matrix_);
    const double smallest = eig_.eigenvalues.back();
    if (smallest < -tol.min_eigenvalue) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << smallest;
        throw ValidationError(msg.str());
    }
    spectrum_ = eig_.eigenvalues;
    for (auto& s : spectrum_) s = std::max(s, 0.0);
    const double total = std::accumulate(spectrum_.begin(), spectrum_.end(), 0.0);
    for (auto& s : spectrum_) s /= total;
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    double norm2 = 0.0;
    for (const auto& z : psi) norm2 += std::norm(z);
    std::vector<Complex> unit(psi.begin(), psi.end());
    for (auto& z : unit) z /= std::sqrt(norm2);
    return DensityMatrix(ComplexMatrix::outer(unit, unit));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex{1.0 / double(dim), 0.0});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
    return DensityMatrix(ComplexMatrix::diagonal(probs));
}

std::size_t DensityMatrix::rank() const {
    const double thr = tolerances().quantum_support;
    return static_cast<std::size_t>(
        std::count_if(spectrum_.begin(), spectrum_.end(), [&](double s) { return s > thr; }));
}

QuantumEnsemble::QuantumEnsemble(std::vector<double> weights, std::vector<DensityMatrix> members)
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
        if (members_[i].dim() != members_[0].dim()) {
            throw DimensionMismatch("ensemble members have different dimensions");
        }
    }
    const double residual =
        std::abs(std::accumulate(weights_.begin(), weights_.end(), 0.0) - 1.0);
    if (residual > tolerances().probability_sum) {
        std::ostringstream msg;
        msg << "ensemble weights sum to 1 within " << residual;
        throw ValidationError(msg.str());
    }
}

ComplexMatrix QuantumEnsemble::barycenter() const {
    ComplexMatrix b(members_[0].dim(), members_[0].dim());
    for (std::size_t i = 0; i < weights_.size(); ++i)
        b += members_[i].matrix() * Complex{weights_[i], 0.0};
    return b;
}

void require_barycenter(const DensityMatrix& rho, const QuantumEnsemble& e) {
    if (e.members()[0].dim() != rho.dim()) {
        throw DimensionMismatch("ensemble dimension differs from the state");
    }
    const double mismatch = max_abs_diff(e.barycenter(), rho.matrix());
    if (mismatch > tolerances().barycenter) {
        std::ostringstream msg;
        msg << "ensemble barycenter differs from rho by " << mismatch;
        throw BarycenterMismatch(msg.str());
    }
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(rho.spectrum()); }

double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("relative entropy of states with dims " +
                                std::to_string(rho.dim()) + " and " +
                                std::to_string(sigma.dim()));
    }
    if (rho.matrix() == sigma.matrix()) return 0.0;

    const double thr = tolerances().quantum_support;
    const std::size_t n = rho.dim();
    const auto& phi = rho.eigensystem().eigenvectors;
    const auto& psi = sigma.eigensystem().eigenvectors;
    const auto s = rho.spectrum();
    const auto t = sigma.spectrum();

    double kernel_weight = 0.0;
    double cross = 0.0;  // sum_i s_i <phi_i| ln sigma |phi_i>
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] <= 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            Complex ip{0.0, 0.0};
            for (std::size_t a = 0; a < n; ++a) ip += std::conj(phi(a, i)) * psi(a, j);
            const double overlap = std::norm(ip);
            if (t[j] > thr) {
                cross += s[i] * overlap * std::log(t[j]);
            } else {
                kernel_weight += s[i] * overlap;
            }
        }
    }
    if (kernel_weight > thr) return kInf;

    double value = -shannon_entropy(s) - cross;
    if (value < 0.0 && value > -1e-12) value = 0.0;
    return value;
}

QuantumEnsemble spectral_ensemble(const DensityMatrix& rho) {
    const double thr = tolerances().quantum_support;
    const auto s = rho.spectrum();
    std::vector<double> weights;
    std::vector<DensityMatrix> members;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= thr) continue;
        weights.push_back(s[i]);
        members.emplace_back(projector(rho.eigensystem().eigenvectors, i));
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    return QuantumEnsemble(std::move(weights), std::move(members));
}

QuantumEnsemble rank_k_decomposition(const DensityMatrix& rho, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("rank_k_decomposition: k must be >= 1");
    }
    const std::size_t r = rho.rank();
    if (r <= k) return QuantumEnsemble({1.0}, {rho});

    const auto s = rho.spectrum();
    const auto& vecs = rho.eigensystem().eigenvectors;
    const std::size_t n = rho.dim();
    std::vector<double> weights;
    std::vector<DensityMatrix> members;
    for (std::size_t start = 0; start < r; start += k) {
        const std::size_t end = std::min(start + k, r);
        double lambda = 0.0;
        for (std::size_t j = start; j < end; ++j) lambda += s[j];
        ComplexMatrix m(n, n);
        for (std::size_t j = start; j < end; ++j) m += projector(vecs, j) * Complex{s[j] / lambda, 0.0};
        weights.push_back(lambda);
        members.emplace_back(std::move(m));
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    return QuantumEnsemble(std::move(weights), std::move(members));
}

double quantum_gap_identity_residual(const DensityMatrix& rho, const QuantumEnsemble& e) {
    double gap = 0.0;
    double mean_entropy = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        gap += e.weights()[i] * quantum_relative_entropy(e.members()[i], rho);
        mean_entropy += e.weights()[i] * von_neumann_entropy(e.members()[i]);
    }
    return std::abs(von_neumann_entropy(rho) - mean_entropy - gap);
}

double quantum_ensemble_gap(const DensityMatrix& rho, const QuantumEnsemble& e) {
    require_barycenter(rho, e);
    double gap = 0.0;
    double mean_entropy = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        gap += e.weights()[i] * quantum_relative_entropy(e.members()[i], rho);
        mean_entropy += e.weights()[i] * von_neumann_entropy(e.members()[i]);
    }
    const double direct = von_neumann_entropy(rho) - mean_entropy;
    if (std::isfinite(gap) && std::abs(gap - direct) > tolerances().quantum_gap_identity) {
        std::ostringstream msg;
        msg << "entropy gap identity violated: relative-entropy form " << gap
            << " vs entropy difference " << direct;
        throw ValidationError(msg.str());
    }
    return gap;
}

double delta_k_vn_bound(const DensityMatrix& rho, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("delta_k_vn_bound: k must be >= 1");
    }
    if (rho.rank() <= k) return 0.0;
    return quantum_ensemble_gap(rho, rank_k_decomposition(rho, k));
}

std::vector<Complex> purify(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    const auto s = rho.spectrum();
    const auto& vecs = rho.eigensystem().eigenvectors;
    std::vector<Complex> psi(d * d, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < d; ++j) {
        const double amp = std::sqrt(s[j]);
        for (std::size_t a = 0; a < d; ++a) psi[a * d + j] = amp * vecs(a, j);
    }
    return psi;
}

double bipartite_entropy_identity_residual(const DensityMatrix& omega,
                                           std::pair<std::size_t, std::size_t> dims) {
    if (dims.first * dims.second != omega.dim()) {
        throw DimensionMismatch("bipartite dims " + std::to_string(dims.first) + " x " +
                                std::to_string(dims.second) + " do not match state dim " +
                                std::to_string(omega.dim()));
    }
    const DensityMatrix first(partial_trace(omega.matrix(), dims, Subsystem::kFirst));
    const DensityMatrix second(partial_trace(omega.matrix(), dims, Subsystem::kSecond));
    const DensityMatrix product(tensor(first.matrix(), second.matrix()));
    return std::abs(von_neumann_entropy(omega) - von_neumann_entropy(first) -
                    von_neumann_entropy(second) + quantum_relative_entropy(omega, product));
}

}  // namespace entrocert
