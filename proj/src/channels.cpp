#include "entrocert/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entrocert/errors.hpp"
#include "entrocert/tolerances.hpp"

namespace entrocert {

namespace {

void require_input_dim(const KrausChannel& phi, std::size_t dim) {
    if (dim != phi.dim_in()) {
        throw DimensionMismatch("channel expects input dim " + std::to_string(phi.dim_in()) +
                                ", got " + std::to_string(dim));
    }
}

// Hermitize and fix the trace to 1.
DensityMatrix as_state(const ComplexMatrix& m) {
    ComplexMatrix h = (m + m.adjoint()) * Complex{0.5, 0.0};
    const double tr = h.trace().real();
    return DensityMatrix(h * Complex{1.0 / tr, 0.0});
}

}  // namespace

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw ValidationError("channel needs at least one Kraus operator");
    }
    if (kraus_.size() > tolerances().max_kraus) {
        throw ValidationError("channel has " + std::to_string(kraus_.size()) +
                              " Kraus operators; the limit is " +
                              std::to_string(tolerances().max_kraus));
    }
    for (std::size_t j = 0; j < kraus_.size(); ++j) {
        if (kraus_[j].rows() != dim_out_ || kraus_[j].cols() != dim_in_) {
            throw DimensionMismatch("Kraus operator " + std::to_string(j) + " is " +
                                    std::to_string(kraus_[j].rows()) + "x" +
                                    std::to_string(kraus_[j].cols()) + ", expected " +
                                    std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
        }
    }
    const double residual = trace_preservation_residual();
    if (residual > tolerances().kraus_sum) {
        std::ostringstream msg;
        msg << "trace-preservation residual " << residual;
        throw ValidationError(msg.str());
    }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel(dim, dim, {ComplexMatrix::identity(dim)});
}

KrausChannel KrausChannel::dephasing(std::size_t dim) {
    std::vector<ComplexMatrix> ks;
    for (std::size_t i = 0; i < dim; ++i) ks.push_back(ComplexMatrix::unit(dim, dim, i, i));
    return KrausChannel(dim, dim, std::move(ks));
}

KrausChannel KrausChannel::completely_depolarizing(std::size_t dim) {
    std::vector<ComplexMatrix> ks;
    const double scale = 1.0 / std::sqrt(double(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            ks.push_back(ComplexMatrix::unit(dim, dim, i, j) * Complex{scale, 0.0});
    return KrausChannel(dim, dim, std::move(ks));
}

KrausChannel KrausChannel::amplitude_damping(double gamma) {
    ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
    ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
    return KrausChannel(2, 2, {k0, k1});
}

KrausChannel KrausChannel::trace_out(std::size_t dim) {
    std::vector<ComplexMatrix> ks;
    for (std::size_t i = 0; i < dim; ++i) ks.push_back(ComplexMatrix::unit(1, dim, 0, i));
    return KrausChannel(dim, 1, std::move(ks));
}

double KrausChannel::kraus_sum_residual(std::size_t dim_in,
                                        std::span<const ComplexMatrix> kraus) {
    ComplexMatrix sum(dim_in, dim_in);
    for (const auto& v : kraus) sum += v.adjoint() * v;
    return max_abs_diff(sum, ComplexMatrix::identity(dim_in));
}

double KrausChannel::trace_preservation_residual() const {
    return kraus_sum_residual(dim_in_, kraus_);
}

ComplexMatrix KrausChannel::operator()(const ComplexMatrix& a) const {
    if (a.rows() != dim_in_ || a.cols() != dim_in_) {
        throw DimensionMismatch("channel input must be " + std::to_string(dim_in_) + "x" +
                                std::to_string(dim_in_));
    }
    ComplexMatrix out(dim_out_, dim_out_);
    for (const auto& v : kraus_) out += v * a * v.adjoint();
    return out;
}

MatrixMap KrausChannel::as_map() const {
    return [phi = *this](const ComplexMatrix& a) { return phi(a); };
}

ComplementaryMap::ComplementaryMap(const KrausChannel& phi)
    : dim_in_(phi.dim_in()), kraus_(phi.kraus().begin(), phi.kraus().end()) {}

ComplexMatrix ComplementaryMap::operator()(const ComplexMatrix& a) const {
    if (a.rows() != dim_in_ || a.cols() != dim_in_) {
        throw DimensionMismatch("complementary map input must be " + std::to_string(dim_in_) +
                                "x" + std::to_string(dim_in_));
    }
    const std::size_t m = kraus_.size();
    std::vector<ComplexMatrix> va;
    va.reserve(m);
    for (const auto& v : kraus_) va.push_back(v * a);
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            // Tr[V_i A V_j^dagger] = sum_{r,c} (V_i A)(r, c) conj(V_j(r, c))
            Complex t{0.0, 0.0};
            const auto lhs = va[i].entries();
            const auto rhs = kraus_[j].entries();
            for (std::size_t e = 0; e < lhs.size(); ++e) t += lhs[e] * std::conj(rhs[e]);
            out(i, j) = t;
        }
    return out;
}

DensityMatrix ComplementaryMap::apply(const DensityMatrix& rho) const {
    return as_state((*this)(rho.matrix()));
}

MatrixMap ComplementaryMap::as_map() const {
    return [map = *this](const ComplexMatrix& a) { return map(a); };
}

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho) {
    require_input_dim(phi, rho.dim());
    return as_state(phi(rho.matrix()));
}

ComplementaryMap complementary(const KrausChannel& phi) { return ComplementaryMap(phi); }

double output_entropy(const KrausChannel& phi, const DensityMatrix& rho) {
    return von_neumann_entropy(apply(phi, rho));
}

double complementary_output_entropy(const KrausChannel& phi, const DensityMatrix& rho) {
    require_input_dim(phi, rho.dim());
    return von_neumann_entropy(complementary(phi).apply(rho));
}

double mutual_information_sum(const KrausChannel& phi, const DensityMatrix& rho) {
    require_input_dim(phi, rho.dim());
    return von_neumann_entropy(rho) + output_entropy(phi, rho) -
           complementary_output_entropy(phi, rho);
}

double mutual_information_rel(const KrausChannel& phi, const DensityMatrix& rho) {
    require_input_dim(phi, rho.dim());
    const std::size_t d = rho.dim();
    const auto psi = purify(rho);
    const ComplexMatrix joint = ComplexMatrix::outer(psi, psi);
    const DensityMatrix reference(partial_trace(joint, {d, d}, Subsystem::kSecond));
    const DensityMatrix out_joint = as_state(apply_to_subsystem(phi.as_map(), joint, {d, d}));
    const DensityMatrix product(tensor(apply(phi, rho).matrix(), reference.matrix()));
    return quantum_relative_entropy(out_joint, product);
}

MutualInformationGapTerms mutual_information_gap_terms(const KrausChannel& phi,
                                                       const DensityMatrix& rho,
                                                       const QuantumEnsemble& e) {
    require_input_dim(phi, rho.dim());
    require_barycenter(rho, e);
    const ComplementaryMap env = complementary(phi);
    const DensityMatrix out = apply(phi, rho);
    const DensityMatrix env_out = env.apply(rho);
    MutualInformationGapTerms terms;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double w = e.weights()[i];
        const DensityMatrix& member = e.members()[i];
        terms.input += w * quantum_relative_entropy(member, rho);
        terms.output += w * quantum_relative_entropy(apply(phi, member), out);
        terms.environment += w * quantum_relative_entropy(env.apply(member), env_out);
    }
    return terms;
}

double delta_k_mi_bound(const KrausChannel& phi, const DensityMatrix& rho, std::size_t k) {
    require_input_dim(phi, rho.dim());
    if (k == 0) {
        throw std::invalid_argument("delta_k_mi_bound: k must be >= 1");
    }
    if (rho.rank() <= k) return 0.0;
    return mutual_information_gap_terms(phi, rho, rank_k_decomposition(rho, k)).value();
}

double chi_lower_bound(const KrausChannel& phi, const DensityMatrix& rho,
                       const QuantumEnsemble& e) {
    require_input_dim(phi, rho.dim());
    require_barycenter(rho, e);
    const DensityMatrix out = apply(phi, rho);
    double chi = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        chi += e.weights()[i] * quantum_relative_entropy(apply(phi, e.members()[i]), out);
    return chi;
}

double verify_degrading(const KrausChannel& phi, const KrausChannel& lambda) {
    if (lambda.dim_in() != phi.dim_out() || lambda.dim_out() != phi.num_kraus()) {
        throw DimensionMismatch("degrading map must send dim " + std::to_string(phi.dim_out()) +
                                " to dim " + std::to_string(phi.num_kraus()));
    }
    const ComplementaryMap env = complementary(phi);
    const std::size_t d = phi.dim_in();
    double worst = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const ComplexMatrix unit = ComplexMatrix::unit(d, d, a, b);
            worst = std::max(worst, max_abs_diff(lambda(phi(unit)), env(unit)));
        }
    return worst;
}

bool is_degrading_map(const KrausChannel& phi, const KrausChannel& lambda) {
    return verify_degrading(phi, lambda) < tolerances().degrading;
}

double data_processing_check(const KrausChannel& phi, const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
    require_input_dim(phi, rho.dim());
    require_input_dim(phi, sigma.dim());
    return quantum_relative_entropy(rho, sigma) -
           quantum_relative_entropy(apply(phi, rho), apply(phi, sigma));
}

}  // namespace entrocert
