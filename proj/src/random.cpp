#include "entrocert/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace entrocert {

double Rng::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
    const std::size_t span = hi - lo + 1;
    return lo + std::min(span - 1, static_cast<std::size_t>(uniform() * double(span)));
}

Distribution random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        total += v;
    }
    for (auto& v : p) v /= total;
    return Distribution::from_truncated(std::move(p));
}

DensityMatrix random_density_matrix(Rng& rng, std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    ComplexMatrix m = g * g.adjoint();
    m = (m + m.adjoint()) * Complex{0.5, 0.0};
    return DensityMatrix(m * Complex{1.0 / m.trace().real(), 0.0});
}

std::vector<Complex> random_pure_vector(Rng& rng, std::size_t dim) {
    std::vector<Complex> v(dim);
    double norm2 = 0.0;
    for (auto& z : v) {
        z = rng.complex_normal();
        norm2 += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(norm2);
    return v;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            h(i, j) = rng.complex_normal();
            h(j, i) = std::conj(h(i, j));
        }
    }
    return hermitian_eig(h).eigenvectors;
}

KrausChannel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                            std::size_t num_kraus) {
    if (num_kraus * dim_out < dim_in)
        throw std::invalid_argument("random_channel: num_kraus * dim_out must be >= dim_in");
    std::vector<ComplexMatrix> ks(num_kraus, ComplexMatrix(dim_out, dim_in));
    for (auto& v : ks)
        for (std::size_t i = 0; i < dim_out; ++i)
            for (std::size_t j = 0; j < dim_in; ++j) v(i, j) = rng.complex_normal();

    ComplexMatrix s(dim_in, dim_in);
    for (const auto& v : ks) s += v.adjoint() * v;
    const EigenSystem es = hermitian_eig((s + s.adjoint()) * Complex{0.5, 0.0});
    std::vector<double> inv_sqrt(es.eigenvalues.size());
    for (std::size_t i = 0; i < inv_sqrt.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(es.eigenvalues[i]);
    const ComplexMatrix s_inv_sqrt =
        es.eigenvectors * ComplexMatrix::diagonal(inv_sqrt) * es.eigenvectors.adjoint();
    for (auto& v : ks) v = v * s_inv_sqrt;
    return KrausChannel(dim_in, dim_out, std::move(ks));
}

RandomEnsemble random_quantum_ensemble(Rng& rng, std::size_t dim, std::size_t members) {
    std::vector<DensityMatrix> ms;
    for (std::size_t i = 0; i < members; ++i) ms.push_back(random_density_matrix(rng, dim));
    const Distribution w = random_distribution(rng, members);
    std::vector<double> weights(w.probs().begin(), w.probs().end());
    QuantumEnsemble ensemble(std::move(weights), std::move(ms));
    DensityMatrix bary(ensemble.barycenter());
    return {std::move(bary), std::move(ensemble)};
}

Distribution less_chaotic_sample(Rng& rng, const Distribution& x0, std::size_t transfers) {
    std::vector<double> x(x0.probs().begin(), x0.probs().end());
    std::sort(x.begin(), x.end(), std::greater<>());
    std::size_t support = 0;
    while (support < x.size() && x[support] > 0.0) ++support;
    if (support < 2) return Distribution(std::move(x));
    for (std::size_t t = 0; t < transfers; ++t) {
        // Move a random share of the smaller entry onto the larger one; the
        // vector is kept sorted so "larger" stays well defined.
        const std::size_t i = rng.index(0, support - 2);
        const std::size_t j = rng.index(i + 1, support - 1);
        const double amount = rng.uniform() * x[j];
        x[i] += amount;
        x[j] -= amount;
        std::sort(x.begin(), x.end(), std::greater<>());
    }
    return Distribution::from_truncated(std::move(x));
}

}  // namespace entrocert
