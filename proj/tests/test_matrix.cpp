#include <gtest/gtest.h>

#include <cmath>

#include "entrocert/channels.hpp"
#include "entrocert/errors.hpp"
#include "entrocert/matrix.hpp"
#include "entrocert/random.hpp"
#include "oracle.hpp"

using namespace entrocert;

namespace {

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    return (g + g.adjoint()) * Complex{0.5, 0.0};
}

ComplexMatrix random_square(Rng& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    return g;
}

}  // namespace

TEST(HermitianEig, DiagonalInputIsSortedWithPermutedBasis) {
    const double d[] = {0.3, 0.7};
    const EigenSystem es = hermitian_eig(ComplexMatrix::diagonal(d));
    EXPECT_DOUBLE_EQ(es.eigenvalues[0], 0.7);
    EXPECT_DOUBLE_EQ(es.eigenvalues[1], 0.3);
    EXPECT_NEAR(std::abs(es.eigenvectors(1, 0) - Complex{1.0, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(es.eigenvectors(0, 1) - Complex{1.0, 0.0}), 0.0, 1e-15);
}

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
    const EigenSystem es = hermitian_eig(ComplexMatrix::identity(3));
    for (double v : es.eigenvalues) EXPECT_DOUBLE_EQ(v, 1.0);
    EXPECT_LT(max_abs_diff(es.eigenvectors, ComplexMatrix::identity(3)), 1e-15);
}

TEST(HermitianEig, AllHalvesProjector) {
    const EigenSystem es = hermitian_eig({{0.5, 0.5}, {0.5, 0.5}});
    EXPECT_NEAR(es.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues[1], 0.0, 1e-14);
    EXPECT_NEAR(es.eigenvectors(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(es.eigenvectors(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(HermitianEig, RejectsBadInput) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), NotSquare);
    EXPECT_THROW(hermitian_eig({{1.0, 1.0}, {0.0, 1.0}}), NotHermitian);
}

TEST(HermitianEig, MatchesEigenOnRandomMatrices) {
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = rng.index(1, 10);
        const ComplexMatrix a = random_hermitian(rng, n);
        const EigenSystem es = hermitian_eig(a);
        const auto ref = oracle::eigenvalues(a);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(es.eigenvalues[i], ref[i], 1e-10);
        EXPECT_LT(max_abs_diff(es.reconstruct(), a), 1e-10);
        EXPECT_LT(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                               ComplexMatrix::identity(n)),
                  1e-11);
    }
}

TEST(HermitianEig, PhaseConventionAndDeterminism) {
    Rng rng(12);
    const ComplexMatrix a = random_hermitian(rng, 6);
    const EigenSystem first = hermitian_eig(a);
    const EigenSystem second = hermitian_eig(a);
    EXPECT_EQ(first.eigenvectors, second.eigenvectors);
    EXPECT_EQ(first.eigenvalues, second.eigenvalues);
    for (std::size_t j = 0; j < 6; ++j) {
        const auto v = first.eigenvectors.column(j);
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
        EXPECT_GT(v[best].real(), 0.0);
        EXPECT_NEAR(v[best].imag(), 0.0, 1e-14);
    }
}

TEST(HermitianEig, DegenerateClusterIsOrderedDeterministically) {
    // Rotate diag(2, 1, 1) by a unitary: the 1-cluster must come back in a
    // fixed order regardless of how the input was produced.
    Rng rng(13);
    const ComplexMatrix u = random_unitary(rng, 3);
    const double d[] = {2.0, 1.0, 1.0};
    const ComplexMatrix a = u * ComplexMatrix::diagonal(d) * u.adjoint();
    const EigenSystem es = hermitian_eig(a);
    EXPECT_NEAR(es.eigenvalues[1], 1.0, 1e-12);
    EXPECT_NEAR(es.eigenvalues[2], 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(es.reconstruct(), a), 1e-11);
}

TEST(Tensor, Examples) {
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
              ComplexMatrix::identity(4));
    const double p[] = {1.0, 0.0}, q[] = {0.0, 1.0}, r[] = {0.0, 1.0, 0.0, 0.0};
    EXPECT_EQ(tensor(ComplexMatrix::diagonal(p), ComplexMatrix::diagonal(q)),
              ComplexMatrix::diagonal(r));
}

TEST(Tensor, TraceIsMultiplicativeAndMatchesOracle) {
    Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix a = random_square(rng, 2), b = random_square(rng, 2);
        const ComplexMatrix ab = tensor(a, b);
        EXPECT_LT(std::abs(ab.trace() - a.trace() * b.trace()), 1e-12);
        EXPECT_LT(max_abs_diff(ab, oracle::kron(a, b)), 1e-15);
    }
    const ComplexMatrix a = random_square(rng, 3), b = random_square(rng, 2);
    EXPECT_LT(max_abs_diff(tensor(a, b), oracle::kron(a, b)), 1e-15);
}

TEST(PartialTrace, ProductStateKeepsFactor) {
    Rng rng(15);
    const ComplexMatrix rho = random_density_matrix(rng, 2).matrix();
    const ComplexMatrix sigma = random_square(rng, 3);
    EXPECT_LT(max_abs_diff(partial_trace(tensor(rho, sigma), {2, 3}, Subsystem::kFirst),
                           rho * sigma.trace()),
              1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(tensor(rho, sigma), {2, 3}, Subsystem::kSecond),
                           sigma * rho.trace()),
              1e-12);
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex bell[] = {s, 0.0, 0.0, s};
    const ComplexMatrix w = ComplexMatrix::outer(bell, bell);
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex{0.5, 0.0};
    EXPECT_LT(max_abs_diff(partial_trace(w, {2, 2}, Subsystem::kFirst), half), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace(w, {2, 2}, Subsystem::kSecond), half), 1e-15);
}

TEST(PartialTrace, PreservesTraceAndMatchesOracle) {
    Rng rng(16);
    for (int t = 0; t < 30; ++t) {
        const std::size_t da = rng.index(1, 4), db = rng.index(1, 4);
        const ComplexMatrix w = random_hermitian(rng, da * db);
        for (bool first : {true, false}) {
            const ComplexMatrix r =
                partial_trace(w, {da, db}, first ? Subsystem::kFirst : Subsystem::kSecond);
            EXPECT_LT(std::abs(r.trace() - w.trace()), 1e-12);
            EXPECT_LT(max_abs_diff(r, oracle::ptrace(w, da, db, first)), 1e-13);
        }
    }
}

TEST(PartialTrace, RejectsWrongShape) {
    EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), {2, 3}, Subsystem::kFirst),
                 DimensionMismatch);
}

TEST(ApplyToSubsystem, IdentityMapLeavesInputUnchanged) {
    Rng rng(17);
    const ComplexMatrix w = random_square(rng, 6);
    const MatrixMap id = [](const ComplexMatrix& a) { return a; };
    EXPECT_EQ(apply_to_subsystem(id, w, {2, 3}), w);
}

TEST(ApplyToSubsystem, DephasingFirstQubitOfBellState) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex bell[] = {s, 0.0, 0.0, s};
    const ComplexMatrix w = ComplexMatrix::outer(bell, bell);
    const ComplexMatrix out =
        apply_to_subsystem(KrausChannel::dephasing(2).as_map(), w, {2, 2});
    const double d[] = {0.5, 0.0, 0.0, 0.5};
    EXPECT_LT(max_abs_diff(out, ComplexMatrix::diagonal(d)), 1e-15);
}

TEST(ApplyToSubsystem, TracePreservingMapPreservesTrace) {
    Rng rng(18);
    for (int t = 0; t < 20; ++t) {
        const KrausChannel phi = random_channel(rng, 2, 3, 2);
        const ComplexMatrix w = random_hermitian(rng, 4);
        const ComplexMatrix out = apply_to_subsystem(phi.as_map(), w, {2, 2});
        EXPECT_EQ(out.rows(), 6u);
        EXPECT_LT(std::abs(out.trace() - w.trace()), 1e-12);
    }
}

TEST(ApplyToSubsystem, ProductInputFactorizes) {
    Rng rng(19);
    const KrausChannel phi = random_channel(rng, 2, 3, 2);
    const ComplexMatrix a = random_square(rng, 2), b = random_square(rng, 2);
    EXPECT_LT(max_abs_diff(apply_to_subsystem(phi.as_map(), tensor(a, b), {2, 2}),
                           tensor(phi(a), b)),
              1e-12);
}
