#pragma once

#include <cstddef>

namespace entrocert {

// Every numeric tolerance used by the library lives here. Defaults are
// multiplied by ENTROCERT_TOL_SCALE (if set) the first time the table is read.
struct Tolerances {
    // matrixcore
    double hermitian = 1e-10;          // max |a - a^dagger| accepted by hermitian_eig
    double jacobi_off = 1e-12;         // off-diagonal Frobenius norm stopping rule
    int jacobi_max_sweeps = 100;
    double degenerate_cluster = 1e-12; // eigenvalues closer than this share a cluster
    double trace_preservation = 1e-10; // partial trace / subsystem map trace checks

    // classical
    double probability_sum = 1e-10;
    double truncation_tail = 1e-9;     // max dropped tail mass accepted on ingestion
    double classical_support = 1e-12;  // entry counts as support iff > this
    double majorization = 1e-12;
    double barycenter = 1e-9;
    double classical_gap_identity = 1e-9;

    // quantum
    double density_hermitian = 1e-10;
    double density_trace = 1e-10;
    double min_eigenvalue = 1e-10;     // eigenvalues in [-this, 0] are clamped
    double quantum_support = 1e-10;
    double quantum_gap_identity = 1e-8;

    // channels
    double kraus_sum = 1e-9;
    double degrading = 1e-8;
    std::size_t max_kraus = 16;

    // continuity; a decision threshold, not rescaled by ENTROCERT_TOL_SCALE
    double certification_threshold = 1e-3;

    /// Returns a copy with every floating tolerance multiplied by `factor`.
    [[nodiscard]] Tolerances scaled(double factor) const;
};

/// Process-wide tolerance table. Read-only after startup.
const Tolerances& tolerances();

/// Replaces the table. Call before any concurrent use of the library.
void set_tolerances(const Tolerances& t);

}  // namespace entrocert
