#include "entrocert/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace entrocert {

Tolerances Tolerances::scaled(double factor) const {
    Tolerances t = *this;
    for (double* v : {&t.hermitian, &t.jacobi_off, &t.degenerate_cluster, &t.trace_preservation,
                      &t.probability_sum, &t.truncation_tail, &t.classical_support,
                      &t.majorization, &t.barycenter, &t.classical_gap_identity,
                      &t.density_hermitian, &t.density_trace, &t.min_eigenvalue,
                      &t.quantum_support, &t.quantum_gap_identity, &t.kraus_sum, &t.degrading}) {
        *v *= factor;
    }
    return t;
}

namespace {

Tolerances initial_table() {
    Tolerances t;
    if (const char* env = std::getenv("ENTROCERT_TOL_SCALE")) {
        try {
            double factor = std::stod(env);
            if (factor > 0.0) {
                t = t.scaled(factor);
            }
        } catch (const std::exception&) {
            // unparsable value: keep defaults
        }
    }
    return t;
}

Tolerances& table() {
    static Tolerances t = initial_table();
    return t;
}

}  // namespace

const Tolerances& tolerances() { return table(); }

void set_tolerances(const Tolerances& t) { table() = t; }

}  // namespace entrocert
