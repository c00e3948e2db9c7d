// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "entrocert/channels.hpp"
#include "entrocert/classical.hpp"
#include "entrocert/continuity.hpp"
#include "entrocert/quantum.hpp"
#include "entrocert/random.hpp"
#include "oracle.hpp"

using namespace entrocert;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && secs >= time_limit_s) {
        o.passed = false;
        o.detail += "; over time limit";
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %2d %-32s %s (%.3f s)\n", o.passed ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Every report produced below, for the monotonicity criterion.
std::vector<ConvergenceReport> reports;

KrausChannel draw_channel(Rng& rng, std::size_t din, std::size_t dout, std::size_t extra) {
    const std::size_t m0 = (din + dout - 1) / dout;
    return random_channel(rng, din, dout, rng.index(m0, m0 + extra));
}

// Distribution of support s placed at random positions among n >= s outcomes.
Distribution sparse_distribution(Rng& rng, std::size_t n, std::size_t s) {
    const Distribution core = random_distribution(rng, s);
    std::vector<double> x(n, 0.0);
    std::vector<std::size_t> slots(n);
    for (std::size_t i = 0; i < n; ++i) slots[i] = i;
    for (std::size_t i = 0; i < s; ++i) std::swap(slots[i], slots[rng.index(i, n - 1)]);
    for (std::size_t i = 0; i < s; ++i) x[slots[i]] = core[i];
    return Distribution(std::move(x));
}

}  // namespace

int main() {
    Rng rng(20240601);

    criterion(1, "coarse-graining exactness", 5.0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Distribution x = random_distribution(rng, rng.index(1, 32));
            for (std::size_t k = 1; k <= 8; ++k) {
                const ClassicalEnsemble e = coarse_decomposition(x, k);
                double lhs = 0.0;
                for (std::size_t i = 0; i < e.size(); ++i)
                    lhs += e.weights()[i] * kl_divergence(e.members()[i], x);
                const auto g = coarse_grain(x, k);
                worst = std::max(worst, std::abs(lhs - oracle::shannon({g.probs().begin(),
                                                                        g.probs().end()})));
            }
        }
        return Outcome{worst < 1e-10, "max violation " + sci(worst) + " < 1e-10"};
    });

    criterion(2, "quantum gap identity", 10.0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const auto s = random_quantum_ensemble(rng, rng.index(1, 6), rng.index(1, 5));
            double direct = oracle::von_neumann(s.barycenter.matrix());
            double rel = 0.0;
            for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
                const auto& m = s.ensemble.members()[i].matrix();
                direct -= s.ensemble.weights()[i] * oracle::von_neumann(m);
                rel += s.ensemble.weights()[i] * quantum_relative_entropy(
                                                     s.ensemble.members()[i], s.barycenter);
            }
            worst = std::max(worst, std::abs(direct - rel));
            worst = std::max(worst, quantum_gap_identity_residual(s.barycenter, s.ensemble));
        }
        return Outcome{worst < 1e-8, "max violation " + sci(worst) + " < 1e-8"};
    });

    criterion(3, "spectral reduction", 0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = rng.index(1, 8);
            const DensityMatrix rho = random_density_matrix(rng, n);
            const Distribution eigs(oracle::eigenvalues(rho.matrix()));
            for (std::size_t k = 1; k <= n; ++k)
                worst = std::max(worst, std::abs(delta_k_vn_bound(rho, k) -
                                                 delta_k_shannon_bound(eigs, k)));
        }
        return Outcome{worst < 1e-10, "max difference " + sci(worst) + " < 1e-10"};
    });

    criterion(4, "geometric-tail decay", 0, [&] {
        const StateSet s(MajorizationBall{Distribution::geometric(0.5, 40)},
                         "geometric(1/2), 40 terms");
        const ConvergenceReport r = certify_shannon_set(s, 10, 1e-3);
        reports.push_back(r);
        double worst = 0.0;
        for (std::size_t i = 0; i < r.k_values.size(); ++i)
            worst = std::max(worst, std::abs(r.gap_bounds[i] -
                                             oracle::geometric_coarse_entropy(0.5, r.k_values[i])));
        const bool analytic = r.k_values.size() == 10 && worst < 1e-4;
        std::string detail = "analytic match " + sci(worst) + " < 1e-4 " +
                             (analytic ? "ok" : "FAILED") + "; gap(10) = " +
                             sci(r.gap_bounds.back()) + ", certified at 1e-3 by k=10: " +
                             (r.certified ? "yes" : "no");
        return Outcome{analytic && r.certified, detail};
    });

    criterion(5, "majorization soundness", 0, [&] {
        double worst = -std::numeric_limits<double>::infinity();
        bool inside = true;
        for (int t = 0; t < 500; ++t) {
            const Distribution x0 = t % 2 == 0 ? random_distribution(rng, rng.index(2, 24))
                                               : Distribution::geometric(0.5 + 0.4 * rng.uniform(), 20);
            const Distribution x = less_chaotic_sample(rng, x0, rng.index(1, 30));
            inside = inside && majorizes(x, x0);
            for (std::size_t k = 1; k <= 8; ++k)
                worst = std::max(worst, shannon_entropy(coarse_grain(x, k)) -
                                            shannon_entropy(coarse_grain(x0, k)));
        }
        return Outcome{inside && worst <= 1e-10,
                       std::string("samples inside ball: ") + (inside ? "yes" : "no") +
                           "; max S(k(x)) - S(k(x0)) = " + sci(worst) + " <= 1e-10"};
    });

    criterion(6, "exactness on low rank", 0, [&] {
        std::size_t nonzero = 0, cases = 0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t k = rng.index(1, 6);
            const std::size_t n = rng.index(k, 12);
            const Distribution x = sparse_distribution(rng, n, rng.index(1, k));
            const ClassicalEnsemble trivial({1.0}, {x});
            nonzero += delta_k_shannon_bound(x, k) != 0.0;
            nonzero += ensemble_entropy_gap(x, trivial) != 0.0;
            if (x.support_size() <= kOracleMaxSupport) nonzero += delta_k_shannon_oracle(x, k) != 0.0;

            ComplexMatrix m(n, n);
            const std::size_t r = rng.index(1, std::min(k, n));
            const Distribution w = random_distribution(rng, r);
            for (std::size_t j = 0; j < r; ++j) {
                const auto v = random_pure_vector(rng, n);
                m += ComplexMatrix::outer(v, v) * Complex{w[j], 0.0};
            }
            const DensityMatrix rho(m);
            nonzero += delta_k_vn_bound(rho, k) != 0.0;
            nonzero += quantum_ensemble_gap(rho, rank_k_decomposition(rho, k)) != 0.0;
            nonzero += delta_k_mi_bound(draw_channel(rng, n, 2, 1), rho, k) != 0.0;
            cases += 6;
        }
        return Outcome{nonzero == 0,
                       std::to_string(cases) + " low-rank evaluations, " + std::to_string(nonzero) +
                           " nonzero"};
    });

    criterion(7, "oracle dominance", 30.0, [&] {
        double worst = -std::numeric_limits<double>::infinity();
        std::size_t pairs = 0;
        for (std::size_t s = 1; s <= 8; ++s)
            for (int t = 0; t < 25; ++t) {
                const Distribution x = sparse_distribution(rng, s + rng.index(0, 3), s);
                for (std::size_t k = 1; k <= 8; ++k, ++pairs)
                    worst = std::max(worst, delta_k_shannon_oracle(x, k) - delta_k_shannon_bound(x, k));
            }
        return Outcome{worst <= 0.0 + 1e-12,
                       std::to_string(pairs) + " (x, k) pairs; max oracle - bound = " + sci(worst)};
    });

    criterion(8, "mutual-information agreement", 0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const KrausChannel phi = random_channel(rng, 2, 2, rng.index(1, 3));
            const DensityMatrix rho = random_density_matrix(rng, 2);
            worst = std::max(worst, std::abs(mutual_information_sum(phi, rho) -
                                             mutual_information_rel(phi, rho)));
        }
        const DensityMatrix half = DensityMatrix::maximally_mixed(2);
        const double ln2 = std::log(2.0);
        double closed = 0.0;
        for (const auto& [phi, target] :
             {std::pair{KrausChannel::identity(2), 2.0 * ln2}, std::pair{KrausChannel::dephasing(2), ln2}}) {
            closed = std::max(closed, std::abs(mutual_information_sum(phi, half) - target));
            closed = std::max(closed, std::abs(mutual_information_rel(phi, half) - target));
        }
        return Outcome{worst < 1e-7 && closed < 1e-7,
                       "max |sum - rel| " + sci(worst) + " < 1e-7; closed forms off by " + sci(closed)};
    });

    criterion(9, "mutual-information sandwich", 0, [&] {
        double upper = std::numeric_limits<double>::infinity();
        for (int t = 0; t < 100; ++t) {
            const std::size_t din = rng.index(2, 4);
            const KrausChannel phi = draw_channel(rng, din, rng.index(1, 4), 2);
            const DensityMatrix rho = random_density_matrix(rng, din);
            for (std::size_t k = 1; k <= din; ++k)
                upper = std::min(upper, 2.0 * delta_k_vn_bound(rho, k) - delta_k_mi_bound(phi, rho, k));
        }
        const KrausChannel deph = KrausChannel::dephasing(2);
        const KrausChannel lambda = KrausChannel::identity(2);
        const bool degradable = is_degrading_map(deph, lambda);
        double lower = std::numeric_limits<double>::infinity();
        for (int t = 0; t < 100; ++t) {
            const DensityMatrix rho = random_density_matrix(rng, 2);
            lower = std::min(lower, delta_k_mi_bound(deph, rho, 1) - delta_k_vn_bound(rho, 1));
            upper = std::min(upper, 2.0 * delta_k_vn_bound(rho, 1) - delta_k_mi_bound(deph, rho, 1));
        }
        return Outcome{upper >= -1e-9 && degradable && lower >= -1e-8,
                       "min upper slack " + sci(upper) + " >= -1e-9; dephasing degradable: " +
                           (degradable ? "yes" : "no") + "; min lower slack " + sci(lower) +
                           " >= -1e-8"};
    });

    criterion(10, "data processing", 0, [&] {
        double worst = std::numeric_limits<double>::infinity();
        std::size_t finite = 0;
        while (finite < 200) {
            const std::size_t din = rng.index(1, 4);
            const KrausChannel phi = draw_channel(rng, din, rng.index(1, 4), 2);
            const DensityMatrix rho = random_density_matrix(rng, din);
            const DensityMatrix sigma = random_density_matrix(rng, din);
            if (!std::isfinite(quantum_relative_entropy(rho, sigma))) continue;
            worst = std::min(worst, data_processing_check(phi, rho, sigma));
            ++finite;
        }
        return Outcome{worst >= -1e-9, "min slack " + sci(worst) + " >= -1e-9"};
    });

    criterion(11, "pure-state exchange", 0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t din = rng.index(1, 4);
            const KrausChannel phi = draw_channel(rng, din, rng.index(1, 4), 3);
            const DensityMatrix psi = DensityMatrix::pure(random_pure_vector(rng, din));
            worst = std::max(worst, std::abs(output_entropy(phi, psi) -
                                             complementary_output_entropy(phi, psi)));
        }
        return Outcome{worst < 1e-8, "max |H_out - H_env| " + sci(worst) + " < 1e-8"};
    });

    criterion(12, "bipartite entropy identity", 0, [&] {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t)
            worst = std::max(worst,
                             bipartite_entropy_identity_residual(random_density_matrix(rng, 4), {2, 2}));
        const double s = 1.0 / std::sqrt(2.0);
        const Complex v[] = {s, 0.0, 0.0, s};
        const DensityMatrix bell = DensityMatrix::pure(v);
        const DensityMatrix w1(partial_trace(bell.matrix(), {2, 2}, Subsystem::kFirst));
        const DensityMatrix w2(partial_trace(bell.matrix(), {2, 2}, Subsystem::kSecond));
        const double ln2 = std::log(2.0);
        const double bell_err = std::max(
            {std::abs(von_neumann_entropy(bell)), std::abs(von_neumann_entropy(w1) - ln2),
             std::abs(von_neumann_entropy(w2) - ln2),
             std::abs(quantum_relative_entropy(bell, DensityMatrix(tensor(w1.matrix(), w2.matrix()))) -
                      2.0 * ln2),
             bipartite_entropy_identity_residual(bell, {2, 2})});
        return Outcome{worst < 1e-8 && bell_err < 1e-8,
                       "max residual " + sci(worst) + " < 1e-8; Bell closed forms off by " +
                           sci(bell_err)};
    });

    criterion(13, "monotone approximation", 0, [&] {
        for (int t = 0; t < 20; ++t) {
            std::vector<Distribution> xs;
            for (int i = 0; i < 5; ++i) xs.push_back(random_distribution(rng, rng.index(1, 40)));
            reports.push_back(certify_shannon_set(StateSet(xs, "random list"), 12, 1e-3));
            reports.push_back(certify_shannon_set(
                StateSet(MajorizationBall{random_distribution(rng, 30)}, "random ball"), 12, 1e-3));
            std::vector<DensityMatrix> rhos;
            for (int i = 0; i < 3; ++i) rhos.push_back(random_density_matrix(rng, rng.index(1, 8)));
            reports.push_back(certify_vn_set(StateSet(rhos, "random states"), 8, 1e-3));
            reports.push_back(certify_vn_set(
                StateSet(SpectrumFamily{{random_distribution(rng, 6)}}, "random spectrum"),
                geometric_k_grid(6), 1e-3));
        }
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& r : reports)
            for (std::size_t i = 1; i < r.gap_bounds.size(); ++i)
                worst = std::max(worst, r.gap_bounds[i] - r.gap_bounds[i - 1]);
        return Outcome{worst <= 1e-10, std::to_string(reports.size()) +
                                           " reports; max increase " + sci(worst) + " <= 1e-10"};
    });

    criterion(14, "CLI determinism", 0, [&] {
        const auto dir = std::filesystem::temp_directory_path() / "entrocert_acceptance";
        std::filesystem::create_directories(dir);
        std::string contents[2];
        for (int i = 0; i < 2; ++i) {
            const auto file = dir / ("audit" + std::to_string(i) + ".csv");
            const std::string cmd = std::string("\"") + ENTROCERT_CLI +
                                    "\" run --experiment identity-audit --seed 42 --out \"" +
                                    file.string() + "\"";
            if (std::system(cmd.c_str()) != 0) return Outcome{false, "CLI run failed"};
            std::ifstream in(file, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            contents[i] = ss.str();
        }
        std::filesystem::remove_all(dir);
        const bool same = !contents[0].empty() && contents[0] == contents[1];
        return Outcome{same, same ? "two seed-42 runs byte-identical (" +
                                        std::to_string(contents[0].size()) + " bytes)"
                                  : "outputs differ"};
    });

    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
