#include "entrocert/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entrocert/errors.hpp"
#include "entrocert/random.hpp"
#include "entrocert/tolerances.hpp"

namespace entrocert {

namespace {

constexpr std::pair<ExperimentKind, const char*> kExperimentNames[] = {
    {ExperimentKind::kShannonConvergence, "shannon-convergence"},
    {ExperimentKind::kVnConvergence, "vn-convergence"},
    {ExperimentKind::kMiAudit, "mi-audit"},
    {ExperimentKind::kChiAudit, "chi-audit"},
    {ExperimentKind::kIdentityAudit, "identity-audit"},
};

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
    return s;
}

StateSet load_classical_set(const std::vector<std::string>& inputs) {
    if (inputs.empty()) throw ValidationError("shannon-convergence needs at least one --input");
    std::vector<Distribution> list;
    for (const auto& path : inputs) {
        const auto doc = io::read_json_file(path);
        switch (io::detect_kind(doc, path)) {
            case io::InputKind::kStateSet:
                if (inputs.size() != 1) {
                    throw ValidationError(path + ": a state-set file must be the only input");
                }
                return io::parse_state_set(doc, path);
            case io::InputKind::kDistribution:
                list.push_back(io::parse_distribution(doc, path));
                break;
            default:
                throw ValidationError(path + ": expected a distribution or state-set file");
        }
    }
    return StateSet(std::move(list), join(inputs));
}

StateSet load_quantum_set(const std::vector<std::string>& inputs, const char* experiment) {
    if (inputs.empty()) {
        throw ValidationError(std::string(experiment) + " needs at least one --input");
    }
    std::vector<DensityMatrix> list;
    for (const auto& path : inputs) {
        const auto doc = io::read_json_file(path);
        switch (io::detect_kind(doc, path)) {
            case io::InputKind::kStateSet:
                if (inputs.size() != 1) {
                    throw ValidationError(path + ": a state-set file must be the only input");
                }
                return io::parse_state_set(doc, path);
            case io::InputKind::kDensityMatrix:
                list.push_back(io::parse_density_matrix(doc, path));
                break;
            default:
                throw ValidationError(path + ": expected a density-matrix or state-set file");
        }
    }
    return StateSet(std::move(list), join(inputs));
}

KrausChannel load_channel(const std::optional<std::string>& path, const char* flag) {
    if (!path) throw ValidationError(std::string("missing ") + flag);
    return io::parse_channel(io::read_json_file(*path), *path);
}

std::string render(const io::Json& j) { return j.dump(2) + "\n"; }

IdentityFamilyResult family(std::string name, std::size_t draws, double worst, double tol) {
    return {std::move(name), draws, worst, tol, worst <= tol};
}

}  // namespace

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
    for (const auto& [kind, n] : kExperimentNames)
        if (name == n) return kind;
    return std::nullopt;
}

std::string experiment_name(ExperimentKind kind) {
    for (const auto& [k, n] : kExperimentNames)
        if (k == kind) return n;
    return "unknown";
}

IdentityAuditReport run_identity_audit(std::uint64_t seed, std::size_t max_dim) {
    max_dim = std::max<std::size_t>(max_dim, 2);
    Rng rng(seed);
    IdentityAuditReport report;
    report.seed = seed;

    {
        double worst = 0.0;
        const std::size_t draws = 200;
        for (std::size_t t = 0; t < draws; ++t) {
            const Distribution x = random_distribution(rng, rng.index(1, 32));
            const std::size_t k = rng.index(1, 8);
            const ClassicalEnsemble e = coarse_decomposition(x, k);
            double lhs = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i)
                lhs += e.weights()[i] * kl_divergence(e.members()[i], x);
            worst = std::max(worst, std::abs(lhs - shannon_entropy(coarse_grain(x, k))));
        }
        report.families.push_back(family("coarse_graining_exactness", draws, worst, 1e-10));
    }
    {
        double worst = 0.0;
        const std::size_t draws = 100;
        for (std::size_t t = 0; t < draws; ++t) {
            const auto sample = random_quantum_ensemble(rng, rng.index(2, max_dim), rng.index(1, 4));
            worst = std::max(worst, quantum_gap_identity_residual(sample.barycenter, sample.ensemble));
        }
        report.families.push_back(family("quantum_gap_identity", draws, worst, 1e-8));
    }
    {
        double worst = 0.0;
        const std::size_t draws = 100;
        for (std::size_t t = 0; t < draws; ++t)
            worst = std::max(worst, bipartite_entropy_identity_residual(
                                        random_density_matrix(rng, 4), {2, 2}));
        report.families.push_back(family("bipartite_entropy_identity", draws, worst, 1e-8));
    }
    {
        double worst = 0.0;
        const std::size_t draws = 50;
        for (std::size_t t = 0; t < draws; ++t) {
            const std::size_t d = rng.index(2, std::min<std::size_t>(max_dim, 3));
            const KrausChannel phi = random_channel(rng, d, d, rng.index(1, 3));
            const DensityMatrix rho = random_density_matrix(rng, d);
            worst = std::max(worst, std::abs(mutual_information_sum(phi, rho) -
                                             mutual_information_rel(phi, rho)));
        }
        report.families.push_back(family("mutual_information_agreement", draws, worst, 1e-7));
    }
    {
        double worst = 0.0;
        const std::size_t draws = 200;
        for (std::size_t t = 0; t < draws; ++t) {
            const std::size_t din = rng.index(2, max_dim);
            const std::size_t dout = rng.index(2, max_dim);
            const std::size_t m0 = (din + dout - 1) / dout;
            const KrausChannel phi = random_channel(rng, din, dout, rng.index(m0, m0 + 2));
            const DensityMatrix rho = random_density_matrix(rng, din);
            const DensityMatrix sigma = random_density_matrix(rng, din);
            worst = std::max(worst, -data_processing_check(phi, rho, sigma));
        }
        report.families.push_back(family("data_processing", draws, std::max(worst, 0.0), 1e-9));
    }
    {
        double worst = 0.0;
        const std::size_t draws = 100;
        for (std::size_t t = 0; t < draws; ++t) {
            const std::size_t din = rng.index(2, max_dim);
            const std::size_t dout = rng.index(2, max_dim);
            const std::size_t m0 = (din + dout - 1) / dout;
            const KrausChannel phi = random_channel(rng, din, dout, rng.index(m0, m0 + 3));
            const DensityMatrix psi = DensityMatrix::pure(random_pure_vector(rng, din));
            worst = std::max(worst, std::abs(output_entropy(phi, psi) -
                                             complementary_output_entropy(phi, psi)));
        }
        report.families.push_back(family("pure_state_exchange", draws, worst, 1e-8));
    }
    report.passed = std::all_of(report.families.begin(), report.families.end(),
                                [](const auto& f) { return f.passed; });
    return report;
}

io::Json to_json(const IdentityAuditReport& r) {
    io::Json families = io::Json::array();
    for (const auto& f : r.families)
        families.push_back(io::Json{{"family", f.name},
                                    {"draws", f.draws},
                                    {"max_violation", f.max_violation},
                                    {"tolerance", f.tolerance},
                                    {"passed", f.passed}});
    return io::Json{{"seed", r.seed}, {"passed", r.passed}, {"families", std::move(families)}};
}

std::string to_csv(const IdentityAuditReport& r) {
    std::ostringstream out;
    out << "family,draws,max_violation,tolerance,passed\n";
    for (const auto& f : r.families)
        out << f.name << ',' << f.draws << ',' << io::format_number(f.max_violation) << ','
            << io::format_number(f.tolerance) << ',' << (f.passed ? "true" : "false") << '\n';
    return out.str();
}

ExitCode run(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
    try {
        if (config.k_max < 1) throw ValidationError("k_max must be >= 1");
        if (!(config.threshold > 0.0)) throw ValidationError("threshold must be > 0");

        const bool json = config.format == OutputFormat::kJson;
        std::string content;
        ExitCode code = ExitCode::kOk;
        std::string failure;

        switch (config.experiment) {
            case ExperimentKind::kShannonConvergence:
            case ExperimentKind::kVnConvergence: {
                const bool classical = config.experiment == ExperimentKind::kShannonConvergence;
                const ConvergenceReport report =
                    classical ? certify_shannon_set(load_classical_set(config.inputs), config.k_max,
                                                    config.threshold)
                              : certify_vn_set(load_quantum_set(config.inputs, "vn-convergence"),
                                               config.k_max, config.threshold);
                content = json ? render(io::to_json(report)) : io::to_csv(report);
                if (!report.certified && config.require_certified) {
                    code = ExitCode::kNotCertified;
                    failure = "not certified: final gap bound " +
                              io::format_number(report.gap_bounds.back()) + " >= threshold " +
                              io::format_number(config.threshold);
                }
                break;
            }
            case ExperimentKind::kMiAudit: {
                const KrausChannel phi = load_channel(config.channel, "--channel");
                std::optional<KrausChannel> lambda;
                if (config.degrading_map) lambda = load_channel(config.degrading_map, "--degrading-map");
                const auto audit =
                    audit_mutual_information(phi, load_quantum_set(config.inputs, "mi-audit"),
                                             config.k_max, lambda ? &*lambda : nullptr);
                content = json ? render(io::to_json(audit)) : io::to_csv(audit);
                if (!audit.passed) {
                    code = ExitCode::kValidation;
                    failure = "mutual-information audit inequality violated";
                }
                break;
            }
            case ExperimentKind::kChiAudit: {
                const KrausChannel phi = load_channel(config.channel, "--channel");
                const auto audit = audit_output_entropy(
                    phi, load_quantum_set(config.inputs, "chi-audit"), config.k_max);
                content = json ? render(io::to_json(audit)) : io::to_csv(audit);
                if (!audit.passed) {
                    code = ExitCode::kValidation;
                    failure = "output-entropy audit inequality violated";
                }
                break;
            }
            case ExperimentKind::kIdentityAudit: {
                const auto report = run_identity_audit(config.seed);
                content = json ? render(to_json(report)) : to_csv(report);
                if (!report.passed) {
                    code = ExitCode::kValidation;
                    for (const auto& f : report.families)
                        if (!f.passed)
                            failure += f.name + " max violation " +
                                       io::format_number(f.max_violation) + "; ";
                }
                break;
            }
        }

        if (config.out) {
            io::write_file(*config.out, content);
        } else {
            out << content;
        }
        if (code != ExitCode::kOk) log << "entrocert: " << failure << '\n';
        return code;
    } catch (const ParseError& e) {
        log << "parse error: " << e.what() << '\n';
        return ExitCode::kParse;
    } catch (const IoError& e) {
        log << "I/O error: " << e.what() << '\n';
        return ExitCode::kIo;
    } catch (const Error& e) {
        log << "validation error: " << e.what() << '\n';
        return ExitCode::kValidation;
    } catch (const std::invalid_argument& e) {
        log << "validation error: " << e.what() << '\n';
        return ExitCode::kValidation;
    }
}

ExitCode validate(const std::string& path, std::ostream& out, std::ostream& log) {
    struct Residual {
        std::string name;
        double value;
        double tolerance;
        bool ok;
    };
    try {
        const auto doc = io::read_json_file(path);
        const Tolerances& tol = tolerances();
        std::vector<Residual> residuals;
        std::string problem;
        switch (io::detect_kind(doc, path)) {
            case io::InputKind::kDistribution: {
                const auto p = io::parse_raw_probs(doc, path);
                double sum = 0.0, most_negative = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    sum += p[i];
                    if (p[i] < 0.0 && problem.empty()) {
                        problem = "negative probability " + io::format_number(p[i]) +
                                  " at index " + std::to_string(i);
                    }
                    most_negative = std::min(most_negative, p[i]);
                }
                residuals.push_back({"probability_sum", std::abs(1.0 - sum), tol.truncation_tail,
                                     std::abs(1.0 - sum) <= tol.truncation_tail});
                residuals.push_back({"negative_mass", -most_negative, 0.0, most_negative >= 0.0});
                break;
            }
            case io::InputKind::kDensityMatrix: {
                const ComplexMatrix m = io::parse_raw_density_matrix(doc, path);
                const double herm = m.hermiticity_residual();
                const double trace = std::abs(m.trace() - Complex{1.0, 0.0});
                residuals.push_back({"hermiticity", herm, tol.density_hermitian,
                                     herm <= tol.density_hermitian});
                residuals.push_back({"trace", trace, tol.density_trace, trace <= tol.density_trace});
                if (herm <= tol.hermitian) {
                    const double smallest = hermitian_eig(m).eigenvalues.back();
                    const double neg = std::max(0.0, -smallest);
                    residuals.push_back(
                        {"negative_eigenvalue", neg, tol.min_eigenvalue, neg <= tol.min_eigenvalue});
                }
                break;
            }
            case io::InputKind::kChannel: {
                const auto raw = io::parse_raw_channel(doc, path);
                const double r = KrausChannel::kraus_sum_residual(raw.dim_in, raw.kraus);
                residuals.push_back({"kraus_sum", r, tol.kraus_sum, r <= tol.kraus_sum});
                const bool count_ok = !raw.kraus.empty() && raw.kraus.size() <= tol.max_kraus;
                residuals.push_back({"kraus_count", double(raw.kraus.size()),
                                     double(tol.max_kraus), count_ok});
                break;
            }
            case io::InputKind::kClassicalEnsemble:
                (void)io::parse_classical_ensemble(doc, path);
                residuals.push_back({"ensemble", 0.0, 0.0, true});
                break;
            case io::InputKind::kStateSet:
                (void)io::parse_state_set(doc, path);
                residuals.push_back({"state_set", 0.0, 0.0, true});
                break;
        }
        bool ok = true;
        for (const auto& r : residuals) {
            out << path << ": " << r.name << " = " << io::format_number(r.value)
                << " (tolerance " << io::format_number(r.tolerance) << ") "
                << (r.ok ? "ok" : "FAIL") << '\n';
            if (!r.ok) {
                ok = false;
                if (problem.empty()) {
                    problem = r.name + " residual " + io::format_number(r.value);
                }
            }
        }
        if (!ok) {
            log << "validation error: " << path << ": " << problem << '\n';
            return ExitCode::kValidation;
        }
        return ExitCode::kOk;
    } catch (const ParseError& e) {
        log << "parse error: " << e.what() << '\n';
        return ExitCode::kParse;
    } catch (const IoError& e) {
        log << "I/O error: " << e.what() << '\n';
        return ExitCode::kIo;
    } catch (const Error& e) {
        log << "validation error: " << e.what() << '\n';
        return ExitCode::kValidation;
    }
}

}  // namespace entrocert
