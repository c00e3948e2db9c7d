#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "entrocert/io.hpp"

namespace entrocert {

enum class ExperimentKind {
    kShannonConvergence,
    kVnConvergence,
    kMiAudit,
    kChiAudit,
    kIdentityAudit,
};

enum class OutputFormat { kCsv, kJson };

/// Process exit codes of the runner.
enum class ExitCode : int {
    kOk = 0,
    kNotCertified = 1,
    kParse = 2,
    kValidation = 3,
    kIo = 4,
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kIdentityAudit;
    std::vector<std::string> inputs;
    std::optional<std::string> channel;
    std::optional<std::string> degrading_map;
    std::size_t k_max = 10;
    double threshold = 1e-3;
    std::uint64_t seed = 0;
    std::optional<std::string> out;  // stdout when empty
    OutputFormat format = OutputFormat::kCsv;
    bool require_certified = false;
};

/// Parses an experiment name as used on the command line
/// ("shannon-convergence", "vn-convergence", "mi-audit", "chi-audit",
/// "identity-audit").
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);
std::string experiment_name(ExperimentKind kind);

/// One invariant family of the identity audit.
struct IdentityFamilyResult {
    std::string name;
    std::size_t draws = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = true;
};

struct IdentityAuditReport {
    std::uint64_t seed = 0;
    std::vector<IdentityFamilyResult> families;
    bool passed = true;
};

/// Seeded sweep of every verifiable identity and inequality: coarse-graining
/// exactness, the quantum entropy-gap identity, the bipartite marginal
/// identity, agreement of the two mutual-information formulas, data
/// processing, and pure-state entropy exchange. Dimensions stay <= max_dim.
IdentityAuditReport run_identity_audit(std::uint64_t seed, std::size_t max_dim = 4);

io::Json to_json(const IdentityAuditReport& r);
/// Columns: family,draws,max_violation,tolerance,passed
std::string to_csv(const IdentityAuditReport& r);

/// Runs one experiment and writes its report to config.out (or `out`).
/// Errors are reported on `log` and mapped to exit codes.
ExitCode run(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

/// Checks one input file without running anything; prints each invariant
/// residual to `out`. Returns kParse, kValidation, kIo, or kOk.
ExitCode validate(const std::string& path, std::ostream& out, std::ostream& log);

}  // namespace entrocert
