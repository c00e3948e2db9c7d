#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "entrocert/channels.hpp"
#include "entrocert/classical.hpp"
#include "entrocert/continuity.hpp"
#include "entrocert/quantum.hpp"

namespace entrocert::io {

using Json = nlohmann::ordered_json;

enum class InputKind { kDistribution, kClassicalEnsemble, kDensityMatrix, kChannel, kStateSet };

/// Reads and parses a JSON file. Throws IoError or ParseError.
Json read_json_file(const std::filesystem::path& path);

/// Classifies a parsed document by its keys. Throws ParseError.
InputKind detect_kind(const Json& doc, const std::string& source);

// File schemas. `source` names the file in ParseError messages.
//   Distribution      {"probs": [p, ...]}
//   ClassicalEnsemble {"weights": [...], "members": [{"probs": [...]}, ...]}
//   DensityMatrix     {"dim": n, "matrix": [[[re, im], ...], ...]}
//   KrausChannel      {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//   StateSet          {"kind": "explicit-list" | "majorization-ball" | "spectrum-family",
//                      "descriptor": "...", "members" | "dominator" | "spectra": ...}
Distribution parse_distribution(const Json& doc, const std::string& source);
ClassicalEnsemble parse_classical_ensemble(const Json& doc, const std::string& source);
DensityMatrix parse_density_matrix(const Json& doc, const std::string& source);
KrausChannel parse_channel(const Json& doc, const std::string& source);
StateSet parse_state_set(const Json& doc, const std::string& source);

/// Shape-checked but unvalidated contents of a channel file.
struct RawChannel {
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
    std::vector<ComplexMatrix> kraus;
};
RawChannel parse_raw_channel(const Json& doc, const std::string& source);
/// Shape-checked but unvalidated contents of a density-matrix file.
ComplexMatrix parse_raw_density_matrix(const Json& doc, const std::string& source);
/// Entries of a distribution file without validation.
std::vector<double> parse_raw_probs(const Json& doc, const std::string& source);

Json to_json(const Distribution& x);
Json to_json(const ClassicalEnsemble& e);
Json to_json(const DensityMatrix& rho);
Json to_json(const KrausChannel& phi);
Json to_json(const ConvergenceReport& r);
Json to_json(const MutualInformationAudit& a);
Json to_json(const OutputEntropyAudit& a);

ConvergenceReport parse_convergence_report(const Json& doc, const std::string& source);

/// 12 significant digits, as used in every CSV cell.
std::string format_number(double v);

/// Columns: k,gap_bound,certified_so_far
std::string to_csv(const ConvergenceReport& r);
/// Columns: k,max_vn_bound,max_mi_bound,upper_slack,environment_slack,lower_slack,passed
std::string to_csv(const MutualInformationAudit& a);
/// Columns: k,max_vn_bound,max_output_gap,monotonicity_slack,max_identity_residual,passed
std::string to_csv(const OutputEntropyAudit& a);

/// Writes `content` to `path`, replacing it. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace entrocert::io
