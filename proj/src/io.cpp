#include "entrocert/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entrocert/errors.hpp"

namespace entrocert::io {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& field,
                       const std::string& what) {
    throw ParseError(source + ": field '" + field + "' " + what);
}

const Json& require(const Json& doc, const char* key, const std::string& source,
                    const std::string& prefix = "") {
    if (!doc.is_object()) fail(source, prefix.empty() ? "<root>" : prefix, "is not an object");
    auto it = doc.find(key);
    if (it == doc.end()) fail(source, prefix + key, "is missing");
    return *it;
}

double as_number(const Json& v, const std::string& source, const std::string& field) {
    if (!v.is_number()) fail(source, field, "is not a number");
    return v.get<double>();
}

std::size_t as_count(const Json& v, const std::string& source, const std::string& field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(source, field, "is not a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Complex as_complex(const Json& v, const std::string& source, const std::string& field) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2) fail(source, field, "is not a [re, im] pair");
    return {as_number(v[0], source, field + "[0]"), as_number(v[1], source, field + "[1]")};
}

ComplexMatrix parse_matrix(const Json& v, std::size_t rows, std::size_t cols,
                           const std::string& source, const std::string& field) {
    if (!v.is_array() || v.size() != rows) {
        fail(source, field, "must be an array of " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_field = field + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != cols) {
            fail(source, row_field, "must have " + std::to_string(cols) + " entries");
        }
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = as_complex(v[i][j], source, row_field + "[" + std::to_string(j) + "]");
    }
    return m;
}

Json matrix_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

// Wraps domain validation so the message names the file and field.
template <class F>
auto validated(const std::string& source, const std::string& field, F&& make) {
    try {
        return make();
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + field + ": " + e.what());
    } catch (const NotSquare& e) {
        throw ValidationError(source + ": " + field + ": " + e.what());
    } catch (const DimensionMismatch& e) {
        throw ValidationError(source + ": " + field + ": " + e.what());
    }
}

Json optional_number(const std::optional<double>& v) {
    return v.has_value() ? Json(*v) : Json(nullptr);
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": malformed JSON: " + e.what());
    }
}

InputKind detect_kind(const Json& doc, const std::string& source) {
    if (!doc.is_object()) fail(source, "<root>", "is not an object");
    if (doc.contains("kind")) return InputKind::kStateSet;
    if (doc.contains("kraus")) return InputKind::kChannel;
    if (doc.contains("matrix")) return InputKind::kDensityMatrix;
    if (doc.contains("weights")) return InputKind::kClassicalEnsemble;
    if (doc.contains("probs")) return InputKind::kDistribution;
    fail(source, "<root>", "has none of the keys probs, weights, matrix, kraus, kind");
}

std::vector<double> parse_raw_probs(const Json& doc, const std::string& source) {
    const Json& probs = require(doc, "probs", source);
    if (!probs.is_array()) fail(source, "probs", "is not an array");
    std::vector<double> p;
    for (std::size_t i = 0; i < probs.size(); ++i)
        p.push_back(as_number(probs[i], source, "probs[" + std::to_string(i) + "]"));
    return p;
}

Distribution parse_distribution(const Json& doc, const std::string& source) {
    auto p = parse_raw_probs(doc, source);
    return validated(source, "probs", [&] { return Distribution::from_truncated(std::move(p)); });
}

ClassicalEnsemble parse_classical_ensemble(const Json& doc, const std::string& source) {
    const Json& weights = require(doc, "weights", source);
    const Json& members = require(doc, "members", source);
    if (!weights.is_array()) fail(source, "weights", "is not an array");
    if (!members.is_array()) fail(source, "members", "is not an array");
    std::vector<double> w;
    for (std::size_t i = 0; i < weights.size(); ++i)
        w.push_back(as_number(weights[i], source, "weights[" + std::to_string(i) + "]"));
    std::vector<Distribution> ms;
    for (std::size_t i = 0; i < members.size(); ++i)
        ms.push_back(parse_distribution(members[i], source + ":members[" + std::to_string(i) + "]"));
    return validated(source, "weights",
                     [&] { return ClassicalEnsemble(std::move(w), std::move(ms)); });
}

ComplexMatrix parse_raw_density_matrix(const Json& doc, const std::string& source) {
    const std::size_t dim = as_count(require(doc, "dim", source), source, "dim");
    if (dim == 0) fail(source, "dim", "must be positive");
    return parse_matrix(require(doc, "matrix", source), dim, dim, source, "matrix");
}

DensityMatrix parse_density_matrix(const Json& doc, const std::string& source) {
    ComplexMatrix m = parse_raw_density_matrix(doc, source);
    return validated(source, "matrix", [&] { return DensityMatrix(std::move(m)); });
}

RawChannel parse_raw_channel(const Json& doc, const std::string& source) {
    RawChannel raw;
    raw.dim_in = as_count(require(doc, "dim_in", source), source, "dim_in");
    raw.dim_out = as_count(require(doc, "dim_out", source), source, "dim_out");
    const Json& kraus = require(doc, "kraus", source);
    if (!kraus.is_array()) fail(source, "kraus", "is not an array");
    for (std::size_t j = 0; j < kraus.size(); ++j)
        raw.kraus.push_back(parse_matrix(kraus[j], raw.dim_out, raw.dim_in, source,
                                         "kraus[" + std::to_string(j) + "]"));
    return raw;
}

KrausChannel parse_channel(const Json& doc, const std::string& source) {
    RawChannel raw = parse_raw_channel(doc, source);
    return validated(source, "kraus", [&] {
        return KrausChannel(raw.dim_in, raw.dim_out, std::move(raw.kraus));
    });
}

StateSet parse_state_set(const Json& doc, const std::string& source) {
    const Json& kind = require(doc, "kind", source);
    if (!kind.is_string()) fail(source, "kind", "is not a string");
    std::string descriptor = source;
    if (auto it = doc.find("descriptor"); it != doc.end()) {
        if (!it->is_string()) fail(source, "descriptor", "is not a string");
        descriptor = it->get<std::string>();
    }
    const std::string k = kind.get<std::string>();
    if (k == "majorization-ball") {
        return StateSet(MajorizationBall{parse_distribution(require(doc, "dominator", source),
                                                            source + ":dominator")},
                        descriptor);
    }
    if (k == "spectrum-family") {
        const Json& spectra = require(doc, "spectra", source);
        if (!spectra.is_array()) fail(source, "spectra", "is not an array");
        SpectrumFamily family;
        for (std::size_t i = 0; i < spectra.size(); ++i) {
            // Each spectrum is a bare array or a {"probs": [...]} object.
            const Json entry = spectra[i].is_array() ? Json{{"probs", spectra[i]}} : spectra[i];
            family.spectra.push_back(
                parse_distribution(entry, source + ":spectra[" + std::to_string(i) + "]"));
        }
        return StateSet(std::move(family), descriptor);
    }
    if (k == "explicit-list") {
        const Json& members = require(doc, "members", source);
        if (!members.is_array() || members.empty()) fail(source, "members", "must be a nonempty array");
        const std::string first = source + ":members[0]";
        if (detect_kind(members[0], first) == InputKind::kDistribution) {
            std::vector<Distribution> list;
            for (std::size_t i = 0; i < members.size(); ++i)
                list.push_back(
                    parse_distribution(members[i], source + ":members[" + std::to_string(i) + "]"));
            return StateSet(std::move(list), descriptor);
        }
        std::vector<DensityMatrix> list;
        for (std::size_t i = 0; i < members.size(); ++i)
            list.push_back(
                parse_density_matrix(members[i], source + ":members[" + std::to_string(i) + "]"));
        return StateSet(std::move(list), descriptor);
    }
    fail(source, "kind", "must be explicit-list, majorization-ball or spectrum-family");
}

Json to_json(const Distribution& x) {
    return Json{{"probs", std::vector<double>(x.probs().begin(), x.probs().end())}};
}

Json to_json(const ClassicalEnsemble& e) {
    Json members = Json::array();
    for (const auto& m : e.members()) members.push_back(to_json(m));
    return Json{{"weights", std::vector<double>(e.weights().begin(), e.weights().end())},
                {"members", std::move(members)}};
}

Json to_json(const DensityMatrix& rho) {
    return Json{{"dim", rho.dim()}, {"matrix", matrix_json(rho.matrix())}};
}

Json to_json(const KrausChannel& phi) {
    Json kraus = Json::array();
    for (const auto& v : phi.kraus()) kraus.push_back(matrix_json(v));
    return Json{{"dim_in", phi.dim_in()}, {"dim_out", phi.dim_out()}, {"kraus", std::move(kraus)}};
}

Json to_json(const ConvergenceReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.k_values.size(); ++i)
        rows.push_back(Json{{"k", r.k_values[i]},
                            {"gap_bound", r.gap_bounds[i]},
                            {"certified_so_far", r.certified_so_far(i)}});
    return Json{{"set_descriptor", r.set_descriptor},
                {"threshold", r.threshold},
                {"certified", r.certified},
                {"bound_based", r.bound_based},
                {"note", r.note},
                {"rows", std::move(rows)}};
}

ConvergenceReport parse_convergence_report(const Json& doc, const std::string& source) {
    ConvergenceReport r;
    const Json& descriptor = require(doc, "set_descriptor", source);
    if (!descriptor.is_string()) fail(source, "set_descriptor", "is not a string");
    r.set_descriptor = descriptor.get<std::string>();
    r.threshold = as_number(require(doc, "threshold", source), source, "threshold");
    const Json& certified = require(doc, "certified", source);
    const Json& bound_based = require(doc, "bound_based", source);
    if (!certified.is_boolean()) fail(source, "certified", "is not a boolean");
    if (!bound_based.is_boolean()) fail(source, "bound_based", "is not a boolean");
    r.certified = certified.get<bool>();
    r.bound_based = bound_based.get<bool>();
    const Json& note = require(doc, "note", source);
    if (!note.is_string()) fail(source, "note", "is not a string");
    r.note = note.get<std::string>();
    const Json& rows = require(doc, "rows", source);
    if (!rows.is_array()) fail(source, "rows", "is not an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string prefix = "rows[" + std::to_string(i) + "].";
        r.k_values.push_back(as_count(require(rows[i], "k", source, prefix), source, prefix + "k"));
        r.gap_bounds.push_back(
            as_number(require(rows[i], "gap_bound", source, prefix), source, prefix + "gap_bound"));
    }
    return r;
}

Json to_json(const MutualInformationAudit& a) {
    Json rows = Json::array();
    for (const auto& row : a.rows)
        rows.push_back(Json{{"k", row.k},
                            {"max_vn_bound", row.max_vn_bound},
                            {"max_mi_bound", row.max_mi_bound},
                            {"upper_slack", row.upper_slack},
                            {"environment_slack", row.environment_slack},
                            {"lower_slack", optional_number(row.lower_slack)},
                            {"passed", row.passed}});
    return Json{{"set_descriptor", a.set_descriptor},
                {"degrading_residual", optional_number(a.degrading_residual)},
                {"degradable", a.degradable},
                {"inequalities",
                 Json{{"mi_bound <= 2 vn_bound", kUpperSlackTolerance},
                      {"environment term <= input term", kUpperSlackTolerance},
                      {"mi_bound >= vn_bound (degradable only)", kLowerSlackTolerance}}},
                {"passed", a.passed},
                {"rows", std::move(rows)}};
}

Json to_json(const OutputEntropyAudit& a) {
    Json rows = Json::array();
    for (const auto& row : a.rows)
        rows.push_back(Json{{"k", row.k},
                            {"max_vn_bound", row.max_vn_bound},
                            {"max_output_gap", row.max_output_gap},
                            {"monotonicity_slack", row.monotonicity_slack},
                            {"max_identity_residual", row.max_identity_residual},
                            {"passed", row.passed}});
    return Json{{"set_descriptor", a.set_descriptor},
                {"note", "output gaps are ensemble Holevo quantities: lower bounds on chi, "
                         "upper bounds on the output-entropy gap functional"},
                {"inequalities",
                 Json{{"output gap <= vn_bound", kUpperSlackTolerance},
                      {"output-entropy gap identity residual", kIdentityResidualTolerance}}},
                {"passed", a.passed},
                {"rows", std::move(rows)}};
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream out;
    out << "k,gap_bound,certified_so_far\n";
    for (std::size_t i = 0; i < r.k_values.size(); ++i)
        out << r.k_values[i] << ',' << format_number(r.gap_bounds[i]) << ','
            << (r.certified_so_far(i) ? "true" : "false") << '\n';
    return out.str();
}

std::string to_csv(const MutualInformationAudit& a) {
    std::ostringstream out;
    out << "k,max_vn_bound,max_mi_bound,upper_slack,environment_slack,lower_slack,passed\n";
    for (const auto& row : a.rows)
        out << row.k << ',' << format_number(row.max_vn_bound) << ','
            << format_number(row.max_mi_bound) << ',' << format_number(row.upper_slack) << ','
            << format_number(row.environment_slack) << ','
            << (row.lower_slack ? format_number(*row.lower_slack) : "") << ','
            << (row.passed ? "true" : "false") << '\n';
    return out.str();
}

std::string to_csv(const OutputEntropyAudit& a) {
    std::ostringstream out;
    out << "k,max_vn_bound,max_output_gap,monotonicity_slack,max_identity_residual,passed\n";
    for (const auto& row : a.rows)
        out << row.k << ',' << format_number(row.max_vn_bound) << ','
            << format_number(row.max_output_gap) << ',' << format_number(row.monotonicity_slack)
            << ',' << format_number(row.max_identity_residual) << ','
            << (row.passed ? "true" : "false") << '\n';
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace entrocert::io
