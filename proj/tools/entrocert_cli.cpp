// entrocert: batch runner for entropy-continuity certificates and audits.
//
//   entrocert run --experiment shannon-convergence --input geo.json --k-max 10
//   entrocert run --experiment mi-audit --channel deph.json --degrading-map id.json
//                 --input rho.json --format json --out audit.json
//   entrocert validate channel.json

#include <iostream>

#include "CLI11.hpp"

#include "entrocert/experiment.hpp"

int main(int argc, char** argv) {
    using namespace entrocert;

    CLI::App app{"Entropy-continuity certification and identity audits"};
    app.require_subcommand(1);

    ExperimentConfig config;
    std::string experiment;
    std::string format = "csv";
    std::string out_path;
    std::string channel;
    std::string degrading;

    auto* run_cmd = app.add_subcommand("run", "Run one experiment and emit its report");
    run_cmd->add_option("--experiment", experiment,
                        "shannon-convergence | vn-convergence | mi-audit | chi-audit | "
                        "identity-audit")
        ->required();
    run_cmd->add_option("--input", config.inputs, "Distribution, state or state-set file")
        ->take_all();
    run_cmd->add_option("--channel", channel, "Channel file (mi-audit, chi-audit)");
    run_cmd->add_option("--degrading-map", degrading, "Candidate degrading map (mi-audit)");
    run_cmd->add_option("--k-max", config.k_max, "Largest k of the grid 1..k_max")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--threshold", config.threshold, "Certification threshold in nats")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", config.seed, "PRNG seed for identity-audit");
    run_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
    run_cmd->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_flag("--require-certified", config.require_certified,
                      "Exit 1 when the final gap bound is not below the threshold");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Report invariant residuals of a file");
    validate_cmd->add_option("path", validate_path, "Input file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::kParse);
    }

    if (*validate_cmd) {
        return static_cast<int>(validate(validate_path, std::cout, std::cerr));
    }

    const auto kind = parse_experiment_kind(experiment);
    if (!kind) {
        std::cerr << "unknown experiment '" << experiment << "'\n";
        return static_cast<int>(ExitCode::kParse);
    }
    config.experiment = *kind;
    config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    if (!out_path.empty()) config.out = out_path;
    if (!channel.empty()) config.channel = channel;
    if (!degrading.empty()) config.degrading_map = degrading;
    return static_cast<int>(run(config, std::cout, std::cerr));
}
