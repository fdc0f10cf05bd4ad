// qpovm command line: reproduces the joint-measurability, chained-inequality
// and steering tables, runs seeded simulations, and emits CSV/JSON reports.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpovm/commands.hpp"
#include "qpovm/error.hpp"
#include "qpovm/version.hpp"

namespace {

using qpovm::RunConfig;

// --eta accepts a number or the literal "opt"
void add_eta_option(CLI::App* cmd, RunConfig& cfg, bool required) {
    auto* opt = cmd->add_option_function<std::string>(
        "--eta",
        [&cfg](const std::string& value) {
            if (value == "opt") {
                cfg.eta_opt = true;
                return;
            }
            try {
                std::size_t used = 0;
                double parsed = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
                cfg.eta = parsed;
            } catch (const std::exception&) {
                throw CLI::ValidationError("--eta", "expected a number or 'opt'");
            }
        },
        "unsharpness parameter in [0,1], or 'opt' for the equatorial threshold");
    if (required) opt->required();
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option_function<std::string>(
           "--format",
           [&cfg](const std::string& value) {
               if (value == "csv") {
                   cfg.format = qpovm::OutputFormat::csv;
               } else if (value == "json") {
                   cfg.format = qpovm::OutputFormat::json;
               } else {
                   throw CLI::ValidationError("--format", "expected csv or json");
               }
           },
           "output format (csv|json)")
        ->default_str("csv");
    cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
}

void add_seed_option(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "RNG seed")->envname("QPL_SEED");
}

void add_shots_option(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--shots", cfg.shots, "trials per estimated correlation");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(qpovm::kToolName) +
                 " - joint measurability, chained correlation inequalities and steering"};
    app.set_version_flag("--version", qpovm::kToolVersion);
    app.require_subcommand(1);

    RunConfig cfg;

    auto* table1 = app.add_subcommand("table1", "joint-measurability bounds for orthogonal and trine axes");
    add_output_options(table1, cfg);

    auto* table2 = app.add_subcommand("table2", "equatorial unsharpness thresholds");
    table2->add_option("--n", cfg.n_list, "settings counts (default 3,4,5,6,10,20,50,100)")
        ->delimiter(',');
    add_output_options(table2, cfg);

    auto* table3 = app.add_subcommand("table3", "chained ch3 bounds (classical, quantum, attenuated)");
    table3->add_option("--n", cfg.n_list, "settings counts (default 3,4,5,6,10,20,50,100)")
        ->delimiter(',');
    table3->add_flag("--montecarlo", cfg.montecarlo, "add a sequential Monte-Carlo column");
    add_shots_option(table3, cfg);
    add_seed_option(table3, cfg);
    add_output_options(table3, cfg);

    auto* chained = app.add_subcommand("chained", "evaluate one chained inequality at a given eta");
    chained->add_option("--which", cfg.which, "inequality index 1..4")->required();
    chained->add_option("--n", cfg.n, "number of observables")->required();
    add_eta_option(chained, cfg, true);
    add_output_options(chained, cfg);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of one sequential pair correlation");
    simulate->add_option("--n", cfg.n, "number of equatorial settings")->required();
    simulate->add_option("--k", cfg.k, "first setting index")->required();
    simulate->add_option("--l", cfg.l, "separation to the second setting")->required();
    add_eta_option(simulate, cfg, true);
    add_shots_option(simulate, cfg);
    add_seed_option(simulate, cfg);
    add_output_options(simulate, cfg);

    auto* steering = app.add_subcommand("steering", "N-setting linear steering functional on a two-qubit state");
    steering->add_option("--n", cfg.n, "number of settings")->required();
    add_eta_option(steering, cfg, true);
    steering->add_option("--state", cfg.state, "shared state (bell|mixed)")->default_str("bell");
    steering->add_flag("--montecarlo", cfg.montecarlo, "sample outcomes instead of exact evaluation");
    add_shots_option(steering, cfg);
    add_seed_option(steering, cfg);
    add_output_options(steering, cfg);

    auto* local = app.add_subcommand("local-steering", "single-qubit analogue of the steering functional");
    local->add_option("--n", cfg.n, "number of settings")->required();
    add_eta_option(local, cfg, true);
    local->add_flag("--montecarlo", cfg.montecarlo, "sample outcomes instead of exact evaluation");
    add_shots_option(local, cfg);
    add_seed_option(local, cfg);
    add_output_options(local, cfg);

    auto* verify = app.add_subcommand("verify-global", "verify a parent POVM against a set of noisy POVMs");
    verify->add_option("--axes", cfg.axes_spec, "axes spec: equatorial:N|orthogonal:N|trine:N")
        ->required();
    add_eta_option(verify, cfg, true);
    verify->add_option("--file", cfg.effect_file,
                       "JSON list of 2^N effects {a, c0, cx, cy, cz}; default: symmetric construction");
    add_output_options(verify, cfg);

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        qpovm::run_and_write(cfg);
    } catch (const qpovm::Error& err) {
        nlohmann::ordered_json error_obj{{"error", {{"code", err.code()}, {"message", err.what()}}}};
        std::cerr << error_obj.dump() << '\n';
        return 1;
    } catch (const std::exception& err) {
        nlohmann::ordered_json error_obj{{"error", {{"code", "Internal"}, {"message", err.what()}}}};
        std::cerr << error_obj.dump() << '\n';
        return 2;
    }
    return 0;
}
