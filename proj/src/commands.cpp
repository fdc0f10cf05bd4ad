#include "qpovm/commands.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "qpovm/moments.hpp"
#include "qpovm/povm.hpp"
#include "qpovm/seqsim.hpp"
#include "qpovm/steering.hpp"

namespace qpovm {

namespace {

const std::vector<int> kTableNValues = {3, 4, 5, 6, 10, 20, 50, 100};

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

double resolve_eta(const RunConfig& cfg, int n) {
    if (cfg.eta_opt) return eta_opt_equatorial(n);
    if (!cfg.eta) throw Error("BadEta", "an eta value (or 'opt') is required");
    return *cfg.eta;
}

std::string eta_config_string(const RunConfig& cfg) {
    if (cfg.eta_opt) return "opt";
    return cfg.eta ? format_full(*cfg.eta) : "";
}

EvalMode mode_of(const RunConfig& cfg) {
    return cfg.montecarlo ? EvalMode::montecarlo : EvalMode::analytic;
}

std::string mode_name(EvalMode mode) {
    return mode == EvalMode::montecarlo ? "montecarlo" : "analytic";
}

// "equatorial:4" / "orthogonal:3" / "trine:2"
std::pair<std::string, int> parse_axes_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw Error("BadAxes", "axes spec must look like equatorial:N, orthogonal:N or trine:N");
    }
    std::string kind = spec.substr(0, colon);
    int n = 0;
    try {
        n = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw Error("BadAxes", "axes spec has a malformed count: " + spec);
    }
    if (kind != "equatorial" && kind != "orthogonal" && kind != "trine") {
        throw Error("BadAxes", "unknown axes kind: " + kind);
    }
    return {kind, n};
}

std::vector<UnitVector3> axes_for(const std::string& kind, int n) {
    if (kind == "orthogonal") return orthogonal_axes(n);
    if (kind == "trine") return trine_axes(n);
    return equatorial_axes(n);
}

GlobalPovm load_effect_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw Error("BadFile", "cannot open effect file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error("BadFile", std::string("effect file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.size() != (std::size_t{1} << n)) {
        throw Error("BadFile", "effect file must list exactly 2^N effects");
    }
    std::vector<BlochOperator> effects(std::size_t{1} << n);
    std::vector<bool> seen(effects.size(), false);
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("a") || !entry.at("a").is_string()) {
            throw Error("BadFile", "each effect needs fields a, c0, cx, cy, cz");
        }
        std::string signs = entry.at("a").get<std::string>();
        if (static_cast<int>(signs.size()) != n) {
            throw Error("BadFile", "sign string length must equal N: " + signs);
        }
        BlochOperator op;
        try {
            op.c0 = entry.at("c0").get<double>();
            op.c.x = entry.at("cx").get<double>();
            op.c.y = entry.at("cy").get<double>();
            op.c.z = entry.at("cz").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw Error("BadFile", std::string("malformed effect coefficients: ") + e.what());
        }
        if (!std::isfinite(op.c0) || !std::isfinite(op.c.x) || !std::isfinite(op.c.y) ||
            !std::isfinite(op.c.z)) {
            throw Error("BadFile", "effect coefficients must be finite");
        }
        std::size_t index = index_from_signs(signs);
        if (seen[index]) throw Error("BadFile", "duplicate sign string: " + signs);
        seen[index] = true;
        effects[index] = op;
    }
    return GlobalPovm(n, std::move(effects));
}

struct Table1Case {
    const char* label;
    int n;
    std::vector<UnitVector3> (*axes)(int);
    double reference_value;
    const char* reference_bound;  // which of the two bounds the reference prints
};

}  // namespace

ReportDocument cmd_table1(const RunConfig&) {
    const Table1Case cases[] = {
        {"orthogonal", 2, orthogonal_axes, 0.7071, "both"},
        {"orthogonal", 3, orthogonal_axes, 0.5774, "both"},
        {"trine", 2, trine_axes, 0.7320, "sufficient"},
        {"trine", 3, trine_axes, 0.6667, "both"},
    };
    ReportDocument doc;
    doc.command = "table1";
    for (const auto& c : cases) {
        std::vector<UnitVector3> axes = c.axes(c.n);
        doc.rows.push_back(Row{
            Field::text("label", c.label),
            Field::integer("N", c.n),
            Field::real("eta_necessary", eta_necessary(axes), RealStyle::eta),
            Field::real("eta_sufficient", eta_sufficient(axes), RealStyle::eta),
            Field::real("reference_value", c.reference_value, RealStyle::eta),
            Field::text("reference_bound", c.reference_bound),
        });
    }
    return doc;
}

ReportDocument cmd_table2(const RunConfig& cfg) {
    std::vector<int> ns = cfg.n_list.empty() ? kTableNValues : cfg.n_list;
    ReportDocument doc;
    doc.command = "table2";
    doc.config.emplace_back("n", join_ints(ns));
    for (int n : ns) {
        doc.rows.push_back(Row{
            Field::integer("N", n),
            Field::real("eta_opt", eta_opt_equatorial(n), RealStyle::eta),
            Field::real("uola", eta_opt_uola(n), RealStyle::eta),
        });
    }
    return doc;
}

ReportDocument cmd_table3(const RunConfig& cfg) {
    std::vector<int> ns = cfg.n_list.empty() ? kTableNValues : cfg.n_list;
    ReportDocument doc;
    doc.command = "table3";
    doc.config.emplace_back("n", join_ints(ns));
    doc.config.emplace_back("montecarlo", cfg.montecarlo ? "true" : "false");
    if (cfg.montecarlo) {
        doc.seed = cfg.seed;
        doc.config.emplace_back("shots", std::to_string(cfg.shots));
    }
    for (int n : ns) {
        Row row{
            Field::integer("N", n),
            Field::integer("classical", n - 2),
            Field::real("quantum", quantum_bound(n), RealStyle::svalue),
            Field::real("attenuated", attenuated_bound(n), RealStyle::svalue),
        };
        if (cfg.montecarlo) {
            SequentialChainValue mc = chained_sequential_value(
                n, eta_opt_equatorial(n), EvalMode::montecarlo, cfg.shots, cfg.seed);
            row.push_back(Field::real("montecarlo", mc.value, RealStyle::svalue));
            row.push_back(Field::real("std_error", mc.std_error, RealStyle::general));
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

ReportDocument cmd_chained(const RunConfig& cfg) {
    double eta = resolve_eta(cfg, cfg.n);
    PairCorrelations corr = PairCorrelations::sequential_quantum(cfg.n, eta);
    double lhs = chained_lhs(corr, cfg.which);
    double classical = classical_bound(cfg.n);

    ReportDocument doc;
    doc.command = "chained";
    doc.config.emplace_back("which", std::to_string(cfg.which));
    doc.config.emplace_back("n", std::to_string(cfg.n));
    doc.config.emplace_back("eta", eta_config_string(cfg));
    doc.rows.push_back(Row{
        Field::integer("which", cfg.which),
        Field::integer("N", cfg.n),
        Field::real("eta", eta, RealStyle::eta),
        Field::real("lhs", lhs, RealStyle::svalue),
        Field::integer("classical", cfg.n - 2),
        Field::real("quantum", quantum_bound(cfg.n), RealStyle::svalue),
        Field::real("attenuated", attenuated_bound(cfg.n), RealStyle::svalue),
        Field::boolean("violated", lhs > classical + 1e-12),
    });
    return doc;
}

ReportDocument cmd_simulate(const RunConfig& cfg) {
    double eta = resolve_eta(cfg, cfg.n);
    CorrelationEstimate est = simulate_pair(cfg.n, cfg.k, cfg.l, eta, cfg.shots, cfg.seed);
    double analytic = analytic_pair_correlation(cfg.n, cfg.k, cfg.l, eta);

    ReportDocument doc;
    doc.command = "simulate";
    doc.seed = cfg.seed;
    doc.config.emplace_back("n", std::to_string(cfg.n));
    doc.config.emplace_back("k", std::to_string(cfg.k));
    doc.config.emplace_back("l", std::to_string(cfg.l));
    doc.config.emplace_back("eta", eta_config_string(cfg));
    doc.config.emplace_back("shots", std::to_string(cfg.shots));
    doc.rows.push_back(Row{
        Field::integer("N", cfg.n),
        Field::integer("k", cfg.k),
        Field::integer("l", cfg.l),
        Field::real("eta", eta, RealStyle::eta),
        Field::integer("shots", static_cast<long long>(est.shots)),
        Field::real("mean", est.mean, RealStyle::general),
        Field::real("std_error", est.std_error, RealStyle::general),
        Field::real("analytic", analytic, RealStyle::general),
    });
    return doc;
}

namespace {

ReportDocument steering_report_document(const char* command, const RunConfig& cfg,
                                        const SteeringReport& report) {
    ReportDocument doc;
    doc.command = command;
    if (report.mode == EvalMode::montecarlo) {
        doc.seed = cfg.seed;
        doc.config.emplace_back("shots", std::to_string(cfg.shots));
    }
    doc.config.emplace_back("n", std::to_string(report.n));
    doc.config.emplace_back("eta", eta_config_string(cfg));
    doc.config.emplace_back("mode", mode_name(report.mode));

    Row row{
        Field::integer("N", report.n),
        Field::real("eta", report.eta, RealStyle::eta),
        Field::text("mode", mode_name(report.mode)),
        Field::real("functional", report.functional, RealStyle::eta),
        Field::real("bound", report.bound, RealStyle::eta),
        Field::boolean("violated", report.violated),
        Field::real("std_error", report.std_error, RealStyle::general),
        Field::real_list("per_setting", report.per_setting),
    };
    doc.rows.push_back(std::move(row));
    return doc;
}

}  // namespace

ReportDocument cmd_steering(const RunConfig& cfg) {
    if (cfg.state != "bell" && cfg.state != "mixed") {
        throw Error("BadState", "steering states are 'bell' or 'mixed'");
    }
    double eta = resolve_eta(cfg, cfg.n);
    TwoQubitState state = cfg.state == "mixed" ? TwoQubitState::maximally_mixed()
                                               : TwoQubitState::bell_psi_minus();
    SteeringReport report =
        steering_functional(state, cfg.n, eta, mode_of(cfg), cfg.shots, cfg.seed);
    ReportDocument doc = steering_report_document("steering", cfg, report);
    doc.config.emplace_back("state", cfg.state);
    doc.rows.front().insert(doc.rows.front().begin() + 2, Field::text("state", cfg.state));
    return doc;
}

ReportDocument cmd_local_steering(const RunConfig& cfg) {
    double eta = resolve_eta(cfg, cfg.n);
    SteeringReport report = local_analogue(cfg.n, eta, mode_of(cfg), cfg.shots, cfg.seed);
    return steering_report_document("local-steering", cfg, report);
}

ReportDocument cmd_verify_global(const RunConfig& cfg) {
    auto [kind, n] = parse_axes_spec(cfg.axes_spec);
    double eta = resolve_eta(cfg, n);
    PovmSet set(axes_for(kind, n), eta);

    std::string source = cfg.effect_file.empty() ? "symmetric-construction" : cfg.effect_file;
    GlobalPovm global = cfg.effect_file.empty() ? build_symmetric_global(set)
                                                : load_effect_file(cfg.effect_file, n);
    VerificationReport report = verify_global(global, set);

    ReportDocument doc;
    doc.command = "verify-global";
    doc.config.emplace_back("axes", cfg.axes_spec);
    doc.config.emplace_back("eta", eta_config_string(cfg));
    doc.config.emplace_back("source", source);
    doc.rows.push_back(Row{
        Field::text("axes", cfg.axes_spec),
        Field::integer("N", n),
        Field::real("eta", eta, RealStyle::eta),
        Field::text("source", source),
        Field::real("min_eigenvalue", report.min_eigenvalue, RealStyle::general),
        Field::real("completeness_residual", report.completeness_residual, RealStyle::general),
        Field::real("marginal_residual", report.marginal_residual, RealStyle::general),
        Field::boolean("pass", report.pass),
    });
    return doc;
}

ReportDocument run_command(const RunConfig& cfg) {
    if (cfg.command == "table1") return cmd_table1(cfg);
    if (cfg.command == "table2") return cmd_table2(cfg);
    if (cfg.command == "table3") return cmd_table3(cfg);
    if (cfg.command == "chained") return cmd_chained(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "steering") return cmd_steering(cfg);
    if (cfg.command == "local-steering") return cmd_local_steering(cfg);
    if (cfg.command == "verify-global") return cmd_verify_global(cfg);
    throw Error("BadCommand", "unknown command: " + cfg.command);
}

void run_and_write(const RunConfig& cfg) { write_report(run_command(cfg), cfg.format, cfg.out_path); }

}  // namespace qpovm
