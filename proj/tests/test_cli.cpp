#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpovm/commands.hpp"
#include "qpovm/moments.hpp"
#include "qpovm/povm.hpp"
#include "qpovm/steering.hpp"

using namespace qpovm;

namespace {

const Field& field(const Row& row, const std::string& name) {
    for (const Field& f : row) {
        if (f.name() == name) return f;
    }
    throw std::runtime_error("missing field: " + name);
}

RunConfig base_config(std::string command) {
    RunConfig cfg;
    cfg.command = std::move(command);
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("table1 reports both bounds and the printed reference") {
    ReportDocument doc = cmd_table1({});
    REQUIRE(doc.rows.size() == 4);

    const Row& orth2 = doc.rows[0];
    CHECK(field(orth2, "label").text_value() == "orthogonal");
    CHECK(std::abs(field(orth2, "eta_necessary").real_value() - 0.7071) <= 5e-4);
    CHECK(std::abs(field(orth2, "eta_sufficient").real_value() - 0.7071) <= 5e-4);
    CHECK(field(orth2, "reference_bound").text_value() == "both");

    const Row& orth3 = doc.rows[1];
    CHECK(std::abs(field(orth3, "eta_necessary").real_value() - 0.5774) <= 5e-4);

    const Row& trine2 = doc.rows[2];
    CHECK(std::abs(field(trine2, "eta_necessary").real_value() - 0.8660) <= 5e-4);
    CHECK(std::abs(field(trine2, "eta_sufficient").real_value() - 0.7320) <= 5e-4);
    CHECK(field(trine2, "reference_bound").text_value() == "sufficient");

    const Row& trine3 = doc.rows[3];
    CHECK(std::abs(field(trine3, "eta_sufficient").real_value() - 0.6667) <= 5e-4);
}

TEST_CASE("table2 rows match the library closed forms") {
    ReportDocument doc = cmd_table2({});
    REQUIRE(doc.rows.size() == 8);
    for (const Row& row : doc.rows) {
        int n = static_cast<int>(field(row, "N").int_value());
        CHECK(field(row, "eta_opt").real_value() == eta_opt_equatorial(n));
        CHECK(field(row, "uola").real_value() == eta_opt_uola(n));
    }
}

TEST_CASE("table3 and its monte-carlo column") {
    RunConfig cfg = base_config("table3");
    cfg.n_list = {4};
    cfg.montecarlo = true;
    cfg.shots = 100000;
    cfg.seed = 321;
    ReportDocument doc = cmd_table3(cfg);
    REQUIRE(doc.rows.size() == 1);
    const Row& row = doc.rows[0];
    CHECK(field(row, "classical").int_value() == 2);
    CHECK(field(row, "quantum").real_value() == quantum_bound(4));
    CHECK(field(row, "attenuated").real_value() == attenuated_bound(4));
    double mc = field(row, "montecarlo").real_value();
    double se = field(row, "std_error").real_value();
    CHECK(std::abs(mc - attenuated_bound(4)) <= 4.0 * se);
    CHECK(doc.seed.has_value());
}

TEST_CASE("chained command evaluates the selected inequality") {
    RunConfig cfg = base_config("chained");
    cfg.n = 3;
    cfg.which = 3;
    cfg.eta_opt = true;
    ReportDocument at_opt = cmd_chained(cfg);
    CHECK(std::abs(field(at_opt.rows[0], "lhs").real_value() - 1.0) <= 1e-12);
    CHECK(field(at_opt.rows[0], "violated").text_value() == "false");

    cfg.eta_opt = false;
    cfg.eta = 1.0;
    ReportDocument sharp = cmd_chained(cfg);
    CHECK(std::abs(field(sharp.rows[0], "lhs").real_value() - 1.5) <= 1e-12);
    CHECK(field(sharp.rows[0], "violated").text_value() == "true");
}

TEST_CASE("simulate command echoes the analytic value") {
    RunConfig cfg = base_config("simulate");
    cfg.n = 3;
    cfg.k = 1;
    cfg.l = 1;
    cfg.eta = 2.0 / 3.0;
    cfg.shots = 50000;
    cfg.seed = 11;
    ReportDocument doc = cmd_simulate(cfg);
    const Row& row = doc.rows[0];
    CHECK(field(row, "analytic").real_value() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(field(row, "mean").real_value() - 1.0 / 3.0) <=
          4.0 * field(row, "std_error").real_value());
}

TEST_CASE("steering commands") {
    RunConfig cfg = base_config("steering");
    cfg.n = 6;
    cfg.eta = 1.0;
    cfg.state = "bell";
    ReportDocument doc = cmd_steering(cfg);
    const Row& row = doc.rows[0];
    CHECK(std::abs(field(row, "functional").real_value() - 1.0) <= 1e-12);
    CHECK(std::abs(field(row, "bound").real_value() - 0.6439) <= 1e-3);
    CHECK(field(row, "violated").text_value() == "true");
    CHECK(field(row, "per_setting").list_value().size() == 6);

    RunConfig local = base_config("local-steering");
    local.n = 3;
    local.eta = 0.5;
    ReportDocument local_doc = cmd_local_steering(local);
    CHECK(field(local_doc.rows[0], "functional").real_value() == 0.5);
    CHECK(field(local_doc.rows[0], "violated").text_value() == "false");

    cfg.state = "thermal";
    CHECK_THROWS_AS(cmd_steering(cfg), Error);
}

TEST_CASE("verify-global command with the symmetric construction") {
    RunConfig cfg = base_config("verify-global");
    cfg.axes_spec = "orthogonal:2";
    cfg.eta = 1.0 / std::sqrt(2.0);
    ReportDocument pass_doc = cmd_verify_global(cfg);
    CHECK(field(pass_doc.rows[0], "pass").text_value() == "true");

    cfg.eta = 0.8;
    ReportDocument fail_doc = cmd_verify_global(cfg);
    CHECK(field(fail_doc.rows[0], "pass").text_value() == "false");
    CHECK(std::abs(field(fail_doc.rows[0], "min_eigenvalue").real_value() -
                   (1.0 - 0.8 * std::sqrt(2.0)) / 4.0) <= 1e-10);

    cfg.axes_spec = "equatorial";
    CHECK_THROWS_AS(cmd_verify_global(cfg), Error);
}

TEST_CASE("verify-global reads effect files") {
    // dump the symmetric construction for the orthogonal pair, then verify it
    double eta = 0.5;
    PovmSet set(orthogonal_axes(2), eta);
    GlobalPovm global = build_symmetric_global(set);
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t index = 0; index < global.size(); ++index) {
        const BlochOperator& op = global.effect(index);
        entries.push_back({{"a", signs_from_index(index, 2)},
                           {"c0", op.c0},
                           {"cx", op.c.x},
                           {"cy", op.c.y},
                           {"cz", op.c.z}});
    }
    std::string path = "qpovm_test_effects.json";
    {
        std::ofstream out(path);
        out << entries.dump();
    }

    RunConfig cfg = base_config("verify-global");
    cfg.axes_spec = "orthogonal:2";
    cfg.eta = eta;
    cfg.effect_file = path;
    ReportDocument doc = cmd_verify_global(cfg);
    CHECK(field(doc.rows[0], "pass").text_value() == "true");
    CHECK(field(doc.rows[0], "source").text_value() == path);

    // tampering with one effect must fail completeness
    entries[0]["c0"] = entries[0]["c0"].get<double>() * 1.01;
    {
        std::ofstream out(path);
        out << entries.dump();
    }
    ReportDocument bad = cmd_verify_global(cfg);
    CHECK(field(bad.rows[0], "pass").text_value() == "false");

    cfg.effect_file = "does_not_exist.json";
    CHECK_THROWS_AS(cmd_verify_global(cfg), Error);
    std::remove(path.c_str());
}

TEST_CASE("rendering is deterministic and formats agree numerically") {
    RunConfig cfg = base_config("simulate");
    cfg.n = 4;
    cfg.k = 1;
    cfg.l = 2;
    cfg.eta = 0.9;
    cfg.shots = 20000;
    cfg.seed = 5;
    ReportDocument doc = cmd_simulate(cfg);

    std::string csv_a = render_csv(doc);
    std::string csv_b = render_csv(doc);
    CHECK(csv_a == csv_b);
    std::string json_a = render_json(doc);
    CHECK(json_a == render_json(doc));

    // the CSV full-precision column round-trips to the JSON payload value
    auto parsed = nlohmann::json::parse(json_a);
    double json_mean = parsed["payload"][0]["mean"].get<double>();

    std::istringstream lines(csv_a);
    std::string line, header, data;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = line;
        } else {
            data = line;
        }
    }
    REQUIRE(!header.empty());
    REQUIRE(!data.empty());
    std::vector<std::string> names, values;
    std::istringstream hs(header), ds(data);
    std::string cell;
    while (std::getline(hs, cell, ',')) names.push_back(cell);
    while (std::getline(ds, cell, ',')) values.push_back(cell);
    REQUIRE(names.size() == values.size());
    double csv_mean = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "mean_full") {
            csv_mean = std::stod(values[i]);
            found = true;
        }
    }
    REQUIRE(found);
    CHECK(csv_mean == json_mean);

    // seed is present in both envelopes for stochastic commands
    CHECK(parsed["seed"].get<std::uint64_t>() == 5);
    CHECK(csv_a.find("# seed: 5\n") != std::string::npos);
}

#ifdef QPOVM_CLI_PATH

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // contents of --out target or captured stderr
};

CliResult run_cli(const std::string& args, bool capture_stderr = false) {
    const std::string out_file = "cli_case_out.tmp";
    const std::string err_file = "cli_case_err.tmp";
    std::string command = std::string("\"") + QPOVM_CLI_PATH + "\" " + args;
    if (!capture_stderr) command += " --out " + out_file;
    command += " 2> " + err_file;
    int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
    std::ifstream in(capture_stderr ? err_file : out_file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return result;
}

}  // namespace

TEST_CASE("binary: eta opt resolves to the equatorial threshold") {
    CliResult result = run_cli("chained --which 3 --n 4 --eta opt --format json");
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["payload"][0]["eta"].get<double>() == eta_opt_equatorial(4));
    CHECK(doc["config"]["eta"].get<std::string>() == "opt");
}

TEST_CASE("binary: QPL_SEED is used unless --seed overrides it") {
    setenv("QPL_SEED", "1234", 1);
    CliResult from_env = run_cli("simulate --n 3 --k 1 --l 1 --eta 0.5 --shots 100 --format json");
    REQUIRE(from_env.exit_code == 0);
    CHECK(nlohmann::json::parse(from_env.output)["seed"].get<std::uint64_t>() == 1234);

    CliResult from_flag =
        run_cli("simulate --n 3 --k 1 --l 1 --eta 0.5 --shots 100 --seed 9 --format json");
    REQUIRE(from_flag.exit_code == 0);
    CHECK(nlohmann::json::parse(from_flag.output)["seed"].get<std::uint64_t>() == 9);
    unsetenv("QPL_SEED");
}

TEST_CASE("binary: module errors exit nonzero with a JSON error object") {
    CliResult result = run_cli("simulate --n 4 --k 2 --l 3 --eta 0.5", true);
    CHECK(result.exit_code == 1);
    auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["error"]["code"].get<std::string>() == "BadIndex");
    CHECK(!doc["error"]["message"].get<std::string>().empty());
}

TEST_CASE("binary: table2 accepts a comma-separated N list") {
    CliResult result = run_cli("table2 --n 3,6,10 --format json");
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.output);
    REQUIRE(doc["payload"].size() == 3);
    CHECK(doc["payload"][1]["N"].get<int>() == 6);
    CHECK(doc["payload"][1]["eta_opt"].get<double>() == eta_opt_equatorial(6));
}

#endif  // QPOVM_CLI_PATH

TEST_CASE("eta resolution and dispatch errors") {
    RunConfig cfg = base_config("chained");
    cfg.n = 5;
    cfg.which = 2;
    CHECK_THROWS_AS(cmd_chained(cfg), Error);  // neither eta nor opt given
    try {
        cmd_chained(cfg);
    } catch (const Error& e) {
        CHECK(e.code() == "BadEta");
    }

    RunConfig unknown = base_config("nonsense");
    CHECK_THROWS_AS(run_command(unknown), Error);
}

TEST_SUITE_END();
