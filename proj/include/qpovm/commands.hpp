#pragma once

// Command implementations behind the CLI: table reproduction, chained
// inequality evaluation, sequential simulation, steering functionals, and
// global-POVM verification. Each command maps a RunConfig to a
// ReportDocument; the binary in tools/ only parses arguments.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpovm/report.hpp"

namespace qpovm {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::uint64_t kDefaultShots = 200000;

struct RunConfig {
    std::string command;

    int n = 0;
    std::vector<int> n_list;           // table2/table3
    std::optional<double> eta;         // explicit eta
    bool eta_opt = false;              // --eta opt
    int which = 3;                     // chained inequality selector
    int k = 1, l = 1;                  // simulate indices
    std::uint64_t shots = kDefaultShots;
    std::uint64_t seed = kDefaultSeed;
    bool montecarlo = false;           // table3 extra column / mode selector
    std::string state = "bell";        // steering input state
    std::string axes_spec;             // verify-global axes, e.g. "equatorial:4"
    std::string effect_file;           // verify-global candidate effects (JSON)

    OutputFormat format = OutputFormat::csv;
    std::string out_path;              // empty = stdout
};

ReportDocument cmd_table1(const RunConfig& cfg);
ReportDocument cmd_table2(const RunConfig& cfg);
ReportDocument cmd_table3(const RunConfig& cfg);
ReportDocument cmd_chained(const RunConfig& cfg);
ReportDocument cmd_simulate(const RunConfig& cfg);
ReportDocument cmd_steering(const RunConfig& cfg);
ReportDocument cmd_local_steering(const RunConfig& cfg);
ReportDocument cmd_verify_global(const RunConfig& cfg);

// Dispatches on cfg.command and writes the rendered report.
ReportDocument run_command(const RunConfig& cfg);
void run_and_write(const RunConfig& cfg);

}  // namespace qpovm
