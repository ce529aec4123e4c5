#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "kirch/sim.hpp"

namespace {

int finish(const kirch::RunReport& rep, std::ostream& log) {
    for (const auto& c : rep.checks)
        log << (c.pass ? "PASS " : "FAIL ") << c.name << " (observed " << c.observed << ")\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral normal-form toolkit and simulator for the Kirchhoff equation"};
    app.require_subcommand(1);

    std::string config_path;
    bool corrupt_table = false;

    auto* simulate = app.add_subcommand("simulate", "integrate a system and write trajectory CSV");
    auto* shell = app.add_subcommand("shell", "integrate the closed shell system");
    auto* conjugacy =
        app.add_subcommand("conjugacy", "compare the cubic flow with the pushed-forward "
                                        "normalized flow");
    auto* verify = app.add_subcommand("verify", "run the seeded property-check battery");
    auto* divisor_scan =
        app.add_subcommand("divisor-scan", "exhaustive small-divisor report over radius classes");
    auto* coeff_dump = app.add_subcommand("coeff-dump", "dump the quintic kernel tables");

    for (auto* cmd : {simulate, shell, conjugacy, verify, divisor_scan, coeff_dump})
        cmd->add_option("-c,--config", config_path, "configuration file")->required();
    verify->add_flag("--corrupt-table", corrupt_table,
                     "perturb one kernel entry first (the run must then fail)");

    CLI11_PARSE(app, argc, argv);

    kirch::SimulationConfig cfg;
    try {
        cfg = kirch::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.out.empty() && cfg.out != "-") {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "config error: cannot open output file " << cfg.out << "\n";
            return 2;
        }
        out = &file;
    }

    try {
        if (simulate->parsed()) return finish(kirch::run_simulate(cfg, *out), std::cerr);
        if (shell->parsed()) return finish(kirch::run_shell(cfg, *out), std::cerr);
        if (conjugacy->parsed()) return finish(kirch::run_conjugacy(cfg, *out), std::cerr);
        if (verify->parsed())
            return kirch::run_verify(cfg, *out, corrupt_table).all_pass() ? 0 : 1;
        if (divisor_scan->parsed()) return finish(kirch::run_divisor_scan(cfg, *out), std::cerr);
        if (coeff_dump->parsed()) return finish(kirch::run_coeff_dump(cfg, *out), std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
