#ifndef KIRCH_SIM_HPP
#define KIRCH_SIM_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kirch/integrate.hpp"
#include "kirch/random_states.hpp"

namespace kirch {

struct SimulationConfig {
    int dimension = 1;
    double radius = 3.0;
    std::string system = "fg";  // physical | fg | etapsi | normalized | shell
    double dt = 1e-3;
    long steps = 1000;
    std::vector<double> s_list = {0.5, 1.0};
    double delta = 0.01;  // ball radius; doubles as the random-initial-data norm
    std::uint64_t seed = 1;
    std::string out;  // empty = stdout
    std::vector<std::tuple<ModeIndex, double, double>> init;  // explicit coefficients

    std::int64_t max_radius2() const;
};

// Flat key/value text, one key per line; '#' starts a comment. Explicit
// initial coefficients come as repeated init_mode / init_re / init_im blocks.
SimulationConfig parse_config(std::istream& is);
SimulationConfig load_config(const std::string& path);

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;  // the ratio / error the verdict was made on
};

struct RunReport {
    std::vector<CheckResult> checks;
    int resymmetrizations = 0;
    double observed_constant = 0.0;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Trajectory drivers. Each writes the CSV contract
//   t, norm_s..., H, z6_s..., z_ge8_estimate
// with 17 significant digits, re-asserting the state structure every step.
RunReport run_simulate(const SimulationConfig& cfg, std::ostream& csv);

// Shell trajectories: t, then per-lambda S, Re B, Im B, then sum lambda^{2s} S.
RunReport run_shell(const SimulationConfig& cfg, std::ostream& csv);

// Integrates the cubic complex system and the fully normalized system from
// data matched through the full transformation chain, then compares the
// pushed-forward normalized flow against the direct one at every step.
RunReport run_conjugacy(const SimulationConfig& cfg, std::ostream& log);

// CSV of divisor reports over all radius-class triples within the budget.
RunReport run_divisor_scan(const SimulationConfig& cfg, std::ostream& csv);

// Kernel tables over the same triple budget.
RunReport run_coeff_dump(const SimulationConfig& cfg, std::ostream& csv);

// The seeded property-check battery. corrupt_table perturbs one kernel entry
// before the homological check (sensitivity control; the run must then fail).
RunReport run_verify(const SimulationConfig& cfg, std::ostream& log, bool corrupt_table = false);

}  // namespace kirch

#endif
