#include "kirch/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "kirch/oracle.hpp"

namespace kirch {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SpectralField symmetrized_real(const SpectralField& u) {
    SpectralField out(u.dim());
    const SpectralField refl = u.conj_reflect();
    for (const auto& [j, v] : u.coeffs()) out.set(j, 0.5 * (v + refl.at(j)));
    return out;
}

}  // namespace

std::int64_t SimulationConfig::max_radius2() const {
    return std::int64_t(std::floor(radius * radius + 1e-9));
}

SimulationConfig parse_config(std::istream& is) {
    SimulationConfig cfg;
    std::string line;
    std::optional<ModeIndex> pending_mode;
    std::optional<double> pending_re;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream row(line);
        std::string key;
        if (!(row >> key)) continue;
        auto want = [&](auto& slot) {
            if (!(row >> slot))
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": missing value for " + key);
        };
        if (key == "dimension") {
            want(cfg.dimension);
        } else if (key == "radius") {
            want(cfg.radius);
        } else if (key == "system") {
            want(cfg.system);
        } else if (key == "dt") {
            want(cfg.dt);
        } else if (key == "steps") {
            want(cfg.steps);
        } else if (key == "s_list") {
            std::string csv;
            want(csv);
            cfg.s_list.clear();
            std::istringstream items(csv);
            std::string item;
            while (std::getline(items, item, ',')) cfg.s_list.push_back(std::stod(item));
        } else if (key == "delta") {
            want(cfg.delta);
        } else if (key == "seed") {
            want(cfg.seed);
        } else if (key == "out") {
            want(cfg.out);
        } else if (key == "init_mode") {
            std::array<int, 3> c{0, 0, 0};
            for (int i = 0; i < cfg.dimension; ++i) want(c[i]);
            pending_mode = ModeIndex(cfg.dimension, c);
        } else if (key == "init_re") {
            double v;
            want(v);
            pending_re = v;
        } else if (key == "init_im") {
            double v;
            want(v);
            if (!pending_mode || !pending_re)
                throw std::runtime_error("config: init_im without init_mode/init_re block");
            cfg.init.emplace_back(*pending_mode, *pending_re, v);
            pending_mode.reset();
            pending_re.reset();
        } else {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key " + key);
        }
    }
    if (cfg.dimension < 1 || cfg.dimension > 3) throw std::runtime_error("config: bad dimension");
    if (cfg.dt <= 0 || cfg.steps < 1) throw std::runtime_error("config: bad dt/steps");
    if (cfg.dt * double(cfg.steps) > 1e6) throw std::runtime_error("config: dt*steps exceeds 1e6");
    if (cfg.system != "physical" && cfg.system != "fg" && cfg.system != "etapsi" &&
        cfg.system != "normalized" && cfg.system != "shell")
        throw std::runtime_error("config: unknown system " + cfg.system);
    if (cfg.delta <= 0) throw std::runtime_error("config: delta must be positive");
    return cfg;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in);
}

namespace {

FieldPair initial_cc_pair(const SimulationConfig& cfg, Rng& rng) {
    const double m1 = RegularityParams::for_dimension(cfg.dimension).m1;
    if (!cfg.init.empty()) {
        SpectralField w(cfg.dimension);
        for (const auto& [mode, re, im] : cfg.init) w.set(mode, cd(re, im));
        return make_cc_pair(w);
    }
    return random_cc_pair(cfg.dimension, cfg.max_radius2(), rng, m1, 0.5 * cfg.delta);
}

RealPair initial_real_pair(const SimulationConfig& cfg, Rng& rng) {
    const double m1 = RegularityParams::for_dimension(cfg.dimension).m1;
    if (!cfg.init.empty()) {
        SpectralField u(cfg.dimension);
        for (const auto& [mode, re, im] : cfg.init) u.set(mode, cd(re, im));
        RealPair st;
        st.position = symmetrized_real(u);
        st.velocity = SpectralField(cfg.dimension);
        return st;
    }
    return random_real_pair(cfg.dimension, cfg.max_radius2(), rng, m1, 0.5 * cfg.delta);
}

bool support_inside(const SpectralField& out, const SpectralField& in) {
    for (const auto& [j, v] : out.coeffs())
        if (std::abs(v) != 0.0 && !in.in_support(j)) return false;
    return true;
}

struct RowDiagnostics {
    std::vector<double> norms, z6s;
    double hamiltonian = 0.0;
    double z_ge8 = std::nan("");
};

RowDiagnostics diagnostics_for(const SimulationConfig& cfg, const FieldPair& pair,
                               const RealPair* phys) {
    RowDiagnostics d;
    const SpectralField& lead = phys ? phys->position : pair.first;
    for (double s : cfg.s_list) d.norms.push_back(sobolev_norm(lead, s));
    if (cfg.system == "physical")
        d.hamiltonian = hamiltonian(HamiltonianKind::physical, *phys);
    else if (cfg.system == "fg")
        d.hamiltonian = hamiltonian(HamiltonianKind::h2, pair);
    else if (cfg.system == "etapsi")
        d.hamiltonian = hamiltonian(HamiltonianKind::h3, pair);
    else  // normalized: the conserved pullback of the transformed Hamiltonian
        d.hamiltonian =
            hamiltonian(HamiltonianKind::h3, phi4_forward(phi5_forward(pair)));
    for (double s : cfg.s_list) d.z6s.push_back(energy_rate_z6(pair, s));
    const double m1 = RegularityParams::for_dimension(cfg.dimension).m1;
    if (pair_norm(pair, m1) < cfg.delta) {
        const auto dec = w_full(pair, cfg.delta);
        const cd tail = pairing(lambda_pow(dec.parts.at("Wge7").first, 1.0),
                                lambda_pow(pair.second, 1.0)) +
                        pairing(lambda_pow(pair.first, 1.0),
                                lambda_pow(dec.parts.at("Wge7").second, 1.0));
        d.z_ge8 = tail.real();
    }
    return d;
}

void write_row(std::ostream& os, double t, const RowDiagnostics& d) {
    os << fmt17(t);
    for (double n : d.norms) os << ',' << fmt17(n);
    os << ',' << fmt17(d.hamiltonian);
    for (double z : d.z6s) os << ',' << fmt17(z);
    os << ',' << fmt17(d.z_ge8) << '\n';
}

void write_header(std::ostream& os, const SimulationConfig& cfg) {
    os << "t";
    for (double s : cfg.s_list) os << ",norm_s" << s;
    os << ",H";
    for (double s : cfg.s_list) os << ",z6_s" << s;
    os << ",z_ge8_estimate\n";
}

}  // namespace

RunReport run_simulate(const SimulationConfig& cfg, std::ostream& csv) {
    RunReport rep;
    Rng rng(cfg.seed);
    write_header(csv, cfg);

    bool support_ok = true;
    double worst_z6_half = 0.0;
    double h0 = 0.0, h_drift = 0.0;

    const bool has_half = std::find(cfg.s_list.begin(), cfg.s_list.end(), 0.5) != cfg.s_list.end();
    const std::size_t half_idx =
        has_half ? std::size_t(std::find(cfg.s_list.begin(), cfg.s_list.end(), 0.5) -
                               cfg.s_list.begin())
                 : 0;

    auto track = [&](const RowDiagnostics& d, long step) {
        if (step == 0) h0 = d.hamiltonian;
        h_drift = std::max(h_drift,
                           std::abs(d.hamiltonian - h0) / std::max(std::abs(h0), 1e-30));
        if (has_half) worst_z6_half = std::max(worst_z6_half, std::abs(d.z6s[half_idx]));
    };

    if (cfg.system == "physical") {
        RealState st{initial_real_pair(cfg, rng)};
        const SpectralField support0 = st.r.position + st.r.velocity;
        for (long step = 0; step <= cfg.steps; ++step) {
            const FieldPair as_fg =
                phi2_inverse(phi1_inverse(FieldPair(st.r.position, st.r.velocity)));
            const auto d = diagnostics_for(cfg, as_fg, &st.r);
            track(d, step);
            write_row(csv, step * cfg.dt, d);
            if (step == cfg.steps) break;
            st = rk4_step(st, cfg.dt, [](const RealState& y) {
                const RealPair r = rhs_physical(y.r);
                return RealState{r};
            });
            support_ok = support_ok && support_inside(st.r.position, support0) &&
                         support_inside(st.r.velocity, support0);
            const double drift =
                std::max(reality_defect(st.r.position), reality_defect(st.r.velocity));
            if (drift > 1e-13 * (1.0 + st.r.position.max_abs())) {
                st.r.position = symmetrized_real(st.r.position);
                st.r.velocity = symmetrized_real(st.r.velocity);
                ++rep.resymmetrizations;
            }
        }
    } else {
        std::function<FieldPair(const FieldPair&)> rhs;
        if (cfg.system == "fg")
            rhs = [](const FieldPair& p) { return rhs_fg(p); };
        else if (cfg.system == "etapsi")
            rhs = [](const FieldPair& p) { return rhs_eta_psi(p); };
        else if (cfg.system == "normalized")
            rhs = [&cfg](const FieldPair& p) { return w_exact(p, cfg.delta); };
        else
            throw std::runtime_error("run_simulate: use run_shell for the shell system");

        PairState st{initial_cc_pair(cfg, rng)};
        const SpectralField support0 = st.p.first;
        for (long step = 0; step <= cfg.steps; ++step) {
            const auto d = diagnostics_for(cfg, st.p, nullptr);
            track(d, step);
            write_row(csv, step * cfg.dt, d);
            if (step == cfg.steps) break;
            try {
                st = rk4_step(st, cfg.dt,
                              [&rhs](const PairState& y) { return PairState{rhs(y.p)}; });
            } catch (const std::exception& e) {
                throw std::runtime_error("step " + std::to_string(step + 1) + ": " + e.what());
            }
            support_ok = support_ok && support_inside(st.p.first, support0) &&
                         support_inside(st.p.second, support0);
            if (cc_defect(st.p) > 1e-13 * (1.0 + st.p.max_abs())) {
                st.p = resymmetrize_cc(st.p);
                ++rep.resymmetrizations;
            }
        }
    }

    rep.checks.push_back({"support_preserved", support_ok, 0.0});
    rep.checks.push_back({"structure_resymmetrizations", true, double(rep.resymmetrizations)});
    if (has_half)
        rep.checks.push_back({"z6_at_s_half_below_1e-13", worst_z6_half <= 1e-13, worst_z6_half});
    rep.checks.push_back({"hamiltonian_relative_drift", true, h_drift});
    rep.observed_constant = h_drift;
    return rep;
}

RunReport run_shell(const SimulationConfig& cfg, std::ostream& csv) {
    RunReport rep;
    Rng rng(cfg.seed);
    ShellState st{project_to_shells(initial_cc_pair(cfg, rng))};

    csv << "t";
    for (auto l2 : st.spec.radius2)
        csv << ",S_" << l2 << ",ReB_" << l2 << ",ImB_" << l2;
    for (double s : cfg.s_list) csv << ",sum_l2s" << s;
    csv << '\n';

    const double e0 = st.spec.norm2(0.5);
    double worst_energy = 0.0, min_s = 0.0, worst_cs = 0.0;
    for (long step = 0; step <= cfg.steps; ++step) {
        csv << fmt17(step * cfg.dt);
        for (auto l2 : st.spec.radius2) {
            const cd b = st.spec.B.at(l2);
            csv << ',' << fmt17(st.spec.S.at(l2)) << ',' << fmt17(b.real()) << ','
                << fmt17(b.imag());
        }
        for (double s : cfg.s_list) csv << ',' << fmt17(st.spec.norm2(s));
        csv << '\n';
        worst_energy = std::max(worst_energy,
                                std::abs(st.spec.norm2(0.5) - e0) / std::max(e0, 1e-30));
        for (auto l2 : st.spec.radius2) {
            min_s = std::min(min_s, st.spec.S.at(l2));
            worst_cs = std::max(worst_cs, std::abs(st.spec.B.at(l2)) - st.spec.S.at(l2));
        }
        if (step == cfg.steps) break;
        st = rk4_step(st, cfg.dt, [](const ShellState& y) {
            const ShellRhs r = shell_rhs(y.spec);
            ShellState d = y;
            for (auto& [l2, v] : d.spec.S) v = r.dS.at(l2);
            for (auto& [l2, v] : d.spec.B) v = r.dB.at(l2);
            return d;
        });
    }
    const double horizon = cfg.dt * double(cfg.steps);
    rep.checks.push_back({"energy_space_norm_conserved",
                          worst_energy <= 1e-12 * std::max(horizon, 1.0), worst_energy});
    rep.checks.push_back({"S_nonnegative", min_s >= -1e-12, min_s});
    rep.checks.push_back({"B_dominated_by_S", worst_cs <= 1e-12, worst_cs});
    return rep;
}

RunReport run_conjugacy(const SimulationConfig& cfg, std::ostream& log) {
    RunReport rep;
    Rng rng(cfg.seed);
    const double m1 = RegularityParams::for_dimension(cfg.dimension).m1;
    const double ball = 0.05;
    FieldPair uv = initial_cc_pair(cfg, rng);
    if (pair_norm(uv, m1) > 0.5 * ball)
        throw std::runtime_error("run_conjugacy: initial norm must be <= delta/2");
    FieldPair fg = phi_next_forward(uv);

    double worst = 0.0;
    for (long step = 0; step <= cfg.steps; ++step) {
        const FieldPair pushed = phi_next_forward(uv);
        double disc = 0.0;
        for (double s : cfg.s_list)
            disc = std::max(disc, std::max(sobolev_norm(pushed.first - fg.first, s),
                                           sobolev_norm(pushed.second - fg.second, s)));
        worst = std::max(worst, disc);
        if (step == cfg.steps) break;
        PairState a{fg}, b{uv};
        a = rk4_step(a, cfg.dt, [](const PairState& y) { return PairState{rhs_fg(y.p)}; });
        b = rk4_step(b, cfg.dt,
                     [&ball](const PairState& y) { return PairState{w_exact(y.p, ball)}; });
        fg = resymmetrize_cc(a.p);
        uv = resymmetrize_cc(b.p);
    }
    const double budget = 100.0 * (std::pow(cfg.dt, 4) + 1e-10);
    rep.observed_constant = worst / (std::pow(cfg.dt, 4) + 1e-10);
    rep.checks.push_back({"flows_conjugate", worst <= budget, worst});
    log << "conjugacy max discrepancy " << fmt17(worst) << " (allowed " << fmt17(budget)
        << ", observed constant " << fmt17(rep.observed_constant) << ")\n";
    return rep;
}

RunReport run_divisor_scan(const SimulationConfig& cfg, std::ostream& csv) {
    RunReport rep;
    const auto classes = radius_classes(cfg.dimension, cfg.max_radius2());
    auto representative = [&](std::int64_t r2) {
        for (const auto& m : lattice_ball(cfg.dimension, r2))
            if (m.radius2() == r2) return m;
        throw std::logic_error("radius class without representative");
    };
    csv << "j,l,k,div_ppp,div_ppm,div_pmp,div_pmm,p,ott1_ratio,ott4_ratio\n";
    bool ott_ok = true, p_ok = true;
    auto mode_str = [&](const ModeIndex& m) {
        std::string s = "(";
        for (int i = 0; i < m.dim; ++i) s += (i ? " " : "") + std::to_string(m.c[i]);
        return s + ")";
    };
    for (auto j2 : classes)
        for (auto l2 : classes)
            for (auto k2 : classes) {
                const auto r = divisor_report(representative(j2), representative(l2),
                                              representative(k2));
                csv << mode_str(r.j) << ',' << mode_str(r.l) << ',' << mode_str(r.k) << ','
                    << fmt17(r.div_ppp) << ',' << fmt17(r.div_ppm) << ',' << fmt17(r.div_pmp)
                    << ',' << fmt17(r.div_pmm) << ',' << r.p << ',' << fmt17(r.ott1_ratio) << ','
                    << fmt17(r.ott4_ratio) << '\n';
                ott_ok = ott_ok && r.ott1_ok && r.ott4_ok;
                if (!r.zero_ppm && !r.zero_pmp && !r.zero_pmm && std::abs(r.p) < 1) p_ok = false;
            }
    rep.checks.push_back({"small_divisor_bounds", ott_ok, 0.0});
    rep.checks.push_back({"p_nonzero_off_resonance", p_ok, 0.0});
    return rep;
}

RunReport run_coeff_dump(const SimulationConfig& cfg, std::ostream& csv) {
    RunReport rep;
    const auto classes = radius_classes(cfg.dimension, cfg.max_radius2());
    csv << "kind,j2,l2,k2,value\n";
    bool finite = true;
    for (auto kind : {QuinticKind::A11, QuinticKind::B11, QuinticKind::C11, QuinticKind::D11,
                      QuinticKind::F11, QuinticKind::A12, QuinticKind::B12, QuinticKind::C12,
                      QuinticKind::D12, QuinticKind::F12})
        for (auto j2 : classes)
            for (auto l2 : classes)
                for (auto k2 : classes) {
                    const double v = nf5_coefficient_r2(kind, j2, l2, k2);
                    finite = finite && std::isfinite(v);
                    csv << quintic_kind_name(kind) << ',' << j2 << ',' << l2 << ',' << k2 << ','
                        << fmt17(v) << '\n';
                }
    rep.checks.push_back({"coefficients_finite", finite, 0.0});
    return rep;
}

RunReport run_verify(const SimulationConfig& cfg, std::ostream& log, bool corrupt_table) {
    RunReport rep;
    Rng rng(cfg.seed);
    auto check = [&](const std::string& name, bool pass, double observed) {
        rep.checks.push_back({name, pass, observed});
        log << (pass ? "PASS " : "FAIL ") << name << " (observed " << fmt17(observed) << ")\n";
    };

    // spectral core
    {
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const auto f = random_field(2, 9, rng);
            for (double s : {0.5, 1.0, 2.0}) {
                const auto back = lambda_pow(lambda_pow(f, s), -s);
                for (const auto& [j, v] : f.coeffs())
                    worst = std::max(worst, std::abs(back.at(j) - v) /
                                                std::max(std::abs(v), 1e-300));
            }
        }
        check("lambda_round_trip", worst <= 1e-14, worst);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const auto p = random_cc_pair(1 + t % 2, 9, rng, 1.0, 0.3);
            const double Q = q_functional(p), P = p_functional(p);
            worst = std::max(worst,
                             std::abs(P * std::sqrt(1 + 2 * P) - Q) / std::max(Q, 1e-300));
        }
        check("P_defines_Q_inverse", worst <= 1e-12, worst);
    }

    // transforms
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const int dim = 1 + t % 2;
            const double m0 = RegularityParams::for_dimension(dim).m0;
            const auto wz = random_cc_pair(dim, 9, rng, m0, 0.3);
            const auto ab = random_cc_pair(dim, 9, rng, m0, 1.0);
            const double bound = (7.0 / 16.0) * std::pow(pair_norm(wz, m0), 2);
            worst = std::max(worst, pair_norm(m4_apply(wz, ab), 1.0) /
                                        (bound * sobolev_norm(ab.first, 1.0)));
        }
        check("quartic_matrix_7_16_bound", worst <= 1.0 + 1e-12, worst);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 30; ++t) {
            const int dim = 1 + t % 2;
            const double m1 = RegularityParams::for_dimension(dim).m1;
            const auto uv = random_cc_pair(dim, 9, rng, m1, 0.02);
            const auto fg = phi_next_forward(uv);
            const auto back = phi_next_inverse(fg);
            worst = std::max(worst, pair_norm(back - uv, m1));
        }
        check("transform_chain_round_trip", worst <= 1e-10, worst);
    }

    // cancellation identities
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const int dim = 1 + t % 2;
            const auto q = random_cc_pair(dim, 9, rng, 1.0, 0.4);
            const auto r = x3_plus(q);
            for (double s : {0.0, 0.5, 1.0, 2.0}) {
                const cd c = pairing(lambda_pow(r.first, s), lambda_pow(q.second, s)) +
                             pairing(lambda_pow(q.first, s), lambda_pow(r.second, s));
                const double scale =
                    std::pow(pair_norm(q, 1.0), 2) * std::pow(pair_norm(q, s), 2);
                worst = std::max(worst, std::abs(c) / std::max(scale, 1e-300));
            }
        }
        check("cubic_energy_cancellation", worst <= 1e-13, worst);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const int dim = 1 + t % 2;
            const auto wz = random_cc_pair(dim, 9, rng, 1.0, 0.4);
            const auto a = x5_plus(wz);
            const auto b = x5_plus_operator_route(wz);
            worst = std::max(worst, pair_norm(a - b, 0.0) /
                                        std::max(pair_norm(a, 0.0), 1e-300));
        }
        check("quintic_dual_assembly", worst <= 1e-11, worst);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 30; ++t) {
            const int dim = 1 + t % 2;
            const auto uv = random_cc_pair(dim, 9, rng, 1.0, 0.1);
            const double z = energy_rate_z6(uv, 0.5);
            worst = std::max(worst, std::abs(z));
        }
        check("z6_vanishes_at_s_half", worst <= 1e-13, worst);
    }

    // small divisors
    {
        bool ok = true;
        const auto classes = radius_classes(2, 64);
        auto pick = [&](std::int64_t r2) {
            for (const auto& m : lattice_ball(2, r2))
                if (m.radius2() == r2) return m;
            throw std::logic_error("no representative");
        };
        for (auto j2 : classes)
            for (auto l2 : classes)
                for (auto k2 : classes) {
                    const auto r = divisor_report(pick(j2), pick(l2), pick(k2));
                    ok = ok && r.ott1_ok && r.ott4_ok &&
                         (r.zero_ppm || r.zero_pmp || r.zero_pmm || std::abs(r.p) >= 1);
                }
        check("small_divisor_scan_r8", ok, 0.0);
        const auto triples = sharpness_triples(3);
        check("sharpness_family", triples.size() == 3 && triples[0].n == 4 &&
                                      triples[0].p == 1 && triples[2].p == 1,
              double(triples.size()));
    }

    // oracle
    {
        oracle::Hook hook;
        if (corrupt_table)
            hook = oracle::KernelPerturbation{QuinticKind::A11, 1, 1, 1, Rational(1, 1000)};
        const auto rep1 = oracle::verify_homological_equation({-1, 1}, hook);
        const auto rep2 = oracle::verify_homological_equation({-2, -1, 1, 2}, hook);
        check("homological_equation_exact", rep1.exact && rep2.exact,
              double(rep1.discrepancies.size() + rep2.discrepancies.size()));
    }

    // shell closure
    {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            const auto p = random_cc_pair(1, 9, rng, 1.0, 0.8);
            const auto rc = shell_consistency(p);
            double scale = 0.0;
            for (const auto& [l2, v] : rc.ds_full) scale = std::max(scale, std::abs(v));
            worst = std::max(worst, rc.max_abs_error /
                                        std::max(1e-11 * scale + 2.2e-16 * rc.cancellation_scale,
                                                 1e-300));
        }
        check("shell_closure_dual_path", worst <= 1.0, worst);
    }

    return rep;
}

}  // namespace kirch
