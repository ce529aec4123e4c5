#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kirch/random_states.hpp"
#include "kirch/shell.hpp"

using namespace kirch;

namespace {

SpectralField sphere_state_d1(const std::vector<std::pair<int, cd>>& coeffs) {
    SpectralField u(1);
    for (const auto& [j, v] : coeffs) u.set(ModeIndex::d1(j), v);
    return u;
}

}  // namespace

TEST_CASE("gamma radii") {
    CHECK(gamma_radii(1, 3.0) == std::vector<std::int64_t>({1, 4, 9}));
    CHECK(gamma_radii(2, 3.0) == std::vector<std::int64_t>({1, 2, 4, 5, 8, 9}));
    const auto g = gamma_radii(2, 3.0);
    CHECK(std::find(g.begin(), g.end(), 5) != g.end());  // sqrt(5) from (2,1)
    CHECK_THROWS(gamma_radii(1, 0.5));
}

TEST_CASE("projection to shells") {
    const double a = 0.4;
    {
        const auto p = make_cc_pair(sphere_state_d1({{1, cd(a, 0)}, {-1, cd(a, 0)}}));
        const auto s = project_to_shells(p);
        CHECK(s.S.at(1) == doctest::Approx(2 * a * a).epsilon(1e-14));
        CHECK(std::abs(s.B.at(1) - cd(2 * a * a, 0)) < 1e-15);
    }
    {
        const auto p = make_cc_pair(sphere_state_d1({{1, cd(a, 0)}, {-1, cd(-a, 0)}}));
        const auto s = project_to_shells(p);
        CHECK(s.S.at(1) == doctest::Approx(2 * a * a).epsilon(1e-14));
        CHECK(std::abs(s.B.at(1) - cd(-2 * a * a, 0)) < 1e-15);
        CHECK(std::abs(s.B.at(1)) <= s.S.at(1) + 1e-14);
    }
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 1 + trial % 2;
        const auto p = random_cc_pair(dim, 9, rng, 1.0, 0.7);
        const auto s = project_to_shells(p);
        for (double sv : {0.0, 0.5, 1.0})
            CHECK(s.norm2(sv) ==
                  doctest::Approx(std::pow(sobolev_norm(p.first, sv), 2)).epsilon(1e-12));
        for (const auto& [l2, sl] : s.S) {
            CHECK(sl >= 0.0);
            CHECK(std::abs(s.B.at(l2)) <= sl * (1 + 1e-12));
        }
    }
}

TEST_CASE("closed shell system") {
    // empty spectrum
    ShellSpectrum zero;
    zero.dim = 1;
    CHECK(shell_rhs(zero).dS.empty());

    // single populated shell: dS vanishes, dB follows the hand reduction
    const double a = 0.3;
    const auto p = make_cc_pair(sphere_state_d1({{1, cd(a, 0.1)}, {-1, cd(a, -0.05)}}));
    const auto spec = project_to_shells(p);
    const auto rhs = shell_rhs(spec);
    CHECK(std::abs(rhs.dS.at(1)) < 1e-18);
    const double S1 = spec.S.at(1);
    const cd B1 = spec.B.at(1);
    const double q = 0.25 * (2 * S1 + 2 * B1.real());
    const double P = std::sqrt(1.0 + 2.0 * phi_inverse_eval(q)) - 1.0;
    const cd expected = cd(0, -2) * (1.0 + P) * (1.0 + 0.25 * S1) * B1 +
                        cd(0, 1.0 / 32.0) * std::norm(B1) * B1 +
                        cd(0, 13.0 / 16.0) * S1 * S1 * B1;
    CHECK(std::abs(rhs.dB.at(1) - expected) < 1e-15);
}

TEST_CASE("shell z6") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 1 + trial % 2;
        const auto p = random_cc_pair(dim, 9, rng, 1.0, 0.5);
        const auto spec = project_to_shells(p);
        // vanishes at s = 1/2
        CHECK(std::abs(shell_z6(spec, 0.5)) <= 1e-13);
        // agrees with the field-level rate
        for (double s : {1.0, 2.0}) {
            const double a = shell_z6(spec, s);
            const double b = energy_rate_z6(p, s);
            CHECK(std::abs(a - b) <= 1e-11 * std::max({std::abs(a), std::abs(b), 1e-18}));
        }
    }
    // real B makes both brackets vanish
    ShellSpectrum spec;
    spec.dim = 1;
    spec.radius2 = {1, 4, 9};
    spec.S = {{1, 0.3}, {4, 0.2}, {9, 0.1}};
    spec.B = {{1, cd(0.2, 0)}, {4, cd(0.15, 0)}, {9, cd(0.05, 0)}};
    CHECK(shell_z6(spec, 1.0) == 0.0);

    // the quoted configuration has a nonzero rate at s = 1
    const double t = 0.04;
    ShellSpectrum mixed;
    mixed.dim = 1;
    mixed.radius2 = {1, 4, 9};
    mixed.S = {{1, t}, {4, t}, {9, t}};
    mixed.B = {{1, cd(0, t)}, {4, cd(t, 0)}, {9, cd(t, 0)}};
    CHECK(std::abs(shell_z6(mixed, 1.0)) > 1e-10);
    // realize the same spectrum with a field and compare
    const double r = std::sqrt(t / 2);
    SpectralField u(1);
    u.set(ModeIndex::d1(1), cd(r * std::cos(M_PI / 4), r * std::sin(M_PI / 4)));
    u.set(ModeIndex::d1(-1), cd(r * std::cos(M_PI / 4), r * std::sin(M_PI / 4)));
    u.set(ModeIndex::d1(2), cd(r, 0));
    u.set(ModeIndex::d1(-2), cd(r, 0));
    u.set(ModeIndex::d1(3), cd(r, 0));
    u.set(ModeIndex::d1(-3), cd(r, 0));
    const auto pair = make_cc_pair(u);
    const auto realized = project_to_shells(pair);
    CHECK(realized.S.at(1) == doctest::Approx(t).epsilon(1e-12));
    CHECK(std::abs(realized.B.at(1) - cd(0, t)) < 1e-15);
    CHECK(shell_z6(realized, 1.0) ==
          doctest::Approx(energy_rate_z6(pair, 1.0)).epsilon(1e-11));
}

TEST_CASE("shell closure against the truncated full field") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_cc_pair(1, 9, rng, 1.0, 0.8);
        const auto rep = shell_consistency(p);
        double scale = 0.0;
        for (const auto& [l2, v] : rep.ds_full) scale = std::max(scale, std::abs(v));
        CHECK(rep.max_abs_error <= 1e-11 * scale + 2.2e-16 * rep.cancellation_scale);
        CHECK(std::abs(rep.aggregate_s_half) <= 1e-13 * std::max(1.0, scale));
    }
    // single-sphere state: dS = 0 on both paths
    const auto p = make_cc_pair(sphere_state_d1({{2, cd(0.2, 0.1)}, {-2, cd(0.1, 0.0)}}));
    const auto rep = shell_consistency(p);
    CHECK(std::abs(rep.ds_full.at(4)) < 1e-16);
    CHECK(std::abs(rep.ds_shell.at(4)) < 1e-16);
}
