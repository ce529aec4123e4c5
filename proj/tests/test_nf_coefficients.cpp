#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <map>

#include "kirch/nf_coefficients.hpp"

using namespace kirch;

namespace {
const QuinticKind all_kinds[] = {QuinticKind::A11, QuinticKind::B11, QuinticKind::C11,
                                 QuinticKind::D11, QuinticKind::F11, QuinticKind::A12,
                                 QuinticKind::B12, QuinticKind::C12, QuinticKind::D12,
                                 QuinticKind::F12};
}

TEST_CASE("closed-form values in d = 1") {
    const auto m = [](int j) { return ModeIndex::d1(j); };
    CHECK(nf5_coefficient(QuinticKind::A11, m(1), m(1), m(1)) ==
          doctest::Approx(1.0 / 256.0).epsilon(1e-15));
    CHECK(nf5_coefficient(QuinticKind::F12, m(1), m(1), m(1)) ==
          doctest::Approx(-1.0 / 32.0).epsilon(1e-15));
    CHECK(nf5_coefficient(QuinticKind::B12, m(1), m(1), m(2)) ==
          doctest::Approx(11.0 / 64.0).epsilon(1e-15));
    CHECK(nf5_coefficient(QuinticKind::C12, m(2), m(1), m(3)) ==
          doctest::Approx(3.0 / 32.0).epsilon(1e-15));
    // |j| = |l| kills c11
    CHECK(nf5_coefficient(QuinticKind::C11, m(2), m(-2), m(3)) == 0.0);
    CHECK(nf5_coefficient(QuinticKind::B11, m(1), m(2), m(3)) == 0.0);
    CHECK(nf5_coefficient(QuinticKind::D11, m(1), m(2), m(3)) == 0.0);

    CHECK(nf5_coefficient_exact(QuinticKind::A11, 1, 1, 1) == Rational(1, 256));
    CHECK(nf5_coefficient_exact(QuinticKind::F12, 1, 1, 1) == Rational(-1, 32));
    CHECK(nf5_coefficient_exact(QuinticKind::B12, 1, 1, 2) == Rational(11, 64));
    CHECK(nf5_coefficient_exact(QuinticKind::C12, 2, 1, 3) == Rational(3, 32));
}

TEST_CASE("0/0 convention leaves no NaN or Inf") {
    for (int j = 1; j <= 6; ++j)
        for (int l = 1; l <= 6; ++l)
            for (int k = 1; k <= 6; ++k)
                for (auto kind : all_kinds)
                    CHECK(std::isfinite(
                        nf5_coefficient(kind, ModeIndex::d1(j), ModeIndex::d1(l), ModeIndex::d1(k))));
    // d = 2 resonant-looking triples
    for (auto kind : all_kinds) {
        CHECK(std::isfinite(nf5_coefficient(kind, ModeIndex::d2(2, 1), ModeIndex::d2(1, 2),
                                            ModeIndex::d2(3, 0))));
        CHECK(std::isfinite(nf5_coefficient(kind, ModeIndex::d2(3, 3), ModeIndex::d2(2, 1),
                                            ModeIndex::d2(2, 0))));
    }
}

TEST_CASE("exact and floating paths agree in d = 1") {
    for (int j = 1; j <= 12; ++j)
        for (int l = 1; l <= 12; ++l)
            for (int k = 1; k <= 12; ++k)
                for (auto kind : all_kinds) {
                    const double num = nf5_coefficient(kind, ModeIndex::d1(j), ModeIndex::d1(l),
                                                       ModeIndex::d1(k));
                    const double exact = nf5_coefficient_exact(kind, j, l, k).to_double();
                    CHECK(std::abs(num - exact) <= 1e-15 * std::max(1.0, std::abs(exact)));
                }
}

TEST_CASE("divisor report on the sharp triple") {
    // (|k|^2, |j|^2, |l|^2) = (4, 5, 18): p = (4+5-18)^2 - 4*4*5 = 1
    const auto k = ModeIndex::d2(2, 0), j = ModeIndex::d2(2, 1), l = ModeIndex::d2(3, 3);
    const auto rep = divisor_report(j, l, k);
    CHECK(rep.p == 1);
    CHECK(!rep.resonant);

    // roles |k|^2 = 18, |j|^2 = 4, |l|^2 = 5: divisor sqrt(18)-2-sqrt(5) ~ 0.00655
    const auto rep2 = divisor_report(ModeIndex::d2(2, 0), ModeIndex::d2(2, 1), ModeIndex::d2(3, 3));
    CHECK(rep2.div_pmm == doctest::Approx(std::sqrt(18.0) - 2.0 - std::sqrt(5.0)).epsilon(1e-12));
    CHECK(1.0 / rep2.div_pmm == doctest::Approx(153.0).epsilon(0.01));
    CHECK(rep2.ott4_ok);
    CHECK(rep2.ott4_ratio <= 27.0);

    // exact resonance: d = 1, k = 3 = 2 + 1
    const auto res = divisor_report(ModeIndex::d1(2), ModeIndex::d1(1), ModeIndex::d1(3));
    CHECK(res.zero_pmm);
    CHECK(res.resonant);
    CHECK(res.div_pmm == 0.0);
}

TEST_CASE("divisor bounds and integer p over a d = 2 scan") {
    const auto classes = radius_classes(2, 400);  // radii <= 20
    std::map<std::int64_t, ModeIndex> rep_of;
    for (const auto& m : lattice_ball(2, 400)) rep_of.try_emplace(m.radius2(), m);
    bool bounds_ok = true, p_ok = true;
    for (auto j2 : classes)
        for (auto l2 : classes)
            for (auto k2 : classes) {
                const auto rep = divisor_report(rep_of.at(j2), rep_of.at(l2), rep_of.at(k2));
                bounds_ok = bounds_ok && rep.ott1_ok && rep.ott4_ok;
                if (!rep.zero_ppm && !rep.zero_pmp && !rep.zero_pmm)
                    p_ok = p_ok && std::abs(rep.p) >= 1;
            }
    CHECK(bounds_ok);
    CHECK(p_ok);
}

TEST_CASE("denominator bound for close radii") {
    // 0 < ||a|-|b|| < 1  =>  1/||a|-|b|| <= |a|+|b|, radii <= 50 in d = 2
    const auto classes = radius_classes(2, 2500);
    for (auto a2 : classes)
        for (auto b2 : classes) {
            if (a2 == b2) continue;
            const double ra = std::sqrt(double(a2)), rb = std::sqrt(double(b2));
            const double gap = std::abs(ra - rb);
            if (gap >= 1.0) continue;
            CHECK(1.0 / gap <= (ra + rb) * (1.0 + 1e-12));
        }
}

TEST_CASE("sharpness triples") {
    const auto triples = sharpness_triples(4);
    REQUIRE(triples.size() == 4);
    CHECK(triples[0].n == 4);
    CHECK(triples[1].n == 40);
    CHECK(triples[2].n == 3280);
    CHECK(triples[3].n == 21523360);
    for (const auto& t : triples) {
        CHECK(t.p == 1);
        CHECK(t.rep_n.a * t.rep_n.a + t.rep_n.b * t.rep_n.b == t.n);
        CHECK(t.rep_n1.a * t.rep_n1.a + t.rep_n1.b * t.rep_n1.b == t.n + 1);
        CHECK(t.rep_4n2.a * t.rep_4n2.a + t.rep_4n2.b * t.rep_4n2.b == 4 * t.n + 2);
    }
    // first triple (4, 5, 18) = (2^2+0^2, 2^2+1^2, 3^2+3^2)
    CHECK(triples[0].rep_4n2.a == 3);
    CHECK(triples[0].rep_4n2.b == 3);
    CHECK_THROWS(sharpness_triples(0));
}

TEST_CASE("rational arithmetic guards") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    const Rational big(INT64_MAX - 1, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK((Rational(2, 4) == Rational(1, 2)));
    CHECK((Rational(1, -2) == Rational(-1, 2)));
    CHECK((Rational(1, 3) + Rational(1, 6) == Rational(1, 2)));
}

TEST_CASE("divisor report in d = 3") {
    // the lemma covers every d >= 2; check a resonance-adjacent triple
    const auto rep =
        divisor_report(ModeIndex::d3(1, 1, 1), ModeIndex::d3(2, 0, 0), ModeIndex::d3(2, 2, 1));
    CHECK(rep.ott1_ok);
    CHECK(rep.ott4_ok);
    const auto res = divisor_report(ModeIndex::d3(1, 0, 0), ModeIndex::d3(0, 2, 0),
                                    ModeIndex::d3(3, 0, 0));  // |k| = |j| + |l| exactly
    CHECK(res.zero_pmm);
    CHECK(res.p == 0);
}

TEST_CASE("coefficient bounds") {
    // d = 1: a11 ratios <= 1 over |j|,|l|,|k| <= 20
    for (int j = 1; j <= 20; ++j)
        for (int l = 1; l <= 20; ++l)
            for (int k = 1; k <= 20; ++k) {
                const auto b = coefficient_bound_check(QuinticKind::A11, ModeIndex::d1(j),
                                                       ModeIndex::d1(l), ModeIndex::d1(k));
                CHECK(b.ratio <= 1.0);
            }
    // f12 is controlled by its own denominator
    for (int j = 1; j <= 10; ++j)
        for (int k = 1; k <= 10; ++k) {
            const double f = std::abs(
                nf5_coefficient(QuinticKind::F12, ModeIndex::d1(j), ModeIndex::d1(3), ModeIndex::d1(k)));
            CHECK(f <= (3.0 / 64.0) * j * 3.0 * (j + 3.0) + 1e-15);
        }
    // randomized d = 2 sample for d12
    std::mt19937_64 rng(2024);
    const auto ball = lattice_ball(2, 900);
    std::uniform_int_distribution<size_t> pick(0, ball.size() - 1);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto b = coefficient_bound_check(QuinticKind::D12, ball[pick(rng)], ball[pick(rng)],
                                               ball[pick(rng)]);
        CHECK(b.ok);
    }
}
