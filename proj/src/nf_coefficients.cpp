#include "kirch/nf_coefficients.hpp"

#include <cmath>

namespace kirch {

namespace {

// Radii and exact resonance decisions for one (j, l, k) triple. The scalar
// type S is double on the numeric path and Rational on the d = 1 exact path;
// the deltas are always decided on squared radii. Bracketed sums of fractions
// are accumulated over a common denominator, so the d = 1 floating path stays
// in exact integer arithmetic until a single final division.
template <typename S>
struct FracSum {
    S num{0}, den{1};
    void add(S a, S b) {
        num = num * b + a * den;
        den = den * b;
    }
    void add_gated(bool open, S a, S b) {
        if (open) add(a, b);
    }
};

template <typename S>
struct KernelCtx {
    S rj, rl, rk;
    bool eq_jl, eq_jk, eq_lk;
    bool k_is_j_plus_l;   // |k| = |j| + |l|
    bool k_is_j_minus_l;  // |k| = |j| - |l|

    // 0/0 = 0 convention: a Kronecker-gated fraction is zero when its gate closes.
    S eval(QuinticKind kind) const {
        const S one(1), six(6), three(3);
        const S j2 = rj * rj, l2 = rl * rl;
        switch (kind) {
            case QuinticKind::A11: {
                FracSum<S> b;
                b.add(one, rj + rk);
                b.add(one, rl + rk);
                return j2 * l2 * b.num / (S(128) * (rj + rl) * b.den);
            }
            case QuinticKind::B11:
            case QuinticKind::D11:
                return S(0);
            case QuinticKind::C11: {
                if (eq_jl) return S(0);
                // bracket = -d_lk (1-d_jk)/(rj-rk) + 1/(rj+rk) - (1-d_lk)/(rl-rk)
                FracSum<S> b;
                b.add_gated(eq_lk && !eq_jk, -one, rj - rk);
                b.add(one, rj + rk);
                b.add_gated(!eq_lk, -one, rl - rk);
                return j2 * l2 * b.num / (S(64) * (rl - rj) * b.den);
            }
            case QuinticKind::F11: {
                FracSum<S> b;
                b.add(-(S(eq_lk ? 1 : 0) + S(eq_jk ? 1 : 0)), rj + rl);
                b.add_gated(!eq_jk, one, rj - rk);
                b.add_gated(!eq_lk, one, rl - rk);
                return b.num * j2 * l2 / (S(128) * (rj + rl) * b.den);
            }
            case QuinticKind::A12:
                if (k_is_j_plus_l) return S(0);
                return three * rj * rl * (rj + rl) / (S(64) * (rk - rj - rl));
            case QuinticKind::B12: {
                if (eq_jk) return S(0);
                FracSum<S> b;
                b.add_gated(eq_jl && !eq_lk, rl, rl - rk);
                b.add(six, one);
                b.add(rl, rl + rj);
                b.add_gated(!eq_jl, rl, rl - rj);
                return j2 * rl * b.num / (S(32) * (rk - rj) * b.den);
            }
            case QuinticKind::C12:
                if (k_is_j_minus_l) return S(0);
                return three * rj * rl * (rj - rl) / (S(32) * (rk - rj + rl));
            case QuinticKind::D12: {
                FracSum<S> b;
                b.add_gated(eq_jl, -rj, rj + rk);
                b.add(-six, one);
                b.add_gated(!eq_jl, rj, rl - rj);
                b.add(-rj, rl + rj);
                return rj * l2 * b.num / (S(32) * (rk + rl) * b.den);
            }
            case QuinticKind::F12:
                return -three * rj * rl * (rj + rl) / (S(64) * (rk + rj + rl));
        }
        throw std::logic_error("unknown quintic kind");
    }
};

KernelCtx<double> make_ctx(std::int64_t j2, std::int64_t l2, std::int64_t k2) {
    KernelCtx<double> c{};
    c.rj = std::sqrt(double(j2));
    c.rl = std::sqrt(double(l2));
    c.rk = std::sqrt(double(k2));
    c.eq_jl = (j2 == l2);
    c.eq_jk = (j2 == k2);
    c.eq_lk = (l2 == k2);
    c.k_is_j_plus_l = radius_is_sum(k2, j2, l2);
    c.k_is_j_minus_l = radius_is_sum(j2, k2, l2);
    return c;
}

}  // namespace

const char* quintic_kind_name(QuinticKind kind) {
    switch (kind) {
        case QuinticKind::A11: return "a11";
        case QuinticKind::B11: return "b11";
        case QuinticKind::C11: return "c11";
        case QuinticKind::D11: return "d11";
        case QuinticKind::F11: return "f11";
        case QuinticKind::A12: return "a12";
        case QuinticKind::B12: return "b12";
        case QuinticKind::C12: return "c12";
        case QuinticKind::D12: return "d12";
        case QuinticKind::F12: return "f12";
    }
    return "?";
}

double nf5_coefficient(QuinticKind kind, const ModeIndex& j, const ModeIndex& l,
                       const ModeIndex& k) {
    return make_ctx(j.radius2(), l.radius2(), k.radius2()).eval(kind);
}

double nf5_coefficient_r2(QuinticKind kind, std::int64_t j2, std::int64_t l2, std::int64_t k2) {
    return make_ctx(j2, l2, k2).eval(kind);
}

Rational nf5_coefficient_exact(QuinticKind kind, std::int64_t rj, std::int64_t rl,
                               std::int64_t rk) {
    if (rj < 1 || rl < 1 || rk < 1)
        throw std::invalid_argument("nf5_coefficient_exact: radii must be positive integers");
    KernelCtx<Rational> c{};
    c.rj = Rational(rj);
    c.rl = Rational(rl);
    c.rk = Rational(rk);
    c.eq_jl = (rj == rl);
    c.eq_jk = (rj == rk);
    c.eq_lk = (rl == rk);
    c.k_is_j_plus_l = (rk == rj + rl);
    c.k_is_j_minus_l = (rk == rj - rl);
    return c.eval(kind);
}

DivisorReport divisor_report(const ModeIndex& j, const ModeIndex& l, const ModeIndex& k) {
    DivisorReport r;
    r.j = j;
    r.l = l;
    r.k = k;
    const std::int64_t j2 = j.radius2(), l2 = l.radius2(), k2 = k.radius2();
    const double rj = std::sqrt(double(j2)), rl = std::sqrt(double(l2)), rk = std::sqrt(double(k2));
    r.div_ppp = rk + rj + rl;
    r.div_ppm = rk + rj - rl;
    r.div_pmp = rk - rj + rl;
    r.div_pmm = rk - rj - rl;
    r.zero_ppm = radius_is_sum(l2, k2, j2);  // |l| = |k| + |j|
    r.zero_pmp = radius_is_sum(j2, k2, l2);  // |j| = |k| + |l|
    r.zero_pmm = radius_is_sum(k2, j2, l2);  // |k| = |j| + |l|
    r.resonant = r.zero_ppm || r.zero_pmp || r.zero_pmm;

    const __int128 s = (__int128)k2 + j2 - l2;
    const __int128 p = s * s - (__int128)4 * k2 * j2;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("divisor_report: p overflow");
    r.p = std::int64_t(p);

    if (!r.zero_pmp) {
        r.ott1_ratio = 1.0 / (std::abs(r.div_pmp) * double(j2) * rl);
        r.ott1_ok = r.ott1_ratio <= 27.0;
    }
    if (!r.zero_pmm) {
        r.ott4_ratio = 1.0 / (std::abs(r.div_pmm) * rj * rl * (rj + rl));
        r.ott4_ok = r.ott4_ratio <= 27.0;
    }
    return r;
}

namespace {

bool two_square_decompose(std::int64_t m, TwoSquares& out) {
    for (std::int64_t a = 0; 2 * a * a <= m; ++a) {
        const std::int64_t rest = m - a * a;
        const std::int64_t b = std::int64_t(std::llround(std::sqrt(double(rest))));
        for (std::int64_t bb = std::max<std::int64_t>(0, b - 1); bb <= b + 1; ++bb) {
            if (bb * bb == rest) {
                out = {a, bb};
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<SharpnessTriple> sharpness_triples(int count) {
    if (count < 1) throw std::invalid_argument("sharpness_triples: count must be >= 1");
    if (count > 5)
        throw std::invalid_argument("sharpness_triples: count capped at 5 (values overflow beyond)");
    std::vector<SharpnessTriple> out;
    std::int64_t n = 4;
    for (int i = 0; i < count; ++i) {
        SharpnessTriple t;
        t.n = n;
        if (!two_square_decompose(n, t.rep_n) || !two_square_decompose(n + 1, t.rep_n1) ||
            !two_square_decompose(4 * n + 2, t.rep_4n2))
            throw std::runtime_error("sharpness_triples: two-square witness not found");
        // p with roles |k|^2 = n, |j|^2 = n+1, |l|^2 = 4n+2
        const __int128 s = (__int128)n + (n + 1) - (4 * n + 2);
        const __int128 p = s * s - (__int128)4 * n * (n + 1);
        t.p = std::int64_t(p);
        out.push_back(t);
        n = 2 * n * n + 2 * n;
    }
    return out;
}

BoundCheck coefficient_bound_check(QuinticKind kind, const ModeIndex& j, const ModeIndex& l,
                                   const ModeIndex& k) {
    BoundCheck b;
    const double value = std::abs(nf5_coefficient(kind, j, l, k));
    const double j2 = double(j.radius2()), l2 = double(l.radius2());
    const double envelope = (j.dim == 1) ? j2 * l2 : j2 * j2 * l2 + j2 * l2 * l2;
    b.ratio = value / envelope;
    b.ok = b.ratio <= 27.0;
    return b;
}

}  // namespace kirch
