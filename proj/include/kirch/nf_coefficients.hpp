#ifndef KIRCH_NF_COEFFICIENTS_HPP
#define KIRCH_NF_COEFFICIENTS_HPP

#include <vector>

#include "kirch/modes.hpp"
#include "kirch/rational.hpp"

namespace kirch {

// Kernel families of the quintic normal-form transformation. B11 and D11 are
// identically zero: the quintic field contains no monomials of their type.
enum class QuinticKind { A11, B11, C11, D11, F11, A12, B12, C12, D12, F12 };

const char* quintic_kind_name(QuinticKind kind);

// Closed-form kernel value at radii (|j|, |l|, |k|), with every
// Kronecker-gated term following the 0/0 = 0 convention. Radius equalities
// and the resonances |k| = |j| +- |l| are decided exactly on squared radii.
double nf5_coefficient(QuinticKind kind, const ModeIndex& j, const ModeIndex& l,
                       const ModeIndex& k);

// Same kernel, addressed by squared radii (the kernels depend on radii only;
// sums over mode triples reduce to sums over radius classes).
double nf5_coefficient_r2(QuinticKind kind, std::int64_t j2, std::int64_t l2, std::int64_t k2);

// Exact-rational evaluation for d = 1 (integer radii rj, rl, rk >= 1).
Rational nf5_coefficient_exact(QuinticKind kind, std::int64_t rj, std::int64_t rl,
                               std::int64_t rk);

struct DivisorReport {
    ModeIndex j, l, k;
    // |k|+|j|+|l|, |k|+|j|-|l|, |k|-|j|+|l|, |k|-|j|-|l|
    double div_ppp = 0, div_ppm = 0, div_pmp = 0, div_pmm = 0;
    // exact zero flags for the last three (the first is always positive)
    bool zero_ppm = false, zero_pmp = false, zero_pmm = false;
    bool resonant = false;
    std::int64_t p = 0;  // (|k|^2+|j|^2-|l|^2)^2 - 4|k|^2|j|^2, exact integer
    // 1/||k|-|j|+|l|| <= 27 |j|^2 |l|        (vacuous when the divisor is zero)
    bool ott1_ok = true;
    double ott1_ratio = 0;  // (1/|div_pmp|) / (|j|^2 |l|)
    // 1/||k|-|j|-|l|| <= 27 |j| |l| (|j|+|l|)
    bool ott4_ok = true;
    double ott4_ratio = 0;
};

DivisorReport divisor_report(const ModeIndex& j, const ModeIndex& l, const ModeIndex& k);

struct TwoSquares {
    std::int64_t a = 0, b = 0;
};

// One member of the family (n, n+1, 4n+2) realizing |p| = 1 on the lattice.
struct SharpnessTriple {
    std::int64_t n = 0;
    TwoSquares rep_n, rep_n1, rep_4n2;
    std::int64_t p = 0;
};

// Starting from n = 4 and iterating n -> 2n^2 + 2n. Each entry in a triple is
// a sum of two squares, so the triple is realized by squared radii of d = 2
// lattice points. Count is capped at 5 to keep the witness search in range.
std::vector<SharpnessTriple> sharpness_triples(int count);

struct BoundCheck {
    bool ok = false;
    double ratio = 0;  // |coefficient| / (|j|^4|l|^2 + |j|^2|l|^4), or /(|j|^2|l|^2) in d = 1
};

// Checks |coefficient| against the polynomial envelope with working constant 27.
BoundCheck coefficient_bound_check(QuinticKind kind, const ModeIndex& j, const ModeIndex& l,
                                   const ModeIndex& k);

}  // namespace kirch

#endif
