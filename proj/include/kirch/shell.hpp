#ifndef KIRCH_SHELL_HPP
#define KIRCH_SHELL_HPP

#include "kirch/vector_fields.hpp"

namespace kirch {

// Per-sphere aggregates S_lambda = sum_{|k|=lambda} u_k v_{-k} and
// B_lambda = sum u_k u_{-k}, keyed by exact squared radius. The radius list
// is the spectrum's own Gamma: the dynamics never activates an empty shell.
struct ShellSpectrum {
    int dim = 1;
    std::vector<std::int64_t> radius2;
    std::map<std::int64_t, double> S;
    std::map<std::int64_t, cd> B;

    double norm2(double s) const;  // sum lambda^{2s} S_lambda
};

// Distinct Euclidean lengths of nonzero lattice points with |k| <= max_radius,
// as exact squared integers.
std::vector<std::int64_t> gamma_radii(int dim, double max_radius);

ShellSpectrum project_to_shells(const FieldPair& pair);

struct ShellRhs {
    std::map<std::int64_t, double> dS;
    std::map<std::int64_t, cd> dB;
};

// The closed effective system on (S, B). The scalar phase is closed as
// P_shell = sqrt(1 + 2 phi(Q_shell)) - 1 with
// Q_shell = (1/4) sum_lambda lambda (2 S_lambda + 2 Re B_lambda); the
// dropped quartic correction only feeds homogeneity >= 7.
ShellRhs shell_rhs(const ShellSpectrum& spec);

// Quintic energy rate in shell variables (the two resonant convolution sums).
double shell_z6(const ShellSpectrum& spec, double s);

struct ShellConsistencyReport {
    std::map<std::int64_t, double> ds_full;   // from the truncated full field
    std::map<std::int64_t, double> ds_shell;  // from the closed system
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    double aggregate_s_half = 0.0;  // sum_lambda lambda dS_lambda (must vanish)
    // size of the phase terms that cancel inside the full-field projection;
    // the rounding floor of the comparison is eps times this
    double cancellation_scale = 0.0;
};

// Dual-path check: project the flow of W-without-its-tail against shell_rhs.
ShellConsistencyReport shell_consistency(const FieldPair& pair);

}  // namespace kirch

#endif
