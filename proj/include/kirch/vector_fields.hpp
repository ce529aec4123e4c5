#ifndef KIRCH_VECTOR_FIELDS_HPP
#define KIRCH_VECTOR_FIELDS_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "kirch/transforms.hpp"

namespace kirch {

// One right-hand side split into labeled homogeneity parts. `total` is the
// full field computed through the exact (non-Taylor) route; when the
// decomposition carries a scalar weight (the diagonal phase factor), it is
// stored in scalar_p and the defining combination is
//   total = (1 + scalar_p)(D1 + X3p) + <higher parts>.
struct FieldDecomposition {
    std::map<std::string, FieldPair> parts;
    double scalar_p = 0.0;
    FieldPair total;
};

// d/dt (u, v) = (v, Delta u (1 + <Lambda u, Lambda u>)).
RealPair rhs_physical(const RealPair& state);

// The cubic complex-diagonal system for (f, g).
FieldPair rhs_fg(const FieldPair& fg);

// The order-one diagonal system for (eta, psi).
FieldPair rhs_eta_psi(const FieldPair& etapsi);

// X = D1 + Dge3 + B3 + Rge5 with the exact sum identity.
FieldDecomposition decompose_eta_psi(const FieldPair& etapsi);

// Diagonal linear part (-i Lambda w, +i Lambda z).
FieldPair d1_apply(const FieldPair& p);

// Bounded cubic off-diagonal term and its analytic differential.
FieldPair b3_apply(const FieldPair& p);
FieldPair b3_differential(const FieldPair& p, const FieldPair& tangent);

// Resonant cubic term: component 1 at k is -(i/4) (sum_{|j|=|k|} w_j w_{-j} |j|^2) z_k.
FieldPair x3_plus(const FieldPair& wz);

// The scalar phase factor P(w,z) = sqrt(1 + 2 P(Phi4(w,z))) - 1.
double scalar_p_of(const FieldPair& wz);

enum class YTermKind { Y4_11, Y2_11, Y0_11, Y4_12, Y3_12, Y2_12, Y1_12, Y0_12 };

// One collected quintic monomial family (contribution to the first component).
// Symmetrized variants exist for Y4_11, Y0_11, Y4_12, Y0_12 only.
SpectralField y_term(YTermKind kind, const FieldPair& wz, bool symmetrized = false);

// Quintic part of the once-normalized field, assembled from the eight
// collected terms; the second component follows from the real structure.
FieldPair x5_plus(const FieldPair& wz);

// Independent assembly: -K X3+ - 3 Q B3 + B3'(w,z) M(w,z)(w,z).
FieldPair x5_plus_operator_route(const FieldPair& wz);

// Exact once-normalized field (I + K)^{-1} X(Phi4(w,z)); needs ||w||_{m0} < 1/2.
FieldPair x_plus_exact(const FieldPair& wz);

// X+ = (1 + P)(D1 + X3+) + X5+ + Xge7+, the tail obtained by difference.
// Parts: D1, X3p, PX3p, X5p, Xge7p.
FieldDecomposition x_plus_full(const FieldPair& wz);

// Resonant quintic core of the twice-normalized field (four surviving sums).
FieldPair w5(const FieldPair& uv);

// Exact twice-normalized field (I + K)^{-1} X+(Phi5(u,v)); needs ||u||_{m1} <= delta.
FieldPair w_exact(const FieldPair& uv, double delta = 0.05);

// W = (1 + P(Phi5(u,v)))(D1 + X3+) + W5 + Wge7. Parts: D1, X3p, PX3p, W5, Wge7.
FieldDecomposition w_full(const FieldPair& uv, double delta = 0.05);

// The homogeneity >= 7 tail by the rearranged operator formula (independent
// of the by-difference route in w_full).
FieldPair w_geq7(const FieldPair& uv, double delta = 0.05);

struct Z6Values {
    double by_pairing = 0.0;
    double by_resonant_sum = 0.0;
};

// d/dt ||u||_s^2 contribution of W5, computed both as the Sobolev pairing
// against W5 and as the closed resonant sum with kernel
// |j||l||k| (|k|^{2s} - |j|^{2s} - |l|^{2s}) over |k| = |j| + |l|.
Z6Values energy_rate_z6_both(const FieldPair& uv, double s);
double energy_rate_z6(const FieldPair& uv, double s);

struct EnergyRates {
    double z6 = 0.0;
    double z_ge8 = 0.0;
};

EnergyRates energy_rate_total(const FieldPair& uv, double s, double delta = 0.05);

// Labeled coefficient tables, one field-serialization block per part
// component, preceded by "# part <label> <1|2>" marker lines.
void write_decomposition(std::ostream& os, const FieldDecomposition& dec);

}  // namespace kirch

#endif
