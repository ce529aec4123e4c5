#ifndef KIRCH_TRANSFORMS_HPP
#define KIRCH_TRANSFORMS_HPP

#include <functional>

#include "kirch/field.hpp"
#include "kirch/functionals.hpp"
#include "kirch/nf_coefficients.hpp"

namespace kirch {

// ---- linear changes of variables -------------------------------------------

// (u, v) = (Lambda^{-1/2} q, Lambda^{1/2} p): symmetrizes the top order.
FieldPair phi1_forward(const FieldPair& qp);
FieldPair phi1_inverse(const FieldPair& uv);

// (q, p) = ((f+g)/sqrt2, (f-g)/(i sqrt2)): complex diagonalizing coordinates.
// Real (q, p) corresponds to g = conj(f).
FieldPair phi2_forward(const FieldPair& fg);
FieldPair phi2_inverse(const FieldPair& qp);

// ---- order-one diagonalization ----------------------------------------------

// (f, g) = M(eta, psi) (eta, psi) with the 2x2 scalar matrix built from
// rho(P(eta, psi)); removes Lambda from the off-diagonal coupling.
FieldPair phi3_forward(const FieldPair& etapsi);
FieldPair phi3_inverse(const FieldPair& fg);

// ---- cubic normal-form step -------------------------------------------------

enum class BilinearKernelKind { A12, C12 };

// Output coefficient at k: h_k * sum_j u_j v_{-j} |j|^2 / (8(|j| -+ |k|)),
// with the |j| = |k| sphere excluded for A12. Support stays inside supp h.
SpectralField bilinear_apply(BilinearKernelKind kind, const SpectralField& u,
                             const SpectralField& v, const SpectralField& h);

// M(w,z), E(w,z) and K = M + E of the quartic transformation.
FieldPair m4_apply(const FieldPair& wz, const FieldPair& ab);
FieldPair k4_apply(const FieldPair& wz, const FieldPair& ab);

FieldPair phi4_forward(const FieldPair& wz);
FieldPair phi4_differential_apply(const FieldPair& wz, const FieldPair& tangent);
// Fixed point of (w,z) -> (eta,psi) - M(w,z)(w,z); needs ||eta||_{m0} <= 1/4.
FieldPair phi4_inverse(const FieldPair& etapsi);

// Truncated Neumann series for (I + K)^{-1} rhs. contraction_margin is the
// caller's operator-norm surrogate and must be < 1; the series is also
// watched directly and a non-decaying tail raises an error.
FieldPair neumann_inverse_apply(const std::function<FieldPair(const FieldPair&)>& k_applier,
                                const FieldPair& rhs, double contraction_margin);

// ---- quintic normal-form step -----------------------------------------------

// One block of the degree-4 operator bundle: G[x1,x2,x3,x4]h with the kernel
// selected by kind. Swapping within either argument pair leaves the value
// unchanged (the kernels depend on radii only); B11 and D11 vanish.
SpectralField quintic_operator_apply(QuinticKind kind, const SpectralField& x1,
                                     const SpectralField& x2, const SpectralField& x3,
                                     const SpectralField& x4, const SpectralField& h);

// The degree-4 matrix operator assembled from the kernel tables (B11 = D11 = 0),
// its differential correction E, and K = M + E.
FieldPair m5_apply(const FieldPair& uv, const FieldPair& ab);
FieldPair e5_apply(const FieldPair& uv, const FieldPair& ab);
FieldPair k5_apply(const FieldPair& uv, const FieldPair& ab);

FieldPair phi5_forward(const FieldPair& uv);
FieldPair phi5_differential_apply(const FieldPair& uv, const FieldPair& tangent);
// Needs ||w||_{m1} <= delta; returns (u,v) with ||u||_{m1} <= 2 ||w||_{m1}.
FieldPair phi5_inverse(const FieldPair& wz, double delta = 0.05);

// ---- full composition ---------------------------------------------------------

// Phi_next = Phi3 o Phi4 o Phi5 (the close-to-identity tail of the chain).
FieldPair phi_next_forward(const FieldPair& uv);
FieldPair phi_next_inverse(const FieldPair& fg, double delta = 0.05);

// Phi = Phi1 o Phi2 o Phi3 o Phi4 o Phi5: normalized coordinates to the
// physical (position, velocity) state.
RealPair compose_full(const FieldPair& uv);
FieldPair compose_full_inverse(const RealPair& physical, double delta = 0.05);

}  // namespace kirch

#endif
