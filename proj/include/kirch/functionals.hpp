#ifndef KIRCH_FUNCTIONALS_HPP
#define KIRCH_FUNCTIONALS_HPP

#include "kirch/field.hpp"

namespace kirch {

// Fourier multiplier |D|^sigma: coefficient at j is scaled by |j|^sigma.
// Invertible for every real sigma since the zero mode does not exist.
SpectralField lambda_pow(const SpectralField& field, double sigma);

// <w, h> = sum_j w_j h_{-j}  (the integral of the product, normalized measure).
cd pairing(const SpectralField& w, const SpectralField& h);

// ||u||_s = sqrt( sum_j |u_j|^2 |j|^{2s} ), s >= 0.
double sobolev_norm(const SpectralField& field, double s);

inline double pair_norm(const FieldPair& p, double s) { return sobolev_norm(p.first, s); }

// rho(x) = -x / (1 + x + sqrt(1+2x)) on x >= 0; values in (-1, 0].
double rho_eval(double x);

// Inverse of x -> x sqrt(1+2x): safeguarded Newton, residual <= 1e-14 relative.
double phi_inverse_eval(double y);

// Q(eta,psi) = (1/4) < Lambda(eta+psi), eta+psi >; real and >= 0 on c.c. pairs.
double q_functional(const FieldPair& pair);

// P = phi(Q).
double p_functional(const FieldPair& pair);

enum class HamiltonianKind { physical, h1, h2, h3 };

// physical: H(u,v) = 1/2<v,v> + 1/2<Lu,Lu> + 1/4<Lu,Lu>^2
// h1:       H(q,p) = 1/2<Lp,p> + 1/2<Lq,q> + 1/4<Lq,q>^2
double hamiltonian(HamiltonianKind kind, const RealPair& state);

// h2: H(f,g) = <Lf,g> + (1/16)<L(f+g),f+g>^2
// h3: H(eta,psi) = -P/(2 sqrt(1+2P)) (<L eta,eta> + <L psi,psi>)
//                  + (1+P)/sqrt(1+2P) <L eta,psi> + P^2,   P = P(eta,psi)
double hamiltonian(HamiltonianKind kind, const FieldPair& state);

}  // namespace kirch

#endif
