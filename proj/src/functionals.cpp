#include "kirch/functionals.hpp"

#include <cmath>

namespace kirch {

SpectralField lambda_pow(const SpectralField& field, double sigma) {
    SpectralField out(field.dim());
    for (const auto& [j, v] : field.coeffs()) out.set(j, v * std::pow(j.radius2(), 0.5 * sigma));
    return out;
}

cd pairing(const SpectralField& w, const SpectralField& h) {
    if (w.dim() != h.dim()) throw std::invalid_argument("pairing: dimension mismatch");
    cd sum(0.0, 0.0);
    for (const auto& [j, v] : w.coeffs()) sum += v * h.at(j.negated());
    return sum;
}

double sobolev_norm(const SpectralField& field, double s) {
    if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    double sum = 0.0;
    for (const auto& [j, v] : field.coeffs()) sum += std::norm(v) * std::pow(j.radius2(), s);
    return std::sqrt(sum);
}

double rho_eval(double x) {
    if (x < 0) throw std::domain_error("rho_eval: argument must be >= 0");
    return -x / (1.0 + x + std::sqrt(1.0 + 2.0 * x));
}

double phi_inverse_eval(double y) {
    if (y < 0) throw std::domain_error("phi_inverse_eval: argument must be >= 0");
    if (y == 0.0) return 0.0;
    const auto F = [](double x) { return x * std::sqrt(1.0 + 2.0 * x); };
    // F is strictly increasing with F(0) = 0, F(y) >= y, so the root is in [0, y].
    double lo = 0.0, hi = y, x = y / (1.0 + y);
    for (int it = 0; it < 100; ++it) {
        const double r = F(x) - y;
        if (std::abs(r) <= 1e-14 * y) return x;
        if (r > 0)
            hi = x;
        else
            lo = x;
        const double dF = (1.0 + 3.0 * x) / std::sqrt(1.0 + 2.0 * x);
        double next = x - r / dF;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    throw std::runtime_error("phi_inverse_eval: no convergence within iteration cap");
}

double q_functional(const FieldPair& pair) {
    const SpectralField sum = pair.first + pair.second;
    return 0.25 * pairing(lambda_pow(sum, 1.0), sum).real();
}

double p_functional(const FieldPair& pair) { return phi_inverse_eval(q_functional(pair)); }

double hamiltonian(HamiltonianKind kind, const RealPair& state) {
    const auto& u = state.position;
    const auto& v = state.velocity;
    switch (kind) {
        case HamiltonianKind::physical: {
            const double ke = pairing(v, v).real();
            const double grad2 = pairing(lambda_pow(u, 1.0), lambda_pow(u, 1.0)).real();
            return 0.5 * ke + 0.5 * grad2 + 0.25 * grad2 * grad2;
        }
        case HamiltonianKind::h1: {
            const double lp = pairing(lambda_pow(v, 1.0), v).real();
            const double lq = pairing(lambda_pow(u, 1.0), u).real();
            return 0.5 * lp + 0.5 * lq + 0.25 * lq * lq;
        }
        default:
            throw std::invalid_argument("hamiltonian: this kind takes a complex-conjugate pair");
    }
}

double hamiltonian(HamiltonianKind kind, const FieldPair& state) {
    switch (kind) {
        case HamiltonianKind::h2: {
            const cd lin = pairing(lambda_pow(state.first, 1.0), state.second);
            const SpectralField sum = state.first + state.second;
            const cd q4 = pairing(lambda_pow(sum, 1.0), sum);
            return (lin + (1.0 / 16.0) * q4 * q4).real();
        }
        case HamiltonianKind::h3: {
            const double P = p_functional(state);
            const double root = std::sqrt(1.0 + 2.0 * P);
            const cd lee = pairing(lambda_pow(state.first, 1.0), state.first);
            const cd lpp = pairing(lambda_pow(state.second, 1.0), state.second);
            const cd lep = pairing(lambda_pow(state.first, 1.0), state.second);
            const cd value = (-P / (2.0 * root)) * (lee + lpp) + ((1.0 + P) / root) * lep + P * P;
            return value.real();
        }
        default:
            throw std::invalid_argument("hamiltonian: this kind takes a real (position, velocity) state");
    }
}

}  // namespace kirch
