#include "kirch/transforms.hpp"

#include <cmath>

namespace kirch {

namespace {

const cd I(0.0, 1.0);

double m0_for(int dim) { return RegularityParams::for_dimension(dim).m0; }
double m1_for(int dim) { return RegularityParams::for_dimension(dim).m1; }

}  // namespace

FieldPair phi1_forward(const FieldPair& qp) {
    return FieldPair(lambda_pow(qp.first, -0.5), lambda_pow(qp.second, 0.5));
}

FieldPair phi1_inverse(const FieldPair& uv) {
    return FieldPair(lambda_pow(uv.first, 0.5), lambda_pow(uv.second, -0.5));
}

FieldPair phi2_forward(const FieldPair& fg) {
    const double r = 1.0 / std::sqrt(2.0);
    return FieldPair(cd(r, 0.0) * (fg.first + fg.second),
                     cd(0.0, -r) * (fg.first - fg.second));
}

FieldPair phi2_inverse(const FieldPair& qp) {
    const double r = 1.0 / std::sqrt(2.0);
    return FieldPair(cd(r, 0.0) * qp.first + cd(0.0, r) * qp.second,
                     cd(r, 0.0) * qp.first + cd(0.0, -r) * qp.second);
}

FieldPair phi3_forward(const FieldPair& etapsi) {
    const double r = rho_eval(p_functional(etapsi));
    const double scale = 1.0 / std::sqrt(1.0 - r * r);
    return FieldPair(cd(scale, 0.0) * (etapsi.first + cd(r, 0.0) * etapsi.second),
                     cd(scale, 0.0) * (cd(r, 0.0) * etapsi.first + etapsi.second));
}

FieldPair phi3_inverse(const FieldPair& fg) {
    const double r = rho_eval(q_functional(fg));
    const double scale = 1.0 / std::sqrt(1.0 - r * r);
    return FieldPair(cd(scale, 0.0) * (fg.first - cd(r, 0.0) * fg.second),
                     cd(scale, 0.0) * (fg.second - cd(r, 0.0) * fg.first));
}

SpectralField bilinear_apply(BilinearKernelKind kind, const SpectralField& u,
                             const SpectralField& v, const SpectralField& h) {
    if (u.dim() != v.dim() || u.dim() != h.dim())
        throw std::invalid_argument("bilinear_apply: dimension mismatch");
    const auto agg = u.sphere_pair_sums(v);
    SpectralField out(h.dim());
    for (const auto& [k, hk] : h.coeffs()) {
        const std::int64_t k2 = k.radius2();
        const double rk = std::sqrt(double(k2));
        cd factor(0.0, 0.0);
        for (const auto& [j2, s] : agg) {
            if (kind == BilinearKernelKind::A12 && j2 == k2) continue;
            const double rj = std::sqrt(double(j2));
            const double denom = (kind == BilinearKernelKind::A12) ? (rj - rk) : (rj + rk);
            factor += s * (double(j2) / (8.0 * denom));
        }
        out.set(k, factor * hk);
    }
    return out;
}

FieldPair m4_apply(const FieldPair& wz, const FieldPair& ab) {
    const auto& w = wz.first;
    const auto& z = wz.second;
    return FieldPair(bilinear_apply(BilinearKernelKind::A12, w, w, ab.second) +
                         bilinear_apply(BilinearKernelKind::C12, z, z, ab.second),
                     bilinear_apply(BilinearKernelKind::A12, z, z, ab.first) +
                         bilinear_apply(BilinearKernelKind::C12, w, w, ab.first));
}

namespace {

FieldPair e4_apply(const FieldPair& wz, const FieldPair& ab) {
    const auto& w = wz.first;
    const auto& z = wz.second;
    const auto& a = ab.first;
    const auto& b = ab.second;
    SpectralField first = cd(2.0, 0.0) * (bilinear_apply(BilinearKernelKind::A12, w, a, z) +
                                          bilinear_apply(BilinearKernelKind::C12, z, b, z));
    SpectralField second = cd(2.0, 0.0) * (bilinear_apply(BilinearKernelKind::C12, w, a, w) +
                                           bilinear_apply(BilinearKernelKind::A12, z, b, w));
    return FieldPair(std::move(first), std::move(second));
}

}  // namespace

FieldPair k4_apply(const FieldPair& wz, const FieldPair& ab) {
    return m4_apply(wz, ab) + e4_apply(wz, ab);
}

FieldPair phi4_forward(const FieldPair& wz) { return wz + m4_apply(wz, wz); }

FieldPair phi4_differential_apply(const FieldPair& wz, const FieldPair& tangent) {
    return tangent + k4_apply(wz, tangent);
}

namespace {

// Shared Picard solver for (I + N(x))x = target with N of homogeneity >= 2.
FieldPair invert_by_picard(const FieldPair& target,
                           const std::function<FieldPair(const FieldPair&)>& correction,
                           double norm_s, const char* what) {
    FieldPair x = target;
    const double scale = pair_norm(target, norm_s);
    const double tol = 1e-14 + 1e-13 * scale;
    for (int it = 0; it < 200; ++it) {
        const FieldPair next = target - correction(x);
        const double step = pair_norm(next - x, norm_s);
        x = next;
        if (step <= tol) return x;
    }
    throw std::runtime_error(std::string(what) + ": fixed point did not converge");
}

}  // namespace

FieldPair phi4_inverse(const FieldPair& etapsi) {
    const double m0 = m0_for(etapsi.dim());
    if (pair_norm(etapsi, m0) > 0.25 + 1e-12)
        throw std::invalid_argument("phi4_inverse: ||eta||_{m0} must be <= 1/4");
    return invert_by_picard(
        etapsi, [](const FieldPair& x) { return m4_apply(x, x); }, m0, "phi4_inverse");
}

FieldPair neumann_inverse_apply(const std::function<FieldPair(const FieldPair&)>& k_applier,
                                const FieldPair& rhs, double contraction_margin) {
    if (contraction_margin >= 1.0)
        throw std::invalid_argument("neumann_inverse_apply: contraction margin >= 1");
    const double rhs_norm = pair_norm(rhs, 0.0);
    if (rhs_norm == 0.0) return rhs;
    FieldPair sum = rhs;
    FieldPair term = rhs;
    double prev = rhs_norm;
    for (int n = 1; n <= 400; ++n) {
        term = cd(-1.0, 0.0) * k_applier(term);
        const double tn = pair_norm(term, 0.0);
        if (tn == 0.0) return sum;
        if (tn >= 0.99 * prev)
            throw std::runtime_error("neumann_inverse_apply: series is not decaying");
        sum += term;
        if (tn <= 1e-15 * rhs_norm) return sum;
        prev = tn;
    }
    throw std::runtime_error("neumann_inverse_apply: term cap exceeded");
}

namespace {

// G[x1,x2,x3,x4]h: double sum over radius classes of the two slot aggregates,
// weighted by the kernel table, acting diagonally on h.
SpectralField quad_apply(QuinticKind kind, const SpectralField& x1, const SpectralField& x2,
                         const SpectralField& x3, const SpectralField& x4,
                         const SpectralField& h) {
    SpectralField out(h.dim());
    if (kind == QuinticKind::B11 || kind == QuinticKind::D11) return out;
    const auto agg_j = x1.sphere_pair_sums(x2);
    const auto agg_l = x3.sphere_pair_sums(x4);
    for (const auto& [k, hk] : h.coeffs()) {
        const std::int64_t k2 = k.radius2();
        cd factor(0.0, 0.0);
        for (const auto& [j2, sj] : agg_j)
            for (const auto& [l2, sl] : agg_l)
                factor += sj * sl * nf5_coefficient_r2(kind, j2, l2, k2);
        out.set(k, factor * hk);
    }
    return out;
}

// First row of M(u,v) applied to (alpha, beta); the second row is the same
// expression under (u <-> v, alpha <-> beta).
SpectralField m5_row(const SpectralField& u, const SpectralField& v, const SpectralField& a,
                     const SpectralField& b) {
    SpectralField out = quad_apply(QuinticKind::A11, u, u, u, u, a);
    out += quad_apply(QuinticKind::C11, u, u, v, v, a);
    out += quad_apply(QuinticKind::F11, v, v, v, v, a);
    out += quad_apply(QuinticKind::A12, u, u, u, u, b);
    out += quad_apply(QuinticKind::B12, u, u, u, v, b);
    out += quad_apply(QuinticKind::C12, u, u, v, v, b);
    out += quad_apply(QuinticKind::D12, u, v, v, v, b);
    out += quad_apply(QuinticKind::F12, v, v, v, v, b);
    return out;
}

SpectralField e5_row(const SpectralField& u, const SpectralField& v, const SpectralField& a,
                     const SpectralField& b) {
    const cd two(2.0, 0.0);
    SpectralField out = two * quad_apply(QuinticKind::A11, u, a, u, u, u);
    out += two * quad_apply(QuinticKind::A11, u, u, u, a, u);
    out += two * quad_apply(QuinticKind::C11, u, a, v, v, u);
    out += two * quad_apply(QuinticKind::C11, u, u, v, b, u);
    out += two * quad_apply(QuinticKind::F11, v, b, v, v, u);
    out += two * quad_apply(QuinticKind::F11, v, v, v, b, u);
    out += two * quad_apply(QuinticKind::A12, u, a, u, u, v);
    out += two * quad_apply(QuinticKind::A12, u, u, u, a, v);
    out += two * quad_apply(QuinticKind::B12, u, a, u, v, v);
    out += quad_apply(QuinticKind::B12, u, u, a, v, v);
    out += quad_apply(QuinticKind::B12, u, u, u, b, v);
    out += two * quad_apply(QuinticKind::C12, u, a, v, v, v);
    out += two * quad_apply(QuinticKind::C12, u, u, v, b, v);
    out += quad_apply(QuinticKind::D12, a, v, v, v, v);
    out += quad_apply(QuinticKind::D12, u, b, v, v, v);
    out += two * quad_apply(QuinticKind::D12, u, v, v, b, v);
    out += two * quad_apply(QuinticKind::F12, v, b, v, v, v);
    out += two * quad_apply(QuinticKind::F12, v, v, v, b, v);
    return out;
}

}  // namespace

SpectralField quintic_operator_apply(QuinticKind kind, const SpectralField& x1,
                                     const SpectralField& x2, const SpectralField& x3,
                                     const SpectralField& x4, const SpectralField& h) {
    return quad_apply(kind, x1, x2, x3, x4, h);
}

FieldPair m5_apply(const FieldPair& uv, const FieldPair& ab) {
    return FieldPair(m5_row(uv.first, uv.second, ab.first, ab.second),
                     m5_row(uv.second, uv.first, ab.second, ab.first));
}

FieldPair e5_apply(const FieldPair& uv, const FieldPair& ab) {
    return FieldPair(e5_row(uv.first, uv.second, ab.first, ab.second),
                     e5_row(uv.second, uv.first, ab.second, ab.first));
}

FieldPair k5_apply(const FieldPair& uv, const FieldPair& ab) {
    return m5_apply(uv, ab) + e5_apply(uv, ab);
}

FieldPair phi5_forward(const FieldPair& uv) { return uv + m5_apply(uv, uv); }

FieldPair phi5_differential_apply(const FieldPair& uv, const FieldPair& tangent) {
    return tangent + k5_apply(uv, tangent);
}

FieldPair phi5_inverse(const FieldPair& wz, double delta) {
    const double m1 = m1_for(wz.dim());
    if (pair_norm(wz, m1) > delta + 1e-12)
        throw std::invalid_argument("phi5_inverse: ||w||_{m1} must be <= delta");
    return invert_by_picard(
        wz, [](const FieldPair& x) { return m5_apply(x, x); }, m1, "phi5_inverse");
}

FieldPair phi_next_forward(const FieldPair& uv) {
    return phi3_forward(phi4_forward(phi5_forward(uv)));
}

FieldPair phi_next_inverse(const FieldPair& fg, double delta) {
    return phi5_inverse(phi4_inverse(phi3_inverse(fg)), delta);
}

RealPair compose_full(const FieldPair& uv) {
    const FieldPair phys = phi1_forward(phi2_forward(phi_next_forward(uv)));
    return RealPair{phys.first, phys.second};
}

FieldPair compose_full_inverse(const RealPair& physical, double delta) {
    const FieldPair qp = phi1_inverse(FieldPair(physical.position, physical.velocity));
    return phi_next_inverse(phi2_inverse(qp), delta);
}

}  // namespace kirch
