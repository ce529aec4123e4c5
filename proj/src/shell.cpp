#include "kirch/shell.hpp"

#include <cmath>

namespace kirch {

namespace {

const cd I(0.0, 1.0);

double radius_of(std::int64_t r2) { return std::sqrt(double(r2)); }

double shell_scalar_p(const ShellSpectrum& spec) {
    double q = 0.0;
    for (std::int64_t l2 : spec.radius2) {
        const double s = spec.S.count(l2) ? spec.S.at(l2) : 0.0;
        const cd b = spec.B.count(l2) ? spec.B.at(l2) : cd(0, 0);
        q += 0.25 * radius_of(l2) * (2.0 * s + 2.0 * b.real());
    }
    if (q < 0.0) {
        if (q < -1e-12) throw std::domain_error("shell spectrum with negative energy aggregate");
        q = 0.0;
    }
    return std::sqrt(1.0 + 2.0 * phi_inverse_eval(q)) - 1.0;
}

}  // namespace

double ShellSpectrum::norm2(double s) const {
    double sum = 0.0;
    for (const auto& [l2, sl] : S) sum += std::pow(double(l2), s) * sl;
    return sum;
}

std::vector<std::int64_t> gamma_radii(int dim, double max_radius) {
    if (max_radius < 1.0) throw std::invalid_argument("gamma_radii: max_radius must be >= 1");
    const auto r2max = std::int64_t(std::floor(max_radius * max_radius + 1e-9));
    return radius_classes(dim, r2max);
}

ShellSpectrum project_to_shells(const FieldPair& pair) {
    ShellSpectrum spec;
    spec.dim = pair.dim();
    const auto uv = pair.first.sphere_pair_sums(pair.second);
    const auto uu = pair.first.sphere_pair_sums(pair.first);
    for (const auto& [l2, s] : uv) {
        if (std::abs(s.imag()) > 1e-12 * (1.0 + std::abs(s)))
            throw std::domain_error("project_to_shells: S_lambda is not real (pair not conjugate)");
        spec.radius2.push_back(l2);
        spec.S[l2] = s.real();
        const auto it = uu.find(l2);
        spec.B[l2] = it == uu.end() ? cd(0, 0) : it->second;
    }
    return spec;
}

ShellRhs shell_rhs(const ShellSpectrum& spec) {
    ShellRhs rhs;
    const double P = shell_scalar_p(spec);
    auto S = [&spec](std::int64_t l2) { return spec.S.count(l2) ? spec.S.at(l2) : 0.0; };
    auto B = [&spec](std::int64_t l2) { return spec.B.count(l2) ? spec.B.at(l2) : cd(0, 0); };

    for (std::int64_t l2 : spec.radius2) {
        const double rl = radius_of(l2);
        const cd bl = B(l2);
        const double sl = S(l2);

        cd ds(0.0, 0.0);
        cd db = -2.0 * I * (1.0 + P) * (rl + 0.25 * double(l2) * sl) * bl;

        for (std::int64_t a2 : spec.radius2) {
            const double ra = radius_of(a2);
            const cd ba = B(a2);
            // |B_alpha|^2 phase term; the kernel carries alpha^4 from the
            // |j|^2 |l|^2 factor of the underlying resonant sum
            {
                const double bracket =
                    1.0 / (ra + rl) - (a2 != l2 ? 1.0 / (ra - rl) : 0.0);
                db += (I / 16.0) * std::norm(ba) * bl * double(a2) * double(a2) * bracket;
            }
            // S_alpha S_lambda phase term
            {
                const double bracket = 6.0 + ra / (ra + rl) +
                                       (a2 != l2 ? ra / (ra - rl) : 0.0);
                db += (I / 8.0) * S(a2) * sl * bl * double(l2) * ra * bracket;
            }
            for (std::int64_t b2 : spec.radius2) {
                const double rb = radius_of(b2);
                const cd bb = B(b2);
                if (radius_is_sum(l2, a2, b2)) {  // alpha + beta = lambda
                    ds += (3.0 * I / 32.0) *
                          (ba * bb * std::conj(bl) - std::conj(ba * bb) * bl) * ra * rb * rl;
                    db += (3.0 * I / 16.0) * ba * bb * sl * rl * ra * rb;
                }
                if (radius_is_sum(a2, l2, b2)) {  // alpha - beta = lambda
                    ds += (3.0 * I / 16.0) *
                          (ba * std::conj(bb) * std::conj(bl) - std::conj(ba) * bb * bl) * ra *
                          rb * rl;
                    db += (3.0 * I / 8.0) * ba * std::conj(bb) * sl * ra * rb * rl;
                }
            }
        }
        if (std::abs(ds.imag()) > 1e-12 * (1.0 + std::abs(ds)))
            throw std::runtime_error("shell_rhs: dS_lambda is not real");
        rhs.dS[l2] = ds.real();
        rhs.dB[l2] = db;
    }
    return rhs;
}

double shell_z6(const ShellSpectrum& spec, double s) {
    auto B = [&spec](std::int64_t l2) { return spec.B.count(l2) ? spec.B.at(l2) : cd(0, 0); };
    cd sum(0.0, 0.0);
    for (std::int64_t l2 : spec.radius2) {
        const double rl = radius_of(l2);
        const double weight = rl * std::pow(double(l2), s);  // lambda^{1+2s}
        const cd bl = B(l2);
        for (std::int64_t a2 : spec.radius2)
            for (std::int64_t b2 : spec.radius2) {
                const double ra = radius_of(a2), rb = radius_of(b2);
                const cd ba = B(a2), bb = B(b2);
                if (radius_is_sum(l2, a2, b2))
                    sum += (3.0 * I / 32.0) *
                           (ba * bb * std::conj(bl) - std::conj(ba * bb) * bl) * ra * rb * weight;
                if (radius_is_sum(a2, l2, b2))
                    sum += (3.0 * I / 16.0) *
                           (ba * std::conj(bb) * std::conj(bl) - std::conj(ba) * bb * bl) * ra *
                           rb * weight;
            }
    }
    if (std::abs(sum.imag()) > 1e-12 * (1.0 + std::abs(sum)))
        throw std::runtime_error("shell_z6: value is not real");
    return sum.real();
}

ShellConsistencyReport shell_consistency(const FieldPair& pair) {
    ShellConsistencyReport rep;
    // truncated full field: (1 + P(Phi5(u,v)))(D1 + X3+) + W5
    const double P = scalar_p_of(phi5_forward(pair));
    const FieldPair wt =
        cd(1.0 + P, 0.0) * (d1_apply(pair) + x3_plus(pair)) + w5(pair);
    const auto by_k_first = wt.first.sphere_pair_sums(pair.second);
    const auto by_k_second = pair.first.sphere_pair_sums(wt.second);
    const auto shells = project_to_shells(pair);
    const auto rhs = shell_rhs(shells);
    for (std::int64_t l2 : shells.radius2)
        rep.cancellation_scale = std::max(
            rep.cancellation_scale, 2.0 * (1.0 + P) * radius_of(l2) * std::abs(shells.S.at(l2)));
    for (std::int64_t l2 : shells.radius2) {
        const cd a = (by_k_first.count(l2) ? by_k_first.at(l2) : cd(0, 0)) +
                     (by_k_second.count(l2) ? by_k_second.at(l2) : cd(0, 0));
        const double full = a.real();
        const double closed = rhs.dS.count(l2) ? rhs.dS.at(l2) : 0.0;
        rep.ds_full[l2] = full;
        rep.ds_shell[l2] = closed;
        const double err = std::abs(full - closed);
        rep.max_abs_error = std::max(rep.max_abs_error, err);
        const double scale = std::max(std::abs(full), std::abs(closed));
        if (scale > 0) rep.max_rel_error = std::max(rep.max_rel_error, err / scale);
        rep.aggregate_s_half += radius_of(l2) * closed;
    }
    return rep;
}

}  // namespace kirch
