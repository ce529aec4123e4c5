#include "kirch/vector_fields.hpp"

#include <cmath>
#include <ostream>

namespace kirch {

namespace {

const cd I(0.0, 1.0);

double m0_for(int dim) { return RegularityParams::for_dimension(dim).m0; }
double m1_for(int dim) { return RegularityParams::for_dimension(dim).m1; }

double radius_of(std::int64_t r2) { return std::sqrt(double(r2)); }

}  // namespace

RealPair rhs_physical(const RealPair& state) {
    const auto& u = state.position;
    const auto& v = state.velocity;
    const double stretch = pairing(lambda_pow(u, 1.0), lambda_pow(u, 1.0)).real();
    SpectralField dv(u.dim());
    for (const auto& [k, uk] : u.coeffs()) dv.set(k, -double(k.radius2()) * (1.0 + stretch) * uk);
    return RealPair{v, dv};
}

FieldPair rhs_fg(const FieldPair& fg) {
    SpectralField sum = fg.first + fg.second;
    const SpectralField lsum = lambda_pow(sum, 1.0);
    const cd coeff = 0.25 * I * pairing(lsum, sum);
    return FieldPair(-I * lambda_pow(fg.first, 1.0) - coeff * lsum,
                     I * lambda_pow(fg.second, 1.0) + coeff * lsum);
}

FieldPair d1_apply(const FieldPair& p) {
    return FieldPair(-I * lambda_pow(p.first, 1.0), I * lambda_pow(p.second, 1.0));
}

FieldPair b3_apply(const FieldPair& p) {
    const SpectralField le = lambda_pow(p.first, 1.0);
    const SpectralField lp = lambda_pow(p.second, 1.0);
    const cd coeff = 0.25 * I * (pairing(lp, lp) - pairing(le, le));
    return FieldPair(coeff * p.second, coeff * p.first);
}

FieldPair b3_differential(const FieldPair& p, const FieldPair& tangent) {
    const SpectralField lw = lambda_pow(p.first, 1.0);
    const SpectralField lz = lambda_pow(p.second, 1.0);
    const SpectralField la = lambda_pow(tangent.first, 1.0);
    const SpectralField lb = lambda_pow(tangent.second, 1.0);
    const cd outer = 0.5 * I * (pairing(lz, lb) - pairing(lw, la));
    const cd inner = 0.25 * I * (pairing(lz, lz) - pairing(lw, lw));
    return FieldPair(outer * p.second + inner * tangent.second,
                     outer * p.first + inner * tangent.first);
}

FieldPair rhs_eta_psi(const FieldPair& etapsi) {
    const double P = p_functional(etapsi);
    const double root = std::sqrt(1.0 + 2.0 * P);
    const SpectralField le = lambda_pow(etapsi.first, 1.0);
    const SpectralField lp = lambda_pow(etapsi.second, 1.0);
    const cd coeff = (0.25 * I / (1.0 + 2.0 * P)) * (pairing(lp, lp) - pairing(le, le));
    return FieldPair(cd(-root, 0.0) * I * le + coeff * etapsi.second,
                     cd(root, 0.0) * I * lp + coeff * etapsi.first);
}

FieldDecomposition decompose_eta_psi(const FieldPair& etapsi) {
    FieldDecomposition d;
    const double P = p_functional(etapsi);
    const double root = std::sqrt(1.0 + 2.0 * P);
    const FieldPair lin = d1_apply(etapsi);
    d.parts["D1"] = lin;
    d.parts["Dge3"] = cd(root - 1.0, 0.0) * lin;
    d.parts["B3"] = b3_apply(etapsi);
    d.parts["Rge5"] = cd(-P / (1.0 + 2.0 * P), 0.0) * 2.0 * d.parts["B3"];
    d.total = rhs_eta_psi(etapsi);
    return d;
}

FieldPair x3_plus(const FieldPair& wz) {
    const auto ww = wz.first.sphere_pair_sums(wz.first);
    const auto zz = wz.second.sphere_pair_sums(wz.second);
    SpectralField first(wz.dim()), second(wz.dim());
    for (const auto& [k, zk] : wz.second.coeffs()) {
        const auto it = ww.find(k.radius2());
        const cd s = (it == ww.end()) ? cd(0.0, 0.0) : it->second;
        first.set(k, -0.25 * I * double(k.radius2()) * s * zk);
    }
    for (const auto& [k, wk] : wz.first.coeffs()) {
        const auto it = zz.find(k.radius2());
        const cd s = (it == zz.end()) ? cd(0.0, 0.0) : it->second;
        second.set(k, 0.25 * I * double(k.radius2()) * s * wk);
    }
    return FieldPair(std::move(first), std::move(second));
}

double scalar_p_of(const FieldPair& wz) {
    return std::sqrt(1.0 + 2.0 * p_functional(phi4_forward(wz))) - 1.0;
}

namespace {

// Generic collected quintic term: out_k = i * scale * sum_{lj, ll} kernel *
// aggA(lj) aggB(ll) * dir_k. Aggregates and the direction field are chosen by
// the term kind; deltas inside kernels are decided on squared radii.
enum class Agg { WW, WZ, ZZ };

std::map<std::int64_t, cd> aggregate(const FieldPair& wz, Agg which) {
    switch (which) {
        case Agg::WW: return wz.first.sphere_pair_sums(wz.first);
        case Agg::WZ: return wz.first.sphere_pair_sums(wz.second);
        case Agg::ZZ: return wz.second.sphere_pair_sums(wz.second);
    }
    throw std::logic_error("bad aggregate");
}

template <typename Kernel>
SpectralField collected_term(const FieldPair& wz, Agg a, Agg b, bool dir_is_z, double scale,
                             Kernel kernel) {
    const auto agg_j = aggregate(wz, a);
    const auto agg_l = aggregate(wz, b);
    const SpectralField& dir = dir_is_z ? wz.second : wz.first;
    SpectralField out(wz.dim());
    for (const auto& [k, dk] : dir.coeffs()) {
        const std::int64_t k2 = k.radius2();
        cd sum(0.0, 0.0);
        for (const auto& [j2, sj] : agg_j)
            for (const auto& [l2, sl] : agg_l) sum += sj * sl * kernel(j2, l2, k2);
        out.set(k, I * scale * sum * dk);
    }
    return out;
}

double frac_if(bool open, double num, double den) { return open ? num / den : 0.0; }

}  // namespace

SpectralField y_term(YTermKind kind, const FieldPair& wz, bool symmetrized) {
    const auto r = radius_of;
    switch (kind) {
        case YTermKind::Y4_11:
            if (symmetrized)
                return collected_term(wz, Agg::WW, Agg::WW, false, -1.0 / 64.0,
                                      [&](auto j2, auto l2, auto k2) {
                                          return double(j2) * double(l2) *
                                                 (1.0 / (r(j2) + r(k2)) + 1.0 / (r(l2) + r(k2)));
                                      });
            return collected_term(wz, Agg::WW, Agg::WW, false, -1.0 / 32.0,
                                  [&](auto j2, auto l2, auto k2) {
                                      return double(j2) * double(l2) / (r(j2) + r(k2));
                                  });
        case YTermKind::Y2_11:
            return collected_term(wz, Agg::WW, Agg::ZZ, false, 1.0 / 32.0,
                                  [&](auto j2, auto l2, auto k2) {
                                      return double(j2) * double(l2) *
                                             (frac_if(l2 == k2 && j2 != k2, -1.0, r(j2) - r(k2)) +
                                              1.0 / (r(j2) + r(k2)) -
                                              frac_if(l2 != k2, 1.0, r(l2) - r(k2)));
                                  });
        case YTermKind::Y0_11:
            if (symmetrized)
                return collected_term(
                    wz, Agg::ZZ, Agg::ZZ, false, 1.0 / 64.0, [&](auto j2, auto l2, auto k2) {
                        const double deltas = (l2 == k2 ? 1.0 : 0.0) + (j2 == k2 ? 1.0 : 0.0);
                        return double(j2) * double(l2) *
                               (-deltas / (r(j2) + r(l2)) + frac_if(j2 != k2, 1.0, r(j2) - r(k2)) +
                                frac_if(l2 != k2, 1.0, r(l2) - r(k2)));
                    });
            return collected_term(wz, Agg::ZZ, Agg::ZZ, false, 1.0 / 32.0,
                                  [&](auto j2, auto l2, auto k2) {
                                      return double(j2) * double(l2) *
                                             (frac_if(l2 == k2, -1.0, r(j2) + r(k2)) +
                                              frac_if(j2 != k2, 1.0, r(j2) - r(k2)));
                                  });
        case YTermKind::Y4_12:
            if (symmetrized)
                return collected_term(wz, Agg::WW, Agg::WW, true, 3.0 / 32.0,
                                      [&](auto j2, auto l2, auto) {
                                          return r(j2) * r(l2) * (r(j2) + r(l2));
                                      });
            return collected_term(wz, Agg::WW, Agg::WW, true, 3.0 / 16.0,
                                  [&](auto j2, auto l2, auto) { return double(j2) * r(l2); });
        case YTermKind::Y3_12:
            return collected_term(wz, Agg::WW, Agg::WZ, true, 1.0 / 16.0,
                                  [&](auto j2, auto l2, auto k2) {
                                      return double(j2) * r(l2) *
                                             (frac_if(l2 == j2 && l2 != k2, r(l2), r(l2) - r(k2)) +
                                              6.0 + r(l2) / (r(l2) + r(j2)) +
                                              frac_if(l2 != j2, r(l2), r(l2) - r(j2)));
                                  });
        case YTermKind::Y2_12:
            return collected_term(wz, Agg::WW, Agg::ZZ, true, 3.0 / 16.0,
                                  [&](auto j2, auto l2, auto) {
                                      return r(j2) * r(l2) * (r(j2) - r(l2));
                                  });
        case YTermKind::Y1_12:
            return collected_term(wz, Agg::WZ, Agg::ZZ, true, 1.0 / 16.0,
                                  [&](auto j2, auto l2, auto k2) {
                                      return r(j2) * double(l2) *
                                             (frac_if(j2 == l2, -r(j2), r(j2) + r(k2)) - 6.0 +
                                              frac_if(j2 != l2, r(j2), r(l2) - r(j2)) -
                                              r(j2) / (r(l2) + r(j2)));
                                  });
        case YTermKind::Y0_12:
            if (symmetrized)
                return collected_term(wz, Agg::ZZ, Agg::ZZ, true, -3.0 / 32.0,
                                      [&](auto j2, auto l2, auto) {
                                          return r(j2) * r(l2) * (r(j2) + r(l2));
                                      });
            return collected_term(wz, Agg::ZZ, Agg::ZZ, true, -3.0 / 16.0,
                                  [&](auto j2, auto l2, auto) { return double(j2) * r(l2); });
    }
    throw std::logic_error("bad Y term kind");
}

namespace {

SpectralField x5_plus_component1(const FieldPair& wz) {
    SpectralField out = y_term(YTermKind::Y4_11, wz);
    out += y_term(YTermKind::Y2_11, wz);
    out += y_term(YTermKind::Y0_11, wz);
    out += y_term(YTermKind::Y4_12, wz);
    out += y_term(YTermKind::Y3_12, wz);
    out += y_term(YTermKind::Y2_12, wz);
    out += y_term(YTermKind::Y1_12, wz);
    out += y_term(YTermKind::Y0_12, wz);
    return out;
}

FieldPair swapped(const FieldPair& p) { return FieldPair(p.second, p.first); }

}  // namespace

FieldPair x5_plus(const FieldPair& wz) {
    // second component = -(first component of the swapped pair): real structure
    // for purely imaginary coefficients over real kernels.
    return FieldPair(x5_plus_component1(wz), cd(-1.0, 0.0) * x5_plus_component1(swapped(wz)));
}

FieldPair x5_plus_operator_route(const FieldPair& wz) {
    const double Q = q_functional(wz);
    const FieldPair kx3 = k4_apply(wz, x3_plus(wz));
    const FieldPair qb3 = cd(3.0 * Q, 0.0) * b3_apply(wz);
    const FieldPair b3m = b3_differential(wz, m4_apply(wz, wz));
    return cd(-1.0, 0.0) * kx3 - qb3 + b3m;
}

FieldPair x_plus_exact(const FieldPair& wz) {
    const double m0 = m0_for(wz.dim());
    const double margin = 2.0 * pair_norm(wz, m0);
    const FieldPair rhs = rhs_eta_psi(phi4_forward(wz));
    return neumann_inverse_apply([&wz](const FieldPair& p) { return k4_apply(wz, p); }, rhs,
                                 margin);
}

FieldDecomposition x_plus_full(const FieldPair& wz) {
    FieldDecomposition d;
    d.scalar_p = scalar_p_of(wz);
    d.parts["D1"] = d1_apply(wz);
    d.parts["X3p"] = x3_plus(wz);
    d.parts["PX3p"] = cd(d.scalar_p, 0.0) * d.parts["X3p"];
    d.parts["X5p"] = x5_plus(wz);
    d.total = x_plus_exact(wz);
    const FieldPair lower =
        cd(1.0 + d.scalar_p, 0.0) * (d.parts["D1"] + d.parts["X3p"]) + d.parts["X5p"];
    d.parts["Xge7p"] = d.total - lower;
    return d;
}

namespace {

SpectralField w5_component1(const FieldPair& uv) {
    const auto& u = uv.first;
    const auto& v = uv.second;
    const auto uu = u.sphere_pair_sums(u);
    const auto vv = v.sphere_pair_sums(v);
    const auto uvagg = u.sphere_pair_sums(v);
    const auto r = radius_of;

    SpectralField out(uv.dim());
    for (const auto& [k, unused] : u.coeffs()) {
        (void)unused;
        const std::int64_t k2 = k.radius2();
        const double rk = r(k2);

        // |j| = |l| sphere term, direction u_k
        cd c_u(0.0, 0.0);
        for (const auto& [l2, su] : uu) {
            const auto itv = vv.find(l2);
            if (itv == vv.end()) continue;
            const double rl = r(l2);
            const double bracket =
                1.0 / (rl + rk) - frac_if(l2 != k2, 1.0, rl - rk);
            c_u += (1.0 / 32.0) * su * itv->second * double(l2) * double(l2) * bracket;
        }

        // |k| = |j| + |l| term, direction v_k
        cd c_v(0.0, 0.0);
        for (const auto& [j2, sj] : uu)
            for (const auto& [l2, sl] : uu)
                if (radius_is_sum(k2, j2, l2))
                    c_v += (3.0 / 32.0) * sj * sl * r(j2) * r(l2) * rk;

        // |j| = |k| term, direction v_k
        {
            const auto itj = uu.find(k2);
            if (itj != uu.end()) {
                cd sum(0.0, 0.0);
                for (const auto& [l2, sl] : uvagg) {
                    const double rl = r(l2);
                    const double bracket = 6.0 + rl / (rl + rk) + frac_if(l2 != k2, rl, rl - rk);
                    sum += sl * double(k2) * rl * bracket;
                }
                c_v += (1.0 / 16.0) * itj->second * sum;
            }
        }

        // |k| = |j| - |l| term, direction v_k
        for (const auto& [j2, sj] : uu)
            for (const auto& [l2, sl] : vv)
                if (radius_is_sum(j2, k2, l2))
                    c_v += (3.0 / 16.0) * sj * sl * r(j2) * r(l2) * rk;

        out.set(k, I * (c_u * u.at(k) + c_v * v.at(k)));
    }
    return out;
}

}  // namespace

FieldPair w5(const FieldPair& uv) {
    return FieldPair(w5_component1(uv), cd(-1.0, 0.0) * w5_component1(swapped(uv)));
}

FieldPair w_exact(const FieldPair& uv, double delta) {
    const double m1 = m1_for(uv.dim());
    const double margin = pair_norm(uv, m1) / delta;
    const FieldPair rhs = x_plus_exact(phi5_forward(uv));
    return neumann_inverse_apply([&uv](const FieldPair& p) { return k5_apply(uv, p); }, rhs,
                                 margin);
}

FieldDecomposition w_full(const FieldPair& uv, double delta) {
    FieldDecomposition d;
    d.scalar_p = scalar_p_of(phi5_forward(uv));
    d.parts["D1"] = d1_apply(uv);
    d.parts["X3p"] = x3_plus(uv);
    d.parts["PX3p"] = cd(d.scalar_p, 0.0) * d.parts["X3p"];
    d.parts["W5"] = w5(uv);
    d.total = w_exact(uv, delta);
    const FieldPair lower =
        cd(1.0 + d.scalar_p, 0.0) * (d.parts["D1"] + d.parts["X3p"]) + d.parts["W5"];
    d.parts["Wge7"] = d.total - lower;
    return d;
}

FieldPair w_geq7(const FieldPair& uv, double delta) {
    const double m1 = m1_for(uv.dim());
    const double margin = pair_norm(uv, m1) / delta;
    const auto inv = [&uv, margin](const FieldPair& h) {
        return neumann_inverse_apply([&uv](const FieldPair& p) { return k5_apply(uv, p); }, h,
                                     margin);
    };
    // (-K + Ktilde) h = (I + K)^{-1} h - h
    const auto tail = [&inv](const FieldPair& h) { return inv(h) - h; };

    const FieldPair wz5 = phi5_forward(uv);
    const double P5 = scalar_p_of(wz5);
    const FieldPair w5v = w5(uv);
    const FieldPair x5v = x5_plus(uv);
    const FieldPair x3v = x3_plus(uv);
    const FieldPair diff5 = w5v - x5v;

    // the once-normalized tail evaluated at Phi5(u,v)
    const FieldPair x5at5 = x5_plus(wz5);
    const FieldPair x3at5 = x3_plus(wz5);
    const FieldPair xge7at5 = x_plus_exact(wz5) -
                              cd(1.0 + P5, 0.0) * (d1_apply(wz5) + x3at5) - x5at5;

    FieldPair out = cd(1.0 + P5, 0.0) * tail(diff5);
    out += cd(P5, 0.0) * diff5;
    out += tail(cd(1.0 + P5, 0.0) * x3v);
    out += tail(x5v);
    out += inv(cd(1.0 + P5, 0.0) * (x3at5 - x3v));
    out += inv(x5at5 - x5v);
    out += inv(xge7at5);
    return out;
}

namespace {

struct PairedRate {
    cd value;
    double magnitude;  // |t1| + |t2|, the scale against which cancellation happens
};

PairedRate sobolev_rate_pairing(const FieldPair& part, const FieldPair& uv, double s) {
    const cd t1 = pairing(lambda_pow(part.first, s), lambda_pow(uv.second, s));
    const cd t2 = pairing(lambda_pow(uv.first, s), lambda_pow(part.second, s));
    return {t1 + t2, std::abs(t1) + std::abs(t2)};
}

double require_real(cd z, double magnitude, const char* what) {
    if (std::abs(z.imag()) > 1e-13 + 1e-13 * magnitude)
        throw std::runtime_error(std::string(what) + ": value is not real");
    return z.real();
}

}  // namespace

Z6Values energy_rate_z6_both(const FieldPair& uv, double s) {
    Z6Values out;
    const PairedRate byp = sobolev_rate_pairing(w5(uv), uv, s);
    out.by_pairing = require_real(byp.value, byp.magnitude, "energy_rate_z6 pairing");

    const auto uu = uv.first.sphere_pair_sums(uv.first);
    const auto vv = uv.second.sphere_pair_sums(uv.second);
    cd sum(0.0, 0.0);
    double mag = 0.0;
    for (const auto& [j2, bj] : uu)
        for (const auto& [l2, bl] : uu)
            for (const auto& [k2, bk_u] : uu) {
                if (!radius_is_sum(k2, j2, l2)) continue;
                const auto vj = vv.find(j2), vl = vv.find(l2), vk = vv.find(k2);
                const cd cvj = vj == vv.end() ? cd(0, 0) : vj->second;
                const cd cvl = vl == vv.end() ? cd(0, 0) : vl->second;
                const cd cvk = vk == vv.end() ? cd(0, 0) : vk->second;
                const double rj = radius_of(j2), rl = radius_of(l2), rk = radius_of(k2);
                const double kernel = rj * rl * rk *
                                      (std::pow(k2, s) - std::pow(j2, s) - std::pow(l2, s));
                sum += (bj * bl * cvk - cvj * cvl * bk_u) * kernel;
                mag += std::abs(bj * bl * cvk * kernel) + std::abs(cvj * cvl * bk_u * kernel);
            }
    out.by_resonant_sum =
        require_real((3.0 / 32.0) * I * sum, mag, "energy_rate_z6 resonant sum");
    return out;
}

double energy_rate_z6(const FieldPair& uv, double s) {
    const Z6Values v = energy_rate_z6_both(uv, s);
    const PairedRate byp = sobolev_rate_pairing(w5(uv), uv, s);
    const double scale = std::max(std::abs(v.by_pairing), std::abs(v.by_resonant_sum));
    if (std::abs(v.by_pairing - v.by_resonant_sum) > 1e-10 * scale + 1e-12 * byp.magnitude)
        throw std::runtime_error("energy_rate_z6: dual evaluation paths disagree");
    return v.by_resonant_sum;
}

EnergyRates energy_rate_total(const FieldPair& uv, double s, double delta) {
    EnergyRates rates;
    rates.z6 = energy_rate_z6(uv, s);
    const auto dec = w_full(uv, delta);
    const PairedRate tail = sobolev_rate_pairing(dec.parts.at("Wge7"), uv, s);
    rates.z_ge8 = require_real(tail.value, tail.magnitude, "energy_rate_total z_ge8");
    return rates;
}

void write_decomposition(std::ostream& os, const FieldDecomposition& dec) {
    os << "# decomposition scalar_p=";
    os.precision(17);
    os << dec.scalar_p << "\n";
    for (const auto& [label, part] : dec.parts) {
        os << "# part " << label << " 1\n";
        write_field(os, part.first);
        os << "# part " << label << " 2\n";
        write_field(os, part.second);
    }
    os << "# part total 1\n";
    write_field(os, dec.total.first);
    os << "# part total 2\n";
    write_field(os, dec.total.second);
}

}  // namespace kirch
