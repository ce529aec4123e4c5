#include "kirch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>
#include <ostream>
#include <stdexcept>

namespace kirch::oracle {

namespace {

const ComplexRational CR_I = ComplexRational::i_times(Rational(1));

Rational kernel_value(QuinticKind kind, std::int64_t rj, std::int64_t rl, std::int64_t rk,
                      const Hook& hook) {
    Rational v = nf5_coefficient_exact(kind, rj, rl, rk);
    if (hook && hook->kind == kind && hook->rj == rj && hook->rl == rl && hook->rk == rk)
        v += hook->delta;
    return v;
}

void validate_mode_set(const std::vector<int>& ms) {
    if (ms.empty() || ms.size() > 8)
        throw std::invalid_argument("mode set must have between 1 and 8 modes");
    for (int j : ms) {
        if (j == 0) throw std::invalid_argument("mode set contains the zero mode");
        if (std::find(ms.begin(), ms.end(), -j) == ms.end())
            throw std::invalid_argument("mode set is not symmetric under negation");
    }
}

}  // namespace

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    out.factors.resize(factors.size() + other.factors.size());
    std::merge(factors.begin(), factors.end(), other.factors.begin(), other.factors.end(),
               out.factors.begin());
    return out;
}

std::string Monomial::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& f : factors) {
        if (!s.empty()) s += " ";
        s += (f.kind == VarKind::u ? "u[" : "v[") + std::to_string(f.mode) + "]";
    }
    return s;
}

Poly Poly::constant(const ComplexRational& c) {
    Poly p;
    p.add_term(Monomial{}, c);
    return p;
}

Poly Poly::variable(Var v) {
    Poly p;
    p.add_term(Monomial{{v}}, ComplexRational(Rational(1)));
    return p;
}

void Poly::add_term(const Monomial& m, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::plus(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::minus(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::scaled(const ComplexRational& c) const {
    Poly out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Poly Poly::times(const Poly& o, int degree_cap) const {
    Poly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.degree() + mb.degree() > degree_cap) continue;
            out.add_term(ma.times(mb), ca * cb);
        }
    return out;
}

Poly Poly::degree_slice(int degree) const {
    Poly out;
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) out.terms_.emplace(m, c);
    return out;
}

cd Poly::eval(const FieldPair& at) const {
    cd sum(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        cd prod(c.re.to_double(), c.im.to_double());
        for (const auto& f : m.factors) {
            const auto& field = (f.kind == VarKind::u) ? at.first : at.second;
            prod *= field.at(ModeIndex::d1(f.mode));
        }
        sum += prod;
    }
    return sum;
}

SymField SymField::plus(const SymField& o) const {
    SymField out = *this;
    for (const auto& [k, p] : o.comp) {
        auto it = out.comp.find(k);
        if (it == out.comp.end())
            out.comp.emplace(k, p);
        else
            it->second = it->second.plus(p);
    }
    return out;
}

SymField SymField::minus(const SymField& o) const { return plus(o.scaled(-ComplexRational(Rational(1)))); }

SymField SymField::scaled(const ComplexRational& c) const {
    SymField out;
    for (const auto& [k, p] : comp) out.comp.emplace(k, p.scaled(c));
    return out;
}

SymField SymField::poly_scaled(const Poly& p, int cap) const {
    SymField out;
    for (const auto& [k, q] : comp) out.comp.emplace(k, q.times(p, cap));
    return out;
}

SymField SymField::lambda_mul() const {
    SymField out;
    for (const auto& [k, p] : comp)
        out.comp.emplace(k, p.scaled(ComplexRational(Rational(std::abs(k)))));
    return out;
}

SymField SymField::degree_slice(int degree) const {
    SymField out;
    for (const auto& [k, p] : comp) out.comp.emplace(k, p.degree_slice(degree));
    return out;
}

bool SymField::is_zero() const {
    for (const auto& [k, p] : comp)
        if (!p.is_zero()) return false;
    return true;
}

SymPair SymPair::plus(const SymPair& o) const { return {first.plus(o.first), second.plus(o.second)}; }
SymPair SymPair::minus(const SymPair& o) const { return {first.minus(o.first), second.minus(o.second)}; }
SymPair SymPair::scaled(const ComplexRational& c) const { return {first.scaled(c), second.scaled(c)}; }
SymPair SymPair::poly_scaled(const Poly& p, int cap) const {
    return {first.poly_scaled(p, cap), second.poly_scaled(p, cap)};
}
SymPair SymPair::degree_slice(int degree) const {
    return {first.degree_slice(degree), second.degree_slice(degree)};
}
bool SymPair::is_zero() const { return first.is_zero() && second.is_zero(); }

SymPair identity_pair(const std::vector<int>& mode_set) {
    validate_mode_set(mode_set);
    SymPair out;
    for (int j : mode_set) {
        out.first.comp.emplace(j, Poly::variable({VarKind::u, j}));
        out.second.comp.emplace(j, Poly::variable({VarKind::v, j}));
    }
    return out;
}

namespace {

Poly pairing_sym(const SymField& a, const SymField& b, int cap) {
    Poly out;
    for (const auto& [j, pa] : a.comp) {
        const auto it = b.comp.find(-j);
        if (it == b.comp.end()) continue;
        out = out.plus(pa.times(it->second, cap));
    }
    return out;
}

// A12 / C12 over the mode set with exact rational kernels.
SymField bilinear_sym(bool is_a12, const SymField& U, const SymField& V, const SymField& H,
                      int cap) {
    SymField out;
    for (const auto& [k, hk] : H.comp) {
        Poly acc;
        for (const auto& [j, uj] : U.comp) {
            const auto vit = V.comp.find(-j);
            if (vit == V.comp.end()) continue;
            const std::int64_t rj = std::abs(j), rk = std::abs(k);
            if (is_a12 && rj == rk) continue;
            const Rational kern(rj * rj, 8 * (is_a12 ? (rj - rk) : (rj + rk)));
            acc = acc.plus(uj.times(vit->second, cap).scaled(ComplexRational(kern)));
        }
        out.comp.emplace(k, acc.times(hk, cap));
    }
    return out;
}

SymPair m4_field(const SymPair& at, const SymPair& arg, int cap) {
    return {bilinear_sym(true, at.first, at.first, arg.second, cap)
                .plus(bilinear_sym(false, at.second, at.second, arg.second, cap)),
            bilinear_sym(true, at.second, at.second, arg.first, cap)
                .plus(bilinear_sym(false, at.first, at.first, arg.first, cap))};
}

SymPair e4_field(const SymPair& at, const SymPair& arg, int cap) {
    const ComplexRational two(Rational(2));
    return {bilinear_sym(true, at.first, arg.first, at.second, cap)
                .plus(bilinear_sym(false, at.second, arg.second, at.second, cap))
                .scaled(two),
            bilinear_sym(false, at.first, arg.first, at.first, cap)
                .plus(bilinear_sym(true, at.second, arg.second, at.first, cap))
                .scaled(two)};
}

SymPair neumann_sym(const std::function<SymPair(const SymPair&)>& k_apply, const SymPair& rhs) {
    SymPair sum = rhs;
    SymPair term = rhs;
    for (int n = 0; n < 16; ++n) {
        term = k_apply(term).scaled(-ComplexRational(Rational(1)));
        if (term.is_zero()) return sum;
        sum = sum.plus(term);
    }
    throw std::runtime_error("symbolic Neumann series did not terminate");
}

// G[x1,x2,x3,x4]h with the exact kernel table.
SymField quad_sym(QuinticKind kind, const SymField& x1, const SymField& x2, const SymField& x3,
                  const SymField& x4, const SymField& h, int cap, const Hook& hook) {
    SymField out;
    if (kind == QuinticKind::B11 || kind == QuinticKind::D11) return out;
    for (const auto& [k, hk] : h.comp) {
        Poly acc;
        for (const auto& [j, p1] : x1.comp) {
            const auto it2 = x2.comp.find(-j);
            if (it2 == x2.comp.end()) continue;
            const Poly pj = p1.times(it2->second, cap);
            if (pj.is_zero()) continue;
            for (const auto& [l, p3] : x3.comp) {
                const auto it4 = x4.comp.find(-l);
                if (it4 == x4.comp.end()) continue;
                const Rational kern =
                    kernel_value(kind, std::abs(j), std::abs(l), std::abs(k), hook);
                if (kern.is_zero()) continue;
                const Poly pl = p3.times(it4->second, cap);
                acc = acc.plus(pj.times(pl, cap).scaled(ComplexRational(kern)));
            }
        }
        out.comp.emplace(k, acc.times(hk, cap));
    }
    return out;
}

SymField m5_row(const SymField& u, const SymField& v, const SymField& a, const SymField& b,
                int cap, const Hook& hook) {
    SymField out = quad_sym(QuinticKind::A11, u, u, u, u, a, cap, hook);
    out = out.plus(quad_sym(QuinticKind::C11, u, u, v, v, a, cap, hook));
    out = out.plus(quad_sym(QuinticKind::F11, v, v, v, v, a, cap, hook));
    out = out.plus(quad_sym(QuinticKind::A12, u, u, u, u, b, cap, hook));
    out = out.plus(quad_sym(QuinticKind::B12, u, u, u, v, b, cap, hook));
    out = out.plus(quad_sym(QuinticKind::C12, u, u, v, v, b, cap, hook));
    out = out.plus(quad_sym(QuinticKind::D12, u, v, v, v, b, cap, hook));
    out = out.plus(quad_sym(QuinticKind::F12, v, v, v, v, b, cap, hook));
    return out;
}

SymField e5_row(const SymField& u, const SymField& v, const SymField& a, const SymField& b,
                int cap, const Hook& hook) {
    const ComplexRational two(Rational(2));
    SymField out = quad_sym(QuinticKind::A11, u, a, u, u, u, cap, hook).scaled(two);
    out = out.plus(quad_sym(QuinticKind::A11, u, u, u, a, u, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::C11, u, a, v, v, u, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::C11, u, u, v, b, u, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::F11, v, b, v, v, u, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::F11, v, v, v, b, u, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::A12, u, a, u, u, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::A12, u, u, u, a, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::B12, u, a, u, v, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::B12, u, u, a, v, v, cap, hook));
    out = out.plus(quad_sym(QuinticKind::B12, u, u, u, b, v, cap, hook));
    out = out.plus(quad_sym(QuinticKind::C12, u, a, v, v, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::C12, u, u, v, b, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::D12, a, v, v, v, v, cap, hook));
    out = out.plus(quad_sym(QuinticKind::D12, u, b, v, v, v, cap, hook));
    out = out.plus(quad_sym(QuinticKind::D12, u, v, v, b, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::F12, v, b, v, v, v, cap, hook).scaled(two));
    out = out.plus(quad_sym(QuinticKind::F12, v, v, v, b, v, cap, hook).scaled(two));
    return out;
}

}  // namespace

SymPair d1_field(const SymPair& p) {
    return {p.first.lambda_mul().scaled(-CR_I), p.second.lambda_mul().scaled(CR_I)};
}

Poly q_scalar(const SymPair& p, int cap) {
    const SymField sum = p.first.plus(p.second);
    return pairing_sym(sum.lambda_mul(), sum, cap).scaled(ComplexRational(Rational(1, 4)));
}

SymPair b3_field(const SymPair& p, int cap) {
    const SymField lw = p.first.lambda_mul();
    const SymField lz = p.second.lambda_mul();
    const Poly coeff = pairing_sym(lz, lz, cap)
                           .minus(pairing_sym(lw, lw, cap))
                           .scaled(ComplexRational::i_times(Rational(1, 4)));
    return {p.second.poly_scaled(coeff, cap), p.first.poly_scaled(coeff, cap)};
}

SymPair x3_plus_field(const SymPair& p, int cap) {
    SymPair out;
    for (const auto& [k, zk] : p.second.comp) {
        Poly acc;
        for (const auto& [j, wj] : p.first.comp) {
            if (std::abs(j) != std::abs(k)) continue;
            const auto it = p.first.comp.find(-j);
            if (it == p.first.comp.end()) continue;
            acc = acc.plus(wj.times(it->second, cap).scaled(ComplexRational(Rational(j * j))));
        }
        out.first.comp.emplace(
            k, acc.times(zk, cap).scaled(ComplexRational::i_times(Rational(-1, 4))));
    }
    for (const auto& [k, wk] : p.first.comp) {
        Poly acc;
        for (const auto& [j, zj] : p.second.comp) {
            if (std::abs(j) != std::abs(k)) continue;
            const auto it = p.second.comp.find(-j);
            if (it == p.second.comp.end()) continue;
            acc = acc.plus(zj.times(it->second, cap).scaled(ComplexRational(Rational(j * j))));
        }
        out.second.comp.emplace(
            k, acc.times(wk, cap).scaled(ComplexRational::i_times(Rational(1, 4))));
    }
    return out;
}

SymPair x_field(const SymPair& p, int cap) {
    if (cap > 5) throw std::invalid_argument("x_field: Taylor coefficients supplied through degree 5");
    const Poly q = q_scalar(p, cap);
    const Poly q2 = q.times(q, cap);
    const SymPair lin = d1_field(p);
    const SymPair b3 = b3_field(p, cap);
    SymPair out = lin;
    out = out.plus(lin.poly_scaled(q, cap));
    out = out.plus(lin.poly_scaled(q2.scaled(ComplexRational(Rational(-3, 2))), cap));
    out = out.plus(b3);
    out = out.plus(b3.poly_scaled(q.scaled(ComplexRational(Rational(-2))), cap));
    return out;
}

SymPair phi4_subst(const SymPair& p, int cap) { return p.plus(m4_field(p, p, cap)); }

SymPair k4_field(const SymPair& at, const SymPair& arg, int cap) {
    return m4_field(at, arg, cap).plus(e4_field(at, arg, cap));
}

SymPair phi5_subst(const SymPair& p, int cap, const Hook& hook) {
    return p.plus(m5_field(p, p, cap, hook));
}

SymPair m5_field(const SymPair& at, const SymPair& arg, int cap, const Hook& hook) {
    return {m5_row(at.first, at.second, arg.first, arg.second, cap, hook),
            m5_row(at.second, at.first, arg.second, arg.first, cap, hook)};
}

SymPair k5_field(const SymPair& at, const SymPair& arg, int cap, const Hook& hook) {
    return m5_field(at, arg, cap, hook)
        .plus(SymPair{e5_row(at.first, at.second, arg.first, arg.second, cap, hook),
                      e5_row(at.second, at.first, arg.second, arg.first, cap, hook)});
}

Poly p_scalar(const SymPair& p, int cap) {
    const Poly s = q_scalar(phi4_subst(p, cap), cap);
    return s.plus(s.times(s, cap).scaled(ComplexRational(Rational(-3, 2))));
}

namespace {

// The eight collected quintic families; returns the first component.
SymField x5_component1(const SymPair& p, int cap) {
    const auto& W = p.first;
    const auto& Z = p.second;

    struct Term {
        // monomial slots: (fa_j fb_{-j})(sa_l sb_{-l}) dir_k
        const SymField *fa, *fb, *sa, *sb, *dir;
        // kernel(a=|j|, b=|l|, c=|k|)
        Rational (*kern)(std::int64_t, std::int64_t, std::int64_t);
        Rational scale;
    };
    static const auto y4_11 = +[](std::int64_t a, std::int64_t b, std::int64_t c) {
        return Rational(a * a * b * b, a + c);
    };
    static const auto y2_11 = +[](std::int64_t a, std::int64_t b, std::int64_t c) {
        Rational acc(0);
        if (b == c && a != c) acc += Rational(-1, a - c);
        acc += Rational(1, a + c);
        if (b != c) acc -= Rational(1, b - c);
        return Rational(a * a * b * b) * acc;
    };
    static const auto y0_11 = +[](std::int64_t a, std::int64_t b, std::int64_t c) {
        Rational acc(0);
        if (b == c) acc += Rational(-1, a + c);
        if (a != c) acc += Rational(1, a - c);
        return Rational(a * a * b * b) * acc;
    };
    static const auto y4_12 = +[](std::int64_t a, std::int64_t b, std::int64_t) {
        return Rational(a * a * b);
    };
    static const auto y3_12 = +[](std::int64_t a, std::int64_t b, std::int64_t c) {
        Rational acc(6);
        if (b == a && b != c) acc += Rational(b, b - c);
        acc += Rational(b, b + a);
        if (b != a) acc += Rational(b, b - a);
        return Rational(a * a * b) * acc;
    };
    static const auto y2_12 = +[](std::int64_t a, std::int64_t b, std::int64_t) {
        return Rational(a * b * (a - b));
    };
    static const auto y1_12 = +[](std::int64_t a, std::int64_t b, std::int64_t c) {
        Rational acc(-6);
        if (a == b) acc -= Rational(a, a + c);
        if (a != b) acc += Rational(a, b - a);
        acc -= Rational(a, b + a);
        return Rational(a * b * b) * acc;
    };
    static const auto y0_12 = +[](std::int64_t a, std::int64_t b, std::int64_t) {
        return Rational(a * a * b);
    };

    const Term terms[] = {
        {&W, &W, &W, &W, &W, y4_11, Rational(-1, 32)},
        {&W, &W, &Z, &Z, &W, y2_11, Rational(1, 32)},
        {&Z, &Z, &Z, &Z, &W, y0_11, Rational(1, 32)},
        {&W, &W, &W, &W, &Z, y4_12, Rational(3, 16)},
        {&W, &W, &W, &Z, &Z, y3_12, Rational(1, 16)},
        {&W, &W, &Z, &Z, &Z, y2_12, Rational(3, 16)},
        {&W, &Z, &Z, &Z, &Z, y1_12, Rational(1, 16)},
        {&Z, &Z, &Z, &Z, &Z, y0_12, Rational(-3, 16)},
    };
    SymField out;
    for (const auto& t : terms) {
        for (const auto& [k, dk] : t.dir->comp) {
            Poly acc;
            for (const auto& [j, pj] : t.fa->comp) {
                const auto itj = t.fb->comp.find(-j);
                if (itj == t.fb->comp.end()) continue;
                const Poly pair_j = pj.times(itj->second, cap);
                if (pair_j.is_zero()) continue;
                for (const auto& [l, pl] : t.sa->comp) {
                    const auto itl = t.sb->comp.find(-l);
                    if (itl == t.sb->comp.end()) continue;
                    const Rational kern = t.kern(std::abs(j), std::abs(l), std::abs(k));
                    if (kern.is_zero()) continue;
                    acc = acc.plus(pair_j.times(pl.times(itl->second, cap), cap)
                                       .scaled(ComplexRational(kern)));
                }
            }
            const Poly add = acc.times(dk, cap).scaled(ComplexRational::i_times(t.scale));
            auto it = out.comp.find(k);
            if (it == out.comp.end())
                out.comp.emplace(k, add);
            else
                it->second = it->second.plus(add);
        }
    }
    return out;
}

SymPair swap_pair(const SymPair& p) { return {p.second, p.first}; }

}  // namespace

SymPair x5_plus_field(const SymPair& p, int cap) {
    return {x5_component1(p, cap),
            x5_component1(swap_pair(p), cap).scaled(-ComplexRational(Rational(1)))};
}

namespace {

SymField w5_component1(const SymPair& p, int cap) {
    const auto& U = p.first;
    const auto& V = p.second;
    SymField out;
    auto add_to = [&out](int k, const Poly& poly) {
        auto it = out.comp.find(k);
        if (it == out.comp.end())
            out.comp.emplace(k, poly);
        else
            it->second = it->second.plus(poly);
    };

    for (const auto& [k, uk] : U.comp) {
        const std::int64_t c = std::abs(k);
        // sphere term |j| = |l|, direction u_k
        Poly acc;
        for (const auto& [j, uj] : U.comp) {
            const auto itj = U.comp.find(-j);
            if (itj == U.comp.end()) continue;
            for (const auto& [l, vl] : V.comp) {
                if (std::abs(l) != std::abs(j)) continue;
                const auto itl = V.comp.find(-l);
                if (itl == V.comp.end()) continue;
                const std::int64_t a = std::abs(j), b = std::abs(l);
                Rational bracket = Rational(1, a + c);
                if (b != c) bracket -= Rational(1, b - c);
                const Rational kern = Rational(a * a * b * b) * bracket;
                if (kern.is_zero()) continue;
                acc = acc.plus(uj.times(itj->second, cap)
                                   .times(vl.times(itl->second, cap), cap)
                                   .scaled(ComplexRational(kern)));
            }
        }
        add_to(k, acc.times(uk, cap).scaled(ComplexRational::i_times(Rational(1, 32))));
    }

    for (const auto& [k, vk] : V.comp) {
        const std::int64_t c = std::abs(k);
        Poly acc;
        for (const auto& [j, uj] : U.comp) {
            const auto itj = U.comp.find(-j);
            if (itj == U.comp.end()) continue;
            const std::int64_t a = std::abs(j);
            const Poly pj = uj.times(itj->second, cap);
            // |k| = |j| + |l| term: u_j u_-j u_l u_-l v_k
            for (const auto& [l, ul] : U.comp) {
                const std::int64_t b = std::abs(l);
                if (c != a + b) continue;
                const auto itl = U.comp.find(-l);
                if (itl == U.comp.end()) continue;
                acc = acc.plus(pj.times(ul.times(itl->second, cap), cap)
                                   .scaled(ComplexRational::i_times(
                                       Rational(3 * a * b * c, 32))));
            }
            // |j| = |k| term: u_j u_-j u_l v_-l v_k
            if (a == c) {
                for (const auto& [l, ul] : U.comp) {
                    const auto itl = V.comp.find(-l);
                    if (itl == V.comp.end()) continue;
                    const std::int64_t b = std::abs(l);
                    Rational bracket(6);
                    bracket += Rational(b, b + a);
                    if (b != a) bracket += Rational(b, b - a);
                    acc = acc.plus(pj.times(ul.times(itl->second, cap), cap)
                                       .scaled(ComplexRational::i_times(
                                           Rational(a * a * b, 16) * bracket)));
                }
            }
            // |k| = |j| - |l| term: u_j u_-j v_l v_-l v_k
            for (const auto& [l, vl] : V.comp) {
                const std::int64_t b = std::abs(l);
                if (c != a - b) continue;
                const auto itl = V.comp.find(-l);
                if (itl == V.comp.end()) continue;
                acc = acc.plus(pj.times(vl.times(itl->second, cap), cap)
                                   .scaled(ComplexRational::i_times(
                                       Rational(3 * a * b * c, 16))));
            }
        }
        add_to(k, acc.times(vk, cap));
    }
    return out;
}

}  // namespace

SymPair w5_field(const SymPair& p, int cap) {
    return {w5_component1(p, cap),
            w5_component1(swap_pair(p), cap).scaled(-ComplexRational(Rational(1)))};
}

SymPair expand_pushforward(const std::vector<int>& mode_set, int max_degree) {
    if (max_degree != 3 && max_degree != 5)
        throw std::invalid_argument("expand_pushforward: max_degree must be 3 or 5");
    const SymPair id = identity_pair(mode_set);
    const SymPair inside = x_field(phi4_subst(id, max_degree), max_degree);
    return neumann_sym(
        [&id, max_degree](const SymPair& q) { return k4_field(id, q, max_degree); }, inside);
}

SymPair expand_w(const std::vector<int>& mode_set, int cap, const Hook& hook) {
    const SymPair id = identity_pair(mode_set);
    const SymPair wz = phi5_subst(id, cap, hook);
    const SymPair inside = x_field(phi4_subst(wz, cap), cap);
    const SymPair xplus = neumann_sym(
        [&wz, cap](const SymPair& q) { return k4_field(wz, q, cap); }, inside);
    return neumann_sym(
        [&id, cap, &hook](const SymPair& q) { return k5_field(id, q, cap, hook); }, xplus);
}

SymPair expand_w5_direct(const std::vector<int>& mode_set) {
    return w5_field(identity_pair(mode_set), 5);
}

std::vector<CompareEntry> compare_fields(const SymPair& a, const SymPair& b) {
    std::vector<CompareEntry> out;
    auto scan = [&out](const SymField& fa, const SymField& fb, int component) {
        auto emit = [&](int mode, const Monomial& m, const ComplexRational& ca,
                        const ComplexRational& cb) {
            if (ca == cb) return;
            out.push_back({component, mode, m, ca, cb});
        };
        for (const auto& [k, pa] : fa.comp) {
            const auto it = fb.comp.find(k);
            for (const auto& [m, c] : pa.terms())
                emit(k, m, c,
                     (it == fb.comp.end())
                         ? ComplexRational()
                         : [&]() {
                               auto t = it->second.terms().find(m);
                               return t == it->second.terms().end() ? ComplexRational() : t->second;
                           }());
        }
        for (const auto& [k, pb] : fb.comp) {
            const auto it = fa.comp.find(k);
            for (const auto& [m, c] : pb.terms()) {
                const bool missing =
                    it == fa.comp.end() || it->second.terms().find(m) == it->second.terms().end();
                if (missing) emit(k, m, ComplexRational(), c);
            }
        }
    };
    scan(a.first, b.first, 1);
    scan(a.second, b.second, 2);
    return out;
}

HomologicalReport verify_homological_equation(const std::vector<int>& mode_set, const Hook& hook) {
    const int cap = 5;
    const SymPair id = identity_pair(mode_set);
    const SymPair lhs = w5_field(id, cap);
    SymPair rhs = x5_plus_field(id, cap);
    rhs = rhs.plus(d1_field(m5_field(id, id, cap, hook)));
    rhs = rhs.minus(k5_field(id, d1_field(id), cap, hook));
    HomologicalReport rep;
    rep.discrepancies = compare_fields(lhs, rhs);
    rep.exact = rep.discrepancies.empty();
    return rep;
}

FieldPair evaluate(const SymPair& f, const FieldPair& at) {
    FieldPair out(at.dim());
    for (const auto& [k, p] : f.first.comp) out.first.set(ModeIndex::d1(k), p.eval(at));
    for (const auto& [k, p] : f.second.comp) out.second.set(ModeIndex::d1(k), p.eval(at));
    return out;
}

void write_sym_pair(std::ostream& os, const SymPair& f) {
    auto dump = [&os](const SymField& field, int component) {
        for (const auto& [k, p] : field.comp)
            for (const auto& [m, c] : p.terms())
                os << component << ' ' << k << ' ' << m.str() << " : " << c.re.num() << '/'
                   << c.re.den() << ' ' << c.im.num() << '/' << c.im.den() << "\n";
    };
    dump(f.first, 1);
    dump(f.second, 2);
}

SymPair read_sym_pair(std::istream& is) {
    SymPair out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int component = 0, mode = 0;
        row >> component >> mode;
        Monomial m;
        std::string tok;
        while (row >> tok && tok != ":") {
            if (tok == "1") continue;
            const bool is_u = tok[0] == 'u';
            const int var_mode = std::stoi(tok.substr(2, tok.size() - 3));
            m.factors.push_back({is_u ? VarKind::u : VarKind::v, var_mode});
        }
        std::sort(m.factors.begin(), m.factors.end());
        auto read_rational = [&row]() {
            std::string frac;
            row >> frac;
            const auto slash = frac.find('/');
            return Rational(std::stoll(frac.substr(0, slash)), std::stoll(frac.substr(slash + 1)));
        };
        const Rational re = read_rational();
        const Rational im = read_rational();
        SymField& field = component == 1 ? out.first : out.second;
        auto it = field.comp.find(mode);
        if (it == field.comp.end()) it = field.comp.emplace(mode, Poly{}).first;
        it->second.add_term(m, ComplexRational(re, im));
    }
    return out;
}

}  // namespace kirch::oracle
