#include "kirch/random_states.hpp"

#include "kirch/functionals.hpp"

namespace kirch {

SpectralField random_field(int dim, std::int64_t max_radius2, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(dim);
    for (const auto& j : lattice_ball(dim, max_radius2)) f.set(j, cd(u(rng), u(rng)));
    return f;
}

SpectralField random_real_field(int dim, std::int64_t max_radius2, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(dim);
    for (const auto& j : lattice_ball(dim, max_radius2)) {
        if (j.negated() < j) continue;
        const cd v(u(rng), u(rng));
        f.set(j, v);
        f.set(j.negated(), std::conj(v));
    }
    return f;
}

SpectralField scaled_to_norm(const SpectralField& f, double s, double target) {
    const double n = sobolev_norm(f, s);
    if (n == 0.0) return f;
    SpectralField out = f;
    out *= cd(target / n, 0.0);
    return out;
}

FieldPair random_cc_pair(int dim, std::int64_t max_radius2, Rng& rng, double s, double target) {
    return make_cc_pair(scaled_to_norm(random_field(dim, max_radius2, rng), s, target));
}

RealPair random_real_pair(int dim, std::int64_t max_radius2, Rng& rng, double s, double target) {
    RealPair st;
    st.position = scaled_to_norm(random_real_field(dim, max_radius2, rng), s, target);
    st.velocity = scaled_to_norm(random_real_field(dim, max_radius2, rng), s, target);
    return st;
}

}  // namespace kirch
