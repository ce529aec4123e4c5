#ifndef KIRCH_MODES_HPP
#define KIRCH_MODES_HPP

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kirch {

// Nonzero lattice site j in Z^d \ {0}, d in {1,2,3}. The zero mode is
// excluded everywhere: fields live in the zero-mean Sobolev scale.
struct ModeIndex {
    int dim = 1;
    std::array<int, 3> c{0, 0, 0};

    ModeIndex() = default;
    ModeIndex(int d, std::array<int, 3> comps) : dim(d), c(comps) {
        if (d < 1 || d > 3) throw std::invalid_argument("mode dimension must be 1, 2 or 3");
        for (int i = d; i < 3; ++i)
            if (c[i] != 0) throw std::invalid_argument("mode has components beyond its dimension");
        if (radius2() == 0) throw std::invalid_argument("zero mode is excluded");
    }
    static ModeIndex d1(int j) { return ModeIndex(1, {j, 0, 0}); }
    static ModeIndex d2(int j1, int j2) { return ModeIndex(2, {j1, j2, 0}); }
    static ModeIndex d3(int j1, int j2, int j3) { return ModeIndex(3, {j1, j2, j3}); }

    std::int64_t radius2() const {
        std::int64_t r = 0;
        for (int i = 0; i < dim; ++i) r += std::int64_t(c[i]) * c[i];
        return r;
    }
    double radius() const { return std::sqrt(double(radius2())); }
    ModeIndex negated() const {
        ModeIndex m = *this;
        for (int i = 0; i < dim; ++i) m.c[i] = -m.c[i];
        return m;
    }
    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

// All nonzero lattice points with |j|^2 <= max_radius2, in deterministic order.
std::vector<ModeIndex> lattice_ball(int dim, std::int64_t max_radius2);

// Distinct squared radii occurring in the ball, ascending.
std::vector<std::int64_t> radius_classes(int dim, std::int64_t max_radius2);

// Exact resonance tests on squared radii: sqrt(a2) == sqrt(b2) + sqrt(c2) etc.
// Decided in integer arithmetic; never through floating-point radii.
bool radius_eq(std::int64_t a2, std::int64_t b2);
bool radius_is_sum(std::int64_t a2, std::int64_t b2, std::int64_t c2);

}  // namespace kirch

#endif
