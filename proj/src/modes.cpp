#include "kirch/modes.hpp"

#include <algorithm>
#include <set>

namespace kirch {

std::vector<ModeIndex> lattice_ball(int dim, std::int64_t max_radius2) {
    if (max_radius2 < 1) throw std::invalid_argument("lattice ball must contain a nonzero mode");
    const int n = int(std::floor(std::sqrt(double(max_radius2)))) + 1;
    std::vector<ModeIndex> out;
    auto push = [&](std::array<int, 3> c) {
        ModeIndex m;
        m.dim = dim;
        m.c = c;
        if (m.radius2() > 0 && m.radius2() <= max_radius2) out.push_back(m);
    };
    if (dim == 1) {
        for (int a = -n; a <= n; ++a) push({a, 0, 0});
    } else if (dim == 2) {
        for (int a = -n; a <= n; ++a)
            for (int b = -n; b <= n; ++b) push({a, b, 0});
    } else if (dim == 3) {
        for (int a = -n; a <= n; ++a)
            for (int b = -n; b <= n; ++b)
                for (int c = -n; c <= n; ++c) push({a, b, c});
    } else {
        throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> radius_classes(int dim, std::int64_t max_radius2) {
    std::set<std::int64_t> r2;
    for (const auto& m : lattice_ball(dim, max_radius2)) r2.insert(m.radius2());
    return std::vector<std::int64_t>(r2.begin(), r2.end());
}

bool radius_eq(std::int64_t a2, std::int64_t b2) { return a2 == b2; }

bool radius_is_sum(std::int64_t a2, std::int64_t b2, std::int64_t c2) {
    // sqrt(a2) = sqrt(b2) + sqrt(c2)  <=>  a2 - b2 - c2 = 2 sqrt(b2 c2) >= 0
    const std::int64_t d = a2 - b2 - c2;
    if (d < 0) return false;
    return (__int128)d * d == (__int128)4 * b2 * c2;
}

}  // namespace kirch
