#ifndef KIRCH_INTEGRATE_HPP
#define KIRCH_INTEGRATE_HPP

#include <functional>

#include "kirch/shell.hpp"

namespace kirch {

// Classic fourth-order Runge-Kutta over any state with + and scalar *.
template <typename State, typename Rhs>
State rk4_step(const State& y, double dt, Rhs&& rhs) {
    const State k1 = rhs(y);
    const State k2 = rhs(y + (0.5 * dt) * k1);
    const State k3 = rhs(y + (0.5 * dt) * k2);
    const State k4 = rhs(y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Vector-space wrappers for the three state shapes.
struct PairState {
    FieldPair p;
    friend PairState operator+(PairState a, const PairState& b) {
        a.p += b.p;
        return a;
    }
    friend PairState operator*(double s, PairState a) {
        a.p *= cd(s, 0.0);
        return a;
    }
};

struct RealState {
    RealPair r;
    friend RealState operator+(RealState a, const RealState& b) {
        a.r.position += b.r.position;
        a.r.velocity += b.r.velocity;
        return a;
    }
    friend RealState operator*(double s, RealState a) {
        a.r.position *= cd(s, 0.0);
        a.r.velocity *= cd(s, 0.0);
        return a;
    }
};

struct ShellState {
    ShellSpectrum spec;
    friend ShellState operator+(ShellState a, const ShellState& b) {
        for (auto& [l2, v] : a.spec.S) v += b.spec.S.at(l2);
        for (auto& [l2, v] : a.spec.B) v += b.spec.B.at(l2);
        return a;
    }
    friend ShellState operator*(double s, ShellState a) {
        for (auto& [l2, v] : a.spec.S) v *= s;
        for (auto& [l2, v] : a.spec.B) v *= s;
        return a;
    }
};

}  // namespace kirch

#endif
