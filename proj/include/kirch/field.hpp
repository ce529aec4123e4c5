#ifndef KIRCH_FIELD_HPP
#define KIRCH_FIELD_HPP

#include <complex>
#include <iosfwd>
#include <map>
#include <string>

#include "kirch/modes.hpp"

namespace kirch {

using cd = std::complex<double>;

// Finitely supported Fourier coefficients on Z^d \ {0}. The stored key set is
// the support; it is kept closed under j -> -j (missing partners are stored
// as explicit zeros). Coefficients at modes outside the support are zero.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(int dim) : dim_(dim) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("field dimension must be 1, 2 or 3");
    }

    int dim() const { return dim_; }
    const std::map<ModeIndex, cd>& coeffs() const { return a_; }
    bool empty() const { return a_.empty(); }

    cd at(const ModeIndex& j) const {
        auto it = a_.find(j);
        return it == a_.end() ? cd(0.0, 0.0) : it->second;
    }
    void set(const ModeIndex& j, cd value) {
        if (j.dim != dim_) throw std::invalid_argument("mode dimension mismatch");
        a_[j] = value;
        a_.try_emplace(j.negated(), cd(0.0, 0.0));
    }
    bool in_support(const ModeIndex& j) const { return a_.count(j) != 0; }
    std::int64_t support_radius2() const {
        std::int64_t r = 0;
        for (const auto& [j, v] : a_) r = std::max(r, j.radius2());
        return r;
    }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator*=(cd scalar);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator*(cd s, SpectralField f) { return f *= s; }
    friend SpectralField operator-(const SpectralField& a, const SpectralField& b) {
        SpectralField r = a;
        r += cd(-1.0, 0.0) * b;
        return r;
    }

    // Complex conjugate of the function:  (conj u)_j = conj(u_{-j}).
    SpectralField conj_reflect() const;

    // Per-sphere sums keyed by squared radius: lambda^2 -> sum_{|j|=lambda} this_j other_{-j}.
    std::map<std::int64_t, cd> sphere_pair_sums(const SpectralField& other) const;

    double max_abs() const;

  private:
    int dim_ = 1;
    std::map<ModeIndex, cd> a_;
};

// Pair (w, z); on the conjugate subspace z_k = conj(w_{-k}) this represents a
// real physical state in complex coordinates.
struct FieldPair {
    SpectralField first, second;
    FieldPair() = default;
    FieldPair(SpectralField f, SpectralField s) : first(std::move(f)), second(std::move(s)) {
        if (first.dim() != second.dim()) throw std::invalid_argument("pair dimension mismatch");
    }
    explicit FieldPair(int dim) : first(dim), second(dim) {}
    int dim() const { return first.dim(); }

    FieldPair& operator+=(const FieldPair& o) {
        first += o.first;
        second += o.second;
        return *this;
    }
    FieldPair& operator*=(cd s) {
        first *= s;
        second *= s;
        return *this;
    }
    friend FieldPair operator+(FieldPair a, const FieldPair& b) { return a += b; }
    friend FieldPair operator*(cd s, FieldPair p) { return p *= s; }
    friend FieldPair operator-(const FieldPair& a, const FieldPair& b) {
        FieldPair r = a;
        r += cd(-1.0, 0.0) * b;
        return r;
    }
    double max_abs() const { return std::max(first.max_abs(), second.max_abs()); }
};

FieldPair make_cc_pair(const SpectralField& w);
// Largest violation of z_k = conj(w_{-k}).
double cc_defect(const FieldPair& p);
// Largest violation of u_{-k} = conj(u_k).
double reality_defect(const SpectralField& u);
// Project back onto the conjugate subspace (average of z and conj-reflected w).
FieldPair resymmetrize_cc(const FieldPair& p);

struct RealPair {
    SpectralField position, velocity;
    int dim() const { return position.dim(); }
};

struct RegularityParams {
    double s = 0.0;
    double m0 = 1.0;
    double m1 = 1.0;
    double delta = 0.05;
    static RegularityParams for_dimension(int d, double s = 0.0, double delta = 0.05) {
        RegularityParams p;
        p.s = s;
        p.delta = delta;
        p.m0 = (d == 1) ? 1.0 : 1.5;
        p.m1 = (d == 1) ? 1.0 : 2.0;
        if (s < 0) throw std::invalid_argument("s must be >= 0");
        if (delta <= 0) throw std::invalid_argument("delta must be positive");
        return p;
    }
};

// Text-table serialization: one header line, then one record per mode
// (components..., re, im).
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);

}  // namespace kirch

#endif
