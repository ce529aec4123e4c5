#include "kirch/field.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace kirch {

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (other.dim_ != dim_ && !other.a_.empty())
        throw std::invalid_argument("field dimension mismatch");
    for (const auto& [j, v] : other.a_) a_[j] += v;
    return *this;
}

SpectralField& SpectralField::operator*=(cd scalar) {
    for (auto& [j, v] : a_) v *= scalar;
    return *this;
}

SpectralField SpectralField::conj_reflect() const {
    SpectralField out(dim_);
    for (const auto& [j, v] : a_) out.a_[j.negated()] = std::conj(v);
    return out;
}

std::map<std::int64_t, cd> SpectralField::sphere_pair_sums(const SpectralField& other) const {
    std::map<std::int64_t, cd> sums;
    for (const auto& [j, v] : a_) {
        const cd w = other.at(j.negated());
        if (v == cd(0.0, 0.0) || w == cd(0.0, 0.0)) {
            sums.try_emplace(j.radius2(), cd(0.0, 0.0));
            continue;
        }
        sums[j.radius2()] += v * w;
    }
    return sums;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& [j, v] : a_) m = std::max(m, std::abs(v));
    return m;
}

FieldPair make_cc_pair(const SpectralField& w) { return FieldPair(w, w.conj_reflect()); }

double cc_defect(const FieldPair& p) {
    double worst = 0.0;
    const SpectralField want = p.first.conj_reflect();
    for (const auto& [j, v] : want.coeffs()) worst = std::max(worst, std::abs(p.second.at(j) - v));
    for (const auto& [j, v] : p.second.coeffs()) worst = std::max(worst, std::abs(want.at(j) - v));
    return worst;
}

double reality_defect(const SpectralField& u) {
    double worst = 0.0;
    for (const auto& [j, v] : u.coeffs())
        worst = std::max(worst, std::abs(std::conj(v) - u.at(j.negated())));
    return worst;
}

FieldPair resymmetrize_cc(const FieldPair& p) {
    SpectralField w(p.dim());
    const SpectralField from_z = p.second.conj_reflect();
    for (const auto& [j, v] : p.first.coeffs()) w.set(j, 0.5 * (v + from_z.at(j)));
    for (const auto& [j, v] : from_z.coeffs())
        if (!w.in_support(j)) w.set(j, 0.5 * v);
    return make_cc_pair(w);
}

void write_field(std::ostream& os, const SpectralField& f) {
    os << "# field d=" << f.dim() << " max_radius2=" << f.support_radius2() << "\n";
    os.precision(17);
    for (const auto& [j, v] : f.coeffs()) {
        for (int i = 0; i < f.dim(); ++i) os << j.c[i] << ' ';
        os << v.real() << ' ' << v.imag() << "\n";
    }
    os << "# end field\n";
}

SpectralField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("field stream: missing header");
    int dim = 0;
    {
        auto pos = line.find("d=");
        if (line.rfind("# field", 0) != 0 || pos == std::string::npos)
            throw std::runtime_error("field stream: malformed header");
        dim = std::stoi(line.substr(pos + 2));
    }
    SpectralField f(dim);
    while (std::getline(is, line)) {
        if (line.rfind("# end field", 0) == 0) break;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::array<int, 3> c{0, 0, 0};
        for (int i = 0; i < dim; ++i)
            if (!(row >> c[i])) throw std::runtime_error("field stream: short record");
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) throw std::runtime_error("field stream: short record");
        f.set(ModeIndex(dim, c), cd(re, im));
    }
    return f;
}

}  // namespace kirch
