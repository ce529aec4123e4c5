#ifndef KIRCH_ORACLE_HPP
#define KIRCH_ORACLE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kirch/field.hpp"
#include "kirch/nf_coefficients.hpp"
#include "kirch/rational.hpp"

namespace kirch::oracle {

// Exact polynomial algebra in the Fourier coefficients {u_j, v_j} of a small
// symmetric d = 1 mode set. Every kernel is rational here, so the normal-form
// identities can be certified monomial by monomial, with no tolerance.

enum class VarKind : std::uint8_t { u = 0, v = 1 };

struct Var {
    VarKind kind = VarKind::u;
    int mode = 0;
    friend auto operator<=>(const Var&, const Var&) = default;
};

struct Monomial {
    std::vector<Var> factors;  // sorted: canonical form
    int degree() const { return int(factors.size()); }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    Monomial times(const Monomial& other) const;
    std::string str() const;
};

class Poly {
  public:
    static Poly constant(const ComplexRational& c);
    static Poly variable(Var v);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, ComplexRational>& terms() const { return terms_; }
    void add_term(const Monomial& m, const ComplexRational& c);

    Poly plus(const Poly& o) const;
    Poly minus(const Poly& o) const;
    Poly scaled(const ComplexRational& c) const;
    Poly times(const Poly& o, int degree_cap) const;
    Poly degree_slice(int degree) const;
    cd eval(const FieldPair& at) const;

  private:
    std::map<Monomial, ComplexRational> terms_;
};

struct SymField {
    std::map<int, Poly> comp;  // output mode -> coefficient polynomial
    SymField plus(const SymField& o) const;
    SymField minus(const SymField& o) const;
    SymField scaled(const ComplexRational& c) const;
    SymField poly_scaled(const Poly& p, int degree_cap) const;
    SymField lambda_mul() const;  // multiply mode-k entry by |k|
    SymField degree_slice(int degree) const;
    bool is_zero() const;
};

struct SymPair {
    SymField first, second;
    SymPair plus(const SymPair& o) const;
    SymPair minus(const SymPair& o) const;
    SymPair scaled(const ComplexRational& c) const;
    SymPair poly_scaled(const Poly& p, int cap) const;
    SymPair degree_slice(int degree) const;
    bool is_zero() const;
};

// Single-entry additive perturbation of the kernel table (sensitivity hook).
struct KernelPerturbation {
    QuinticKind kind = QuinticKind::A11;
    std::int64_t rj = 1, rl = 1, rk = 1;
    Rational delta = Rational(1, 1000);
};

using Hook = std::optional<KernelPerturbation>;

// (w_j, z_j) as plain variables over the mode set.
SymPair identity_pair(const std::vector<int>& mode_set);

// Taylor-exact vector field X of the order-one diagonal system, valid through
// total degree <= cap (cap <= 5).
SymPair x_field(const SymPair& p, int cap);

SymPair d1_field(const SymPair& p);
SymPair b3_field(const SymPair& p, int cap);
SymPair x3_plus_field(const SymPair& p, int cap);
Poly q_scalar(const SymPair& p, int cap);
// P(w,z) = sqrt(1 + 2 phi(Q(Phi4(w,z)))) - 1 expanded through degree cap.
Poly p_scalar(const SymPair& p, int cap);

SymPair phi4_subst(const SymPair& p, int cap);
SymPair k4_field(const SymPair& at, const SymPair& arg, int cap);
SymPair phi5_subst(const SymPair& p, int cap, const Hook& hook = {});
SymPair m5_field(const SymPair& at, const SymPair& arg, int cap, const Hook& hook = {});
SymPair k5_field(const SymPair& at, const SymPair& arg, int cap, const Hook& hook = {});

// Quintic part collected from the eight monomial families.
SymPair x5_plus_field(const SymPair& p, int cap);

// The four surviving resonant sums.
SymPair w5_field(const SymPair& p, int cap);

// (I + K)^{-1} X(Phi4(w,z)) truncated at max_degree (3 or 5): the exact
// once-normalized field over the mode set.
SymPair expand_pushforward(const std::vector<int>& mode_set, int max_degree);

// (I + K5)^{-1} X+(Phi5(u,v)) truncated at degree 5: the twice-normalized field.
SymPair expand_w(const std::vector<int>& mode_set, int cap, const Hook& hook = {});

// The resonant quintic core evaluated directly on plain variables.
SymPair expand_w5_direct(const std::vector<int>& mode_set);

struct CompareEntry {
    int component = 0;  // 1 or 2
    int mode = 0;
    Monomial monomial;
    ComplexRational a, b;
};

std::vector<CompareEntry> compare_fields(const SymPair& a, const SymPair& b);

struct HomologicalReport {
    bool exact = false;
    std::vector<CompareEntry> discrepancies;
};

// Checks W5 = X5+ + D1 M[u,v] - K D1(u,v) monomial by monomial over exact
// rationals; a hook perturbation must surface as a nonempty discrepancy list.
HomologicalReport verify_homological_equation(const std::vector<int>& mode_set,
                                              const Hook& hook = {});

// Evaluation homomorphism into numeric fields.
FieldPair evaluate(const SymPair& f, const FieldPair& at);

// One monomial per line with exact numerator/denominator coefficients.
void write_sym_pair(std::ostream& os, const SymPair& f);
SymPair read_sym_pair(std::istream& is);

}  // namespace kirch::oracle

#endif
