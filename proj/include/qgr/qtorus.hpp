#pragma once

#include "qgr/liealg.hpp"

#include <functional>
#include <map>
#include <optional>

namespace qgr {

// Commutative monomial in the variables Y_{i,p}: sparse exponent map keyed by
// (i, p) in lexicographic order. The empty map is the unit.
struct Monomial {
    std::map<std::pair<int, int>, int> e;

    static Monomial unit() { return Monomial{}; }
    static Monomial var(int i, int p, int exp = 1);

    int exp(int i, int p) const;
    bool is_unit() const { return e.empty(); }
    Monomial mul(const Monomial& o) const;
    Monomial pow(int k) const;
    Monomial inverse() const { return pow(-1); }
    bool dominant() const;
    bool anti_dominant() const;
    bool i_dominant(int i) const;
    Monomial part_of(int i) const;  // only the Y_{i,*} factors

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    bool operator<(const Monomial& o) const { return e < o.e; }
    std::string str() const;  // "Y[i,p]^e ..."
};

// Laurent polynomial in t^{1/2}; keys are exponents doubled (coefficient of
// t^{k/2} under key k). No zero entries are stored.
struct TCoeff {
    std::map<int, long long> c;

    static TCoeff zero() { return TCoeff{}; }
    static TCoeff one();
    static TCoeff t_half_pow(int k);  // t^{k/2}

    bool is_zero() const { return c.empty(); }
    bool is_one() const;
    TCoeff plus(const TCoeff& o) const;
    TCoeff minus(const TCoeff& o) const;
    TCoeff times(const TCoeff& o) const;
    TCoeff times_t(int k) const;  // multiply by t^{k/2}
    TCoeff negate() const;
    TCoeff bar() const;  // t^{1/2} -> t^{-1/2}
    bool bar_invariant() const;
    long long eval_t1() const;
    // if the coefficient is a single power +-t^{k/2}, return (k, sign)
    bool single_power(int& k, long long& coeff) const;
    bool nonneg() const;
    bool operator==(const TCoeff& o) const { return c == o.c; }
    std::string str() const;
};

// Element of the quantum torus in the commutative-monomial basis.
struct QTElement {
    std::map<Monomial, TCoeff> terms;

    static QTElement zero() { return QTElement{}; }
    static QTElement scalar(const TCoeff& c);
    static QTElement monomial(const Monomial& m, const TCoeff& c = TCoeff::one());

    bool is_zero() const { return terms.empty(); }
    void add_term(const Monomial& m, const TCoeff& c);
    TCoeff coeff(const Monomial& m) const;
    QTElement plus(const QTElement& o) const;
    QTElement minus(const QTElement& o) const;
    QTElement scale(const TCoeff& c) const;
    QTElement times_t(int k) const;
    bool operator==(const QTElement& o) const { return terms == o.terms; }
    size_t size() const { return terms.size(); }
};

using Classical = std::map<Monomial, long long>;

// N(i,p;j,s): t-commutation exponent of Ytilde_{i,p} and Ytilde_{j,s}
int nn(const LieTypeData& g, int i, int p, int j, int s);
long long nn_mm(const LieTypeData& g, const Monomial& a, const Monomial& b);

// underline(a) * underline(b) = t^{N(a,b)/2} underline(ab), bilinearly
QTElement mul(const LieTypeData& g, const QTElement& a, const QTElement& b);
QTElement bar(const QTElement& x);
bool bar_invariant(const QTElement& x);

// A_{i,p} as a classical monomial; (i, p - d_i) must satisfy the parity
// condition of the ambient lattice when `check_parity`.
Monomial a_monomial(const LieTypeData& g, int i, int p);

// Nakajima order: a <= b iff b a^{-1}... (a <= b iff a^{-1} b is a product of
// A_{i,p}); the certificate maps (i,p) to the exponent of A_{i,p}.
std::optional<std::map<std::pair<int, int>, int>> nakajima_leq(const LieTypeData& g,
                                                               const Monomial& a,
                                                               const Monomial& b);

Monomial frakD_mono(const LieTypeData& g, const Monomial& m, int k);   // Y_{i,p} -> Y_{i*,p+rh}
Monomial omega_mono(const Monomial& m);                                // Y_{i,p} -> Y_{i,-p}^{-1}
Monomial omega_star_mono(const LieTypeData& g, const Monomial& m);     // Y_{i,p} -> Y_{i*,-p-rh}
QTElement frakD_t(const LieTypeData& g, const QTElement& x, int k);
QTElement omega_t(const LieTypeData& g, const QTElement& x);

// keep only monomials all of whose variables satisfy `keep`
QTElement truncate(const QTElement& x, const std::function<bool(int, int)>& keep);
QTElement truncate_leq_b(const QTElement& x, int b);
Classical truncate_leq_b(const Classical& x, int b);

Classical ev_t1(const QTElement& x);
Classical classical_mul(const Classical& a, const Classical& b);

// monomial literal: whitespace-separated product of Y[i,p] or Y[i,p]^e
Monomial parse_monomial(const std::string& text);

}  // namespace qgr
