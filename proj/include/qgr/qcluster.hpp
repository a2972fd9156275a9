#pragma once

#include "qgr/json_io.hpp"
#include "qgr/qchar.hpp"
#include "qgr/qdata.hpp"

namespace qgr {

// Element of the ambient quantum torus of the initial seed: normalized
// exponent vectors over J (1-based, index 0 unused) with coefficients in
// Z[v^{+-1/2}] (TCoeff reused with v in place of t).
struct TorusElt {
    std::map<std::vector<long long>, TCoeff> terms;

    static TorusElt mono(const std::vector<long long>& a, const TCoeff& c = TCoeff::one());
    void add_term(const std::vector<long long>& a, const TCoeff& c);
    TCoeff coeff(const std::vector<long long>& a) const;
    TorusElt plus(const TorusElt& o) const;
    TorusElt minus(const TorusElt& o) const;
    TorusElt scale(const TCoeff& c) const;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const TorusElt& o) const { return terms == o.terms; }
};

struct QuantumSeed {
    CompatiblePair pair;                           // current Lambda and Btilde
    std::vector<std::vector<long long>> lambda0;   // ambient commutation matrix
    std::vector<TorusElt> vars;                    // current cluster variables, 1-based
};

// X^a X^b = v^{Lambda0(a,b)/2} X^{a+b} on normalized monomials
TorusElt torus_mul(const std::vector<std::vector<long long>>& lambda0, const TorusElt& x,
                   const TorusElt& y);
// T with T * s == x; throws when the division is not exact
TorusElt torus_divide_right(const std::vector<std::vector<long long>>& lambda0, const TorusElt& x,
                            const TorusElt& s);

QuantumSeed gls_seed(const ReducedWord& word);
QuantumSeed seed_from_qdatum(const QDatum& q);

// mutation in an exchangeable direction k (1-based member of J_e)
QuantumSeed mutate(const QuantumSeed& seed, int k);

bool pair_compatible(const CompatiblePair& cp);

nlohmann::json seed_to_json(const QuantumSeed& seed);

// The quantum-torus isomorphism data attached to a Q-datum: roots in the
// beta-sequence order of the adapted word, their KR-monomial images, and the
// kappa = Lambda certificate.
struct PhiT {
    std::vector<int> letters;
    std::vector<Weight> roots;
    std::vector<Monomial> images;
    std::vector<std::vector<long long>> lambda;
    bool kappa_ok = false;
    int bad_s = 0, bad_t = 0;
};

PhiT phi_t(const QDatum& q);

struct DetRecReport {
    bool ok = true;
    int checked = 0;
    std::string message;
};

// Recursively certifies that the truncated interval characters close under
// the exchange-relation shape of the quantum determinantal identities.
DetRecReport verify_det_vs_tsystem(const QDatum& q);

}  // namespace qgr
