#pragma once

#include "qgr/json_io.hpp"
#include "qgr/qchar.hpp"
#include "qgr/qdata.hpp"

namespace qgr {

// factorization of a dominant monomial along the D-shifted windows of Q
struct QFactorization {
    std::map<int, Monomial> parts;  // k -> m_k, each supported on hat I_Q

    Monomial part(int k) const {
        auto it = parts.find(k);
        return it == parts.end() ? Monomial::unit() : it->second;
    }
};

QFactorization qfactorize(const QDatum& q, const Monomial& m);

// doubled twist exponent: nu2 = -sum_{k<l} (-1)^{k+l} (wt m_k, wt m_l)
long long nu2(const CoordinateMap& cm, const Monomial& m);

struct FacEReport {
    bool ok = false;
    long long nu2 = 0;
    std::string diff;
};

// E_t(m) = t^{nu} prod_k D_t^k(E_t(m_k)), checked exactly
FacEReport verify_facE(const CoordinateMap& cm, const Monomial& m);

struct PresentationReport {
    bool ok = true;
    int checked = 0;
    std::string first_failure;
};

// Serre / adjacent-window / distant-window relations among the canonical
// generators x_{v,k} for k in [k0, k1]
PresentationReport verify_presentation(const QDatum& q, int k0, int k1);

// type B bijection: dominant type-A_{2n-1} monomial on the lattice of
// xi_i = -i, mapped factor-wise and D-equivariantly to a type-B_n monomial
Monomial psi_b(const Monomial& m, int n);

QDatum ab_datum_a(int n);  // A_{2n-1} with xi_i = -i
QDatum ab_datum_b(int n);  // B_n with the paired height function

nlohmann::json psi_table_json(int n, int window);

}  // namespace qgr
