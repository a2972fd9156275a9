#pragma once

#include "qgr/qtorus.hpp"
#include "qgr/weyl.hpp"

#include <memory>
#include <mutex>

namespace qgr {

// Q-datum: the unfolding of g together with a height function xi on Delta_0.
struct QDatum {
    const LieTypeData* g = nullptr;
    std::vector<int> xi;  // 1-based over Delta_0

    int rh_dual() const { return g->rh_dual(); }
    int dbar(int v) const { return g->d[g->orbit_of[v]]; }
    bool on_lattice(int v, int p) const;  // p - xi_v in 2 d_{bar v} Z
};

struct QValidation {
    bool ok = false;
    std::string message;
    // xi_v = epsilon_{bar v} + offset (mod 2), uniform when coherent; the
    // canonical choice is offset 0
    int parity_offset = -1;
};

QValidation validate_qdatum(const QDatum& q);
QDatum make_qdatum(const LieTypeData& g, const std::vector<int>& xi);  // throws when invalid

bool is_source(const QDatum& q, int v);
std::vector<int> sources(const QDatum& q);
QDatum source_reflect(const QDatum& q, int v);

// top vertex of the orbit of i under xi
int orbit_top(const QDatum& q, int i);
bool satisfies_tau_condition(const QDatum& q);

// generalized Coxeter element (order r h_dual)
WeylSigma tau_q(const QDatum& q);

// gamma_v = (1 - tau^{d_bar(v)}) varpi_v, a positive root
Weight gamma_root(const QDatum& q, int v);

// reduced word for w0 adapted to Q (repeated source extraction)
std::vector<int> adapted_word(const QDatum& q);

// Unique orbit member of i whose lattice contains p; throws if (i,p) is off
// the folded lattice of the datum.
int fold_inverse(const QDatum& q, int i, int p);

// Q-coordinates of the repetition quiver; windows grow on demand.
class CoordinateMap {
public:
    explicit CoordinateMap(const QDatum& q);

    std::pair<Weight, int> phi(int v, int p) const;
    std::pair<int, int> phi_inverse(const Weight& alpha, int k) const;
    std::pair<Weight, int> phi_folded(int i, int p) const;  // via fold_inverse
    Weight pi_phibar(int i, int p) const;                   // (-1)^k alpha

    const QDatum& datum() const { return q_; }

private:
    void ensure(int v, int p) const;

    QDatum q_;
    WeylSigma tau_;
    std::vector<WeylSigma> tau_pow_;      // tau^0..tau^{r}
    std::vector<WeylSigma> tau_pow_inv_;  // tau^0, tau^{-1}, ..., tau^{-r}
    mutable std::mutex mx_;
    mutable std::map<std::pair<int, int>, std::pair<Weight, int>> fwd_;
    mutable std::map<std::pair<std::vector<long long>, int>, std::pair<int, int>> rev_;
};

// vertices of the twisted AR quiver: xi_{v*} - rh < p <= xi_v on the lattice
std::vector<std::pair<int, int>> ar_vertices(const QDatum& q);

// arrows (v,p) -> (w,s) of the repetition quiver restricted to given vertices
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> ar_arrows(
    const QDatum& q, const std::vector<std::pair<int, int>>& vertices);

// Q-datum with hat I_Q = {(i,p) : b - rh < p <= b}
QDatum canonical_height(const LieTypeData& g, int b);

// deterministic pseudo-random valid Q-datum (canonical + source reflections)
QDatum random_qdatum(const LieTypeData& g, unsigned long long seed);

// Q-weight of a monomial: sum of u_{i,p} pi(phibar(i,p))
Weight wt_q(const CoordinateMap& cm, const Monomial& m);

// Xi_{ij}: max of xi'_j - xi'_i over valid height functions and orbit reps
int xi_bound(const LieTypeData& g, int i, int j);

// members of hat I_Q (folded AR vertices)
std::vector<std::pair<int, int>> hat_iq(const QDatum& q);
bool in_hat_iq(const QDatum& q, int i, int p);
bool in_leq_xi(const QDatum& q, int i, int p);  // folded I_{<= xi}
QTElement truncate_leq_xi(const QDatum& q, const QTElement& x);

std::string ar_ascii(const QDatum& q);
std::string ar_dot(const QDatum& q);
std::string root_label(const LieTypeData& g, const Weight& alpha);

}  // namespace qgr
