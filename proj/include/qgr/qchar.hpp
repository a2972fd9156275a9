#pragma once

#include "qgr/qtorus.hpp"

#include <stdexcept>

namespace qgr {

enum class CharKind { Classical, Ft, Et, Lt };

struct CharDiagnostics {
    long long fm_steps = 0;
    size_t support = 0;
    size_t poset = 0;
};

struct CharacterResult {
    Monomial m;
    CharKind kind = CharKind::Classical;
    QTElement elem;       // empty for purely classical results
    Classical classical;  // t = 1 character
    bool fm_applicable = true;
    std::string failure;  // reason when !fm_applicable
    CharDiagnostics diag;
};

// The classical completion algorithm hit its known failure mode (a second
// dominant monomial) or a resource guard; the partial character is attached.
class FMInapplicableError : public std::runtime_error {
public:
    FMInapplicableError(std::string why, CharacterResult partial)
        : std::runtime_error(std::move(why)), partial_(std::move(partial)) {}
    const CharacterResult& partial() const { return partial_; }

private:
    CharacterResult partial_;
};

class PosetBudgetError : public std::runtime_error {
public:
    PosetBudgetError(std::string why, size_t seen) : std::runtime_error(std::move(why)), seen_(seen) {}
    size_t poset_seen() const { return seen_; }

private:
    size_t seen_;
};

// classical q-character by string completion; never throws on the FM failure
// mode (the result carries fm_applicable = false and a partial character)
CharacterResult classical_fm(const LieTypeData& g, const Monomial& m);

// unique bar-invariant element with unique dominant monomial m (throws
// FMInapplicableError / std::logic_error on invariant failure)
CharacterResult ft(const LieTypeData& g, const Monomial& m);

// rank-1 instance of ft on the A1 lattice (arbitrary integer parameters)
QTElement sl2_ft(const Monomial& m);

// standard (q,t)-character: normalized ordered product of fundamental ft's
CharacterResult et(const LieTypeData& g, const Monomial& m);

struct LtResult {
    CharacterResult result;                // kind Lt
    std::map<Monomial, TCoeff> kl;         // m' -> P_{m,m'}(t), nonzero entries
    std::vector<Monomial> poset;           // dominant poset below m (descending)
};

LtResult lt(const LieTypeData& g, const Monomial& m, size_t poset_budget = 10000);
size_t default_poset_budget();  // QGR_BUDGET env override

// Kirillov-Reshetikhin interval monomial at a vertex of Delta: the product of
// Y_{bar v, p} over lattice points of [a,b] (with open ends as flagged).
Monomial kr_monomial(const LieTypeData& g, int vertex, int a, int b, bool closed_lo = true,
                     bool closed_hi = true);
QTElement ft_interval(const LieTypeData& g, int vertex, int a, int b, bool closed_lo = true,
                      bool closed_hi = true);

// F_t of a product of pairwise t-commuting dominant monomials, computed as
// the normalized ordered product of the factors' ft's; asserts the result is
// bar-invariant with a unique dominant monomial.
QTElement ft_commuting_product(const LieTypeData& g, const std::vector<Monomial>& factors);

// The neighbor-side monomials of the T-system at (vertex; p, s): for each
// adjacent orbit, one interval per adjacent member, on the canonically
// offset lattices (anchor p + d_ij + 2 d_ij t, spacing 2 d_j).
std::vector<Monomial> tsystem_m_factors(const LieTypeData& g, int vertex, int p, int s);

struct TSysReport {
    bool holds = false;
    int x2 = 0, y2 = 0;        // doubled exponents in the quantum identity
    bool xy_gap_ok = false;    // y - x = 1
    bool y_formula_ok = false; // y against the tilde_c expression
    std::string first_diff;
};

// Checks the T-system at (vertex; p, s), quantum or classical.
TSysReport verify_tsystem(const LieTypeData& g, int vertex, int p, int s, bool quantum);

struct TBosonReport {
    bool holds_plus = false;
    bool holds_minus = false;
    std::string diff;
};

TBosonReport verify_tboson(const LieTypeData& g, int i, int p);

// leading coefficient of the commutative monomial `top` in x; throws unless
// it is a single power of t^{1/2}
int top_t_exponent(const QTElement& x, const Monomial& top);

}  // namespace qgr
