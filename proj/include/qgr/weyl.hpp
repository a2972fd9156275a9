#pragma once

#include "qgr/liealg.hpp"

#include <optional>

namespace qgr {

// Weight of the unfolded simply-laced algebra, in fundamental-weight
// coordinates over Delta_0 (index 0 unused).
struct Weight {
    std::vector<long long> w;

    explicit Weight(int n = 0) : w(n + 1, 0) {}
    int size() const { return static_cast<int>(w.size()) - 1; }
    bool operator==(const Weight& o) const { return w == o.w; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const { return w < o.w; }
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    bool is_zero() const;
};

Weight fundamental_weight(const LieTypeData& g, int v);
Weight simple_root(const LieTypeData& g, int v);

// lambda - (lambda, alpha_v) alpha_v
Weight apply_reflection(const LieTypeData& g, int v, const Weight& lam);

// Coordinates of lam in the simple-root basis; throws unless lam lies in the
// root lattice of Delta.
std::vector<long long> alpha_coords(const LieTypeData& g, const Weight& lam);
Weight weight_from_alpha_coords(const LieTypeData& g, const std::vector<long long>& a);

// Symmetric bilinear form with (varpi_i, alpha_j) = delta_ij. The second
// argument must lie in the root lattice.
long long pairing(const LieTypeData& g, const Weight& lam, const Weight& root_lattice_elt);

bool is_positive_root(const LieTypeData& g, const Weight& lam);

// Element of W x <sigma> acting on weight coordinates.
struct WeylSigma {
    IntMatrix m;

    Weight apply(const Weight& lam) const;
    WeylSigma operator*(const WeylSigma& o) const { return WeylSigma{m * o.m}; }
    bool operator==(const WeylSigma& o) const { return m == o.m; }
};

WeylSigma weyl_identity(const LieTypeData& g);
WeylSigma weyl_reflection(const LieTypeData& g, int v);
WeylSigma weyl_sigma(const LieTypeData& g);
WeylSigma weyl_power(const WeylSigma& x, int k, int order_bound);
int weyl_order(const WeylSigma& x, int bound);
WeylSigma weyl_from_word(const LieTypeData& g, const std::vector<int>& letters);

// Reduced word over Delta_0 with its beta sequence cached.
struct ReducedWord {
    const LieTypeData* g = nullptr;
    std::vector<int> letters;
    std::vector<Weight> betas;  // beta_k = s_{i1}...s_{i(k-1)} alpha_{ik}

    int length() const { return static_cast<int>(letters.size()); }
};

// Validates reducedness via beta positivity/distinctness; throws
// std::invalid_argument naming the first offending position.
ReducedWord reduced_word(const LieTypeData& g, const std::vector<int>& letters);

std::vector<Weight> beta_sequence(const ReducedWord& word);

// Deterministic normal form of the commutation class: repeatedly emit the
// smallest available letter among those movable to the front.
std::vector<int> commutation_normal_form(const LieTypeData& g, const std::vector<int>& letters);
bool commutation_equal(const ReducedWord& a, const ReducedWord& b);

struct CompatiblePair {
    int ell = 0;                               // |J|
    std::vector<int> letters;                  // defining word
    std::vector<int> j_ex;                     // exchangeable indices, 1-based, ascending
    std::vector<char> frozen;                  // [1..ell], 1 if k in J_f
    std::vector<std::vector<long long>> lambda;   // ell x ell, skew-symmetric
    std::vector<std::vector<long long>> btilde;   // ell x |j_ex|
    long long scale = 2;
};

// GLS pair for a reduced word of w0; throws if the word is not for w0.
CompatiblePair gls_pair(const ReducedWord& word);

// Combinatorial AR quiver arrows of a w0-word: arrow from beta_k to beta_j
// (j < k) iff letters adjacent and no letter of either vertex lies between.
std::vector<std::pair<int, int>> ar_quiver_arrows(const ReducedWord& word);

}  // namespace qgr
