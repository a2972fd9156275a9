#pragma once

#include "qgr/liealg.hpp"

#include <vector>

namespace qgr {

// Denominator data of the normalized R-matrix between two fundamental
// modules: the multiset of root exponents u + d_i with multiplicity
// tilde_c_{ij}(u), u in [0, r h_dual]. `exact` is false only in the
// ambiguous case d_i = d_j = 1 < r, where the data is an upper bound.
struct Denominator {
    int i = 0, j = 0;
    std::vector<std::pair<int, int>> roots;  // (exponent of q, multiplicity)
    bool exact = true;
};

Denominator denominator_fund(const LieTypeData& g, int i, int j);

struct DInvariant {
    int value = 0;
    bool exact = true;
};

// d-invariant bound between L(Y_{i,p}) and L(Y_{j,s})
DInvariant dd_fund(const LieTypeData& g, int i, int p, int j, int s);

struct CommuteReport {
    bool commute = false;
    bool exact = true;  // false in the d_i = d_j = 1 < r ambiguity
};

CommuteReport commute_fund(const LieTypeData& g, int i, int p, int j, int s);

}  // namespace qgr
