#include "qgr/rmatrix.hpp"

namespace qgr {

namespace {

bool ambiguous_case(const LieTypeData& g, int i, int j) {
    return g.d[i] == 1 && g.d[j] == 1 && g.r > 1;
}

}  // namespace

Denominator denominator_fund(const LieTypeData& g, int i, int j) {
    g.check_index(i);
    g.check_index(j);
    // use the index order with d_i >= d_j; the result is symmetric
    int a = i, b = j;
    if (g.d[a] < g.d[b]) std::swap(a, b);
    Denominator den;
    den.i = i;
    den.j = j;
    den.exact = !ambiguous_case(g, i, j);
    for (int u = 0; u <= g.rh_dual(); ++u) {
        int c = g.tilde_c(a, b, u);
        if (c < 0) throw std::logic_error("negative denominator multiplicity");
        if (c > 0) den.roots.push_back({u + g.d[a], c});
    }
    return den;
}

DInvariant dd_fund(const LieTypeData& g, int i, int p, int j, int s) {
    g.check_index(i);
    g.check_index(j);
    DInvariant out;
    out.exact = !ambiguous_case(g, i, j);
    int diff = p > s ? p - s : s - p;
    if (diff > g.rh_dual()) {
        out.value = 0;
        return out;
    }
    int a = i, b = j;
    if (g.d[a] < g.d[b]) std::swap(a, b);
    out.value = g.tilde_c(a, b, diff - g.d[a]);
    return out;
}

CommuteReport commute_fund(const LieTypeData& g, int i, int p, int j, int s) {
    DInvariant d = dd_fund(g, i, p, j, s);
    return CommuteReport{d.value == 0, d.exact};
}

}  // namespace qgr
