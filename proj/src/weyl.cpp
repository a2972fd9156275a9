#include "qgr/weyl.hpp"

#include <algorithm>
#include <set>

namespace qgr {

Weight Weight::operator+(const Weight& o) const {
    Weight r = *this;
    for (size_t k = 0; k < w.size(); ++k) r.w[k] += o.w[k];
    return r;
}

Weight Weight::operator-(const Weight& o) const {
    Weight r = *this;
    for (size_t k = 0; k < w.size(); ++k) r.w[k] -= o.w[k];
    return r;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.w) x = -x;
    return r;
}

bool Weight::is_zero() const {
    for (auto x : w)
        if (x != 0) return false;
    return true;
}

Weight fundamental_weight(const LieTypeData& g, int v) {
    g.check_delta_index(v);
    Weight lam(g.delta.n);
    lam.w[v] = 1;
    return lam;
}

Weight simple_root(const LieTypeData& g, int v) {
    g.check_delta_index(v);
    Weight lam(g.delta.n);
    lam.w[v] = 2;
    for (int u : g.delta.adj[v]) lam.w[u] = -1;
    return lam;
}

Weight apply_reflection(const LieTypeData& g, int v, const Weight& lam) {
    g.check_delta_index(v);
    Weight r = lam;
    long long c = lam.w[v];
    r.w[v] -= 2 * c;
    for (int u : g.delta.adj[v]) r.w[u] += c;
    return r;
}

std::vector<long long> alpha_coords(const LieTypeData& g, const Weight& lam) {
    int m = g.delta.n;
    std::vector<long long> a(m + 1, 0);
    for (int i = 1; i <= m; ++i) {
        long long s = 0;
        for (int j = 1; j <= m; ++j) s += g.delta_cartan_adj[i - 1][j - 1] * lam.w[j];
        if (s % g.delta_cartan_det != 0)
            throw std::invalid_argument("weight is not in the root lattice of Delta");
        a[i] = s / g.delta_cartan_det;
    }
    return a;
}

Weight weight_from_alpha_coords(const LieTypeData& g, const std::vector<long long>& a) {
    Weight lam(g.delta.n);
    for (int j = 1; j <= g.delta.n; ++j) {
        if (a[j] == 0) continue;
        for (int i = 1; i <= g.delta.n; ++i) lam.w[i] += a[j] * g.delta_cartan[i][j];
    }
    return lam;
}

long long pairing(const LieTypeData& g, const Weight& lam, const Weight& root_lattice_elt) {
    std::vector<long long> a = alpha_coords(g, root_lattice_elt);
    long long s = 0;
    for (int j = 1; j <= g.delta.n; ++j) s += a[j] * lam.w[j];
    return s;
}

bool is_positive_root(const LieTypeData& g, const Weight& lam) {
    std::vector<long long> a;
    try {
        a = alpha_coords(g, lam);
    } catch (const std::invalid_argument&) {
        return false;
    }
    bool nonzero = false;
    for (int j = 1; j <= g.delta.n; ++j) {
        if (a[j] < 0) return false;
        if (a[j] > 0) nonzero = true;
    }
    if (!nonzero) return false;
    // roots have squared length 2 in the simply-laced normalization
    return pairing(g, lam, lam) == 2;
}

Weight WeylSigma::apply(const Weight& lam) const {
    Weight r(m.n);
    for (int i = 0; i < m.n; ++i) {
        long long s = 0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * lam.w[j + 1];
        r.w[i + 1] = s;
    }
    return r;
}

WeylSigma weyl_identity(const LieTypeData& g) { return WeylSigma{IntMatrix::identity(g.delta.n)}; }

WeylSigma weyl_reflection(const LieTypeData& g, int v) {
    g.check_delta_index(v);
    IntMatrix s = IntMatrix::identity(g.delta.n);
    for (int j = 1; j <= g.delta.n; ++j) s.at(j - 1, v - 1) -= g.delta_cartan[j][v];
    return WeylSigma{s};
}

WeylSigma weyl_sigma(const LieTypeData& g) {
    IntMatrix s(g.delta.n);
    for (int v = 1; v <= g.delta.n; ++v) s.at(g.sigma[v] - 1, v - 1) = 1;
    return WeylSigma{s};
}

WeylSigma weyl_power(const WeylSigma& x, int k, int order_bound) {
    WeylSigma acc{IntMatrix::identity(x.m.n)};
    if (k >= 0) {
        for (int t = 0; t < k; ++t) acc = acc * x;
        return acc;
    }
    int ord = weyl_order(x, order_bound);
    int kk = ((k % ord) + ord) % ord;
    for (int t = 0; t < kk; ++t) acc = acc * x;
    return acc;
}

int weyl_order(const WeylSigma& x, int bound) {
    WeylSigma acc = x;
    for (int k = 1; k <= bound; ++k) {
        if (acc.m.is_identity()) return k;
        acc = acc * x;
    }
    throw std::logic_error("group element order exceeds bound");
}

WeylSigma weyl_from_word(const LieTypeData& g, const std::vector<int>& letters) {
    WeylSigma acc = weyl_identity(g);
    for (int v : letters) acc = acc * weyl_reflection(g, v);
    return acc;
}

ReducedWord reduced_word(const LieTypeData& g, const std::vector<int>& letters) {
    ReducedWord w;
    w.g = &g;
    w.letters = letters;
    std::set<Weight> seen;
    WeylSigma acc = weyl_identity(g);
    for (size_t k = 0; k < letters.size(); ++k) {
        g.check_delta_index(letters[k]);
        Weight beta = acc.apply(simple_root(g, letters[k]));
        if (!is_positive_root(g, beta))
            throw std::invalid_argument("word is not reduced: beta_" + std::to_string(k + 1) +
                                        " is not a positive root");
        if (!seen.insert(beta).second)
            throw std::invalid_argument("word is not reduced: beta_" + std::to_string(k + 1) +
                                        " repeats an earlier root");
        w.betas.push_back(beta);
        acc = acc * weyl_reflection(g, letters[k]);
    }
    return w;
}

std::vector<Weight> beta_sequence(const ReducedWord& word) { return word.betas; }

std::vector<int> commutation_normal_form(const LieTypeData& g, const std::vector<int>& letters) {
    std::vector<int> rest = letters;
    std::vector<int> out;
    while (!rest.empty()) {
        // positions movable to the front: commute with everything before them
        size_t best = rest.size();
        for (size_t p = 0; p < rest.size(); ++p) {
            bool movable = true;
            for (size_t q = 0; q < p; ++q) {
                if (rest[q] == rest[p] || g.delta.adjacent(rest[q], rest[p])) {
                    movable = false;
                    break;
                }
            }
            if (movable && (best == rest.size() || rest[p] < rest[best])) best = p;
        }
        out.push_back(rest[best]);
        rest.erase(rest.begin() + static_cast<long>(best));
    }
    return out;
}

bool commutation_equal(const ReducedWord& a, const ReducedWord& b) {
    const LieTypeData& g = *a.g;
    if (a.g != b.g) throw std::invalid_argument("words over different types");
    if (!(weyl_from_word(g, a.letters) == weyl_from_word(g, b.letters)))
        throw std::invalid_argument("words represent different Weyl group elements");
    return commutation_normal_form(g, a.letters) == commutation_normal_form(g, b.letters);
}

CompatiblePair gls_pair(const ReducedWord& word) {
    const LieTypeData& g = *word.g;
    int ell = word.length();
    if (ell != g.ell0) throw std::invalid_argument("word is not a reduced word for w0");

    const auto& letters = word.letters;
    auto kplus = [&](int k) {  // 1-based; ell+1 when absent
        for (int j = k + 1; j <= ell; ++j)
            if (letters[j - 1] == letters[k - 1]) return j;
        return ell + 1;
    };

    CompatiblePair cp;
    cp.ell = ell;
    cp.letters = letters;
    cp.frozen.assign(ell + 1, 0);
    for (int k = 1; k <= ell; ++k) {
        if (kplus(k) == ell + 1)
            cp.frozen[k] = 1;
        else
            cp.j_ex.push_back(k);
    }

    // prefix products w_{<=k}
    std::vector<WeylSigma> pref;
    pref.push_back(weyl_identity(g));
    for (int k = 1; k <= ell; ++k) pref.push_back(pref.back() * weyl_reflection(g, letters[k - 1]));

    cp.lambda.assign(ell + 1, std::vector<long long>(ell + 1, 0));
    for (int s = 1; s <= ell; ++s)
        for (int t = s + 1; t <= ell; ++t) {
            Weight ws = fundamental_weight(g, letters[s - 1]);
            Weight wt = fundamental_weight(g, letters[t - 1]);
            Weight a = ws - pref[s].apply(ws);  // in the root lattice
            Weight b = wt + pref[t].apply(wt);
            long long v = pairing(g, b, a);
            cp.lambda[s][t] = v;
            cp.lambda[t][s] = -v;
        }

    cp.btilde.assign(ell + 1, std::vector<long long>(cp.j_ex.size(), 0));
    for (size_t tc = 0; tc < cp.j_ex.size(); ++tc) {
        int t = cp.j_ex[tc];
        for (int s = 1; s <= ell; ++s) {
            int sp = kplus(s), tp = kplus(t);
            long long v = 0;
            if (t == sp)
                v = 1;
            else if (s == tp)
                v = -1;
            else if (t < s && s < tp && tp < sp && g.delta.adjacent(letters[s - 1], letters[t - 1]))
                v = 1;
            else if (s < t && t < sp && sp < tp && g.delta.adjacent(letters[s - 1], letters[t - 1]))
                v = -1;
            cp.btilde[s][tc] = v;
        }
    }

    for (size_t sc = 0; sc < cp.j_ex.size(); ++sc)
        for (int t = 1; t <= ell; ++t) {
            long long sum = 0;
            for (int k = 1; k <= ell; ++k) sum += cp.btilde[k][sc] * cp.lambda[k][t];
            long long want = (cp.j_ex[sc] == t) ? cp.scale : 0;
            if (sum != want) throw std::logic_error("GLS pair compatibility failed");
        }
    return cp;
}

std::vector<std::pair<int, int>> ar_quiver_arrows(const ReducedWord& word) {
    const auto& letters = word.letters;
    int ell = word.length();
    const LieTypeData& g = *word.g;
    std::vector<std::pair<int, int>> arrows;  // (k, j): beta_k -> beta_j, j < k
    for (int k = 1; k <= ell; ++k)
        for (int j = 1; j < k; ++j) {
            if (!g.delta.adjacent(letters[j - 1], letters[k - 1])) continue;
            bool blocked = false;
            for (int q = j + 1; q < k; ++q)
                if (letters[q - 1] == letters[j - 1] || letters[q - 1] == letters[k - 1]) {
                    blocked = true;
                    break;
                }
            if (!blocked) arrows.emplace_back(k, j);
        }
    return arrows;
}

}  // namespace qgr
