#include "qgr/liealg.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <numeric>
#include <set>

namespace qgr {

Family family_from_char(char c) {
    switch (c) {
        case 'A': return Family::A;
        case 'B': return Family::B;
        case 'C': return Family::C;
        case 'D': return Family::D;
        case 'E': return Family::E;
        case 'F': return Family::F;
        case 'G': return Family::G;
        default: throw std::invalid_argument(std::string("unknown family '") + c + "'");
    }
}

std::string family_name(Family f) { return std::string(1, static_cast<char>(f)); }

bool Diagram::adjacent(int a, int b) const {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix res(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) res.at(i, j) += v * o.at(k, j);
        }
    return res;
}

bool IntMatrix::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_minus_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? -1 : 0)) return false;
    return true;
}

namespace {

// ---- Laurent polynomials over Z, for inverting C(z) exactly ----

struct LP {
    int lo = 0;
    std::vector<long long> c;  // coefficient of z^(lo+k)

    void trim() {
        size_t b = 0;
        while (b < c.size() && c[b] == 0) ++b;
        size_t e = c.size();
        while (e > b && c[e - 1] == 0) --e;
        if (b == e) { lo = 0; c.clear(); return; }
        c = std::vector<long long>(c.begin() + b, c.begin() + e);
        lo += static_cast<int>(b);
    }
    bool zero() const { return c.empty(); }
};

LP lp_zero() { return LP{}; }

LP lp_mono(long long coeff, int deg) {
    LP p;
    if (coeff != 0) { p.lo = deg; p.c = {coeff}; }
    return p;
}

LP lp_add(const LP& a, const LP& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    int lo = std::min(a.lo, b.lo);
    int hi = std::max(a.lo + static_cast<int>(a.c.size()), b.lo + static_cast<int>(b.c.size()));
    LP r;
    r.lo = lo;
    r.c.assign(hi - lo, 0);
    for (size_t k = 0; k < a.c.size(); ++k) r.c[a.lo - lo + k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[b.lo - lo + k] += b.c[k];
    r.trim();
    return r;
}

LP lp_neg(const LP& a) {
    LP r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

LP lp_mul(const LP& a, const LP& b) {
    if (a.zero() || b.zero()) return lp_zero();
    LP r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

// quantum integer [k]_z for k <= 0 handled via [-k]_z negation
LP lp_qint(int k) {
    if (k == 0) return lp_zero();
    bool neg = k < 0;
    int m = neg ? -k : k;
    LP p;
    p.lo = 1 - m;
    p.c.assign(2 * m - 1, 0);
    for (int t = 0; t < m; ++t) p.c[2 * t] = 1;
    if (neg) p = lp_neg(p);
    return p;
}

// determinant of an n x n Laurent-polynomial matrix (cofactor expansion)
LP lp_det(const std::vector<std::vector<LP>>& m, std::vector<int> cols, int row) {
    if (cols.empty()) return lp_mono(1, 0);
    LP acc = lp_zero();
    for (size_t t = 0; t < cols.size(); ++t) {
        const LP& piv = m[row][cols[t]];
        if (piv.zero()) continue;
        std::vector<int> rest;
        for (size_t s = 0; s < cols.size(); ++s)
            if (s != t) rest.push_back(cols[s]);
        LP sub = lp_det(m, rest, row + 1);
        LP term = lp_mul(piv, sub);
        if (t % 2 == 1) term = lp_neg(term);
        acc = lp_add(acc, term);
    }
    return acc;
}

LP lp_full_det(const std::vector<std::vector<LP>>& m) {
    std::vector<int> cols(m.size());
    std::iota(cols.begin(), cols.end(), 0);
    return lp_det(m, cols, 0);
}

// Coefficients of num/den expanded at z=0, for z^0 .. z^(deg-1).
std::vector<long long> lp_series_quotient(const LP& num, const LP& den, int deg) {
    if (den.zero()) throw std::logic_error("series division by zero");
    std::vector<long long> out(deg, 0);
    if (num.zero()) return out;
    long long c0 = den.c[0];
    if (c0 != 1 && c0 != -1) throw std::logic_error("quantum Cartan determinant not unital at lowest order");
    // den = z^den.lo * D(z) with D(0) = c0; invert D to the needed order.
    int shift = num.lo - den.lo;  // num/den = z^shift * N(z)/D(z)
    int need = deg - shift;
    if (need <= 0) return out;
    std::vector<long long> inv(need, 0);
    inv[0] = c0;  // c0 == 1/c0 for c0 = +-1
    for (int k = 1; k < need; ++k) {
        long long s = 0;
        for (int j = 1; j <= k && j < static_cast<int>(den.c.size()); ++j) s += den.c[j] * inv[k - j];
        inv[k] = -c0 * s;
    }
    for (int k = 0; k < need; ++k) {
        long long s = 0;
        for (int j = 0; j <= k && j < static_cast<int>(num.c.size()); ++j) s += num.c[j] * inv[k - j];
        int u = k + shift;
        if (u >= 0 && u < deg) out[u] = s;
    }
    return out;
}

Diagram make_path(int n) {
    Diagram d;
    d.n = n;
    d.adj.assign(n + 1, {});
    for (int i = 1; i < n; ++i) {
        d.adj[i].push_back(i + 1);
        d.adj[i + 1].push_back(i);
    }
    for (auto& v : d.adj) std::sort(v.begin(), v.end());
    return d;
}

Diagram make_D(int m) {
    // path 1..m-2 with leaves m-1 and m attached to m-2
    if (m < 3) throw std::invalid_argument("D diagram needs >= 3 vertices");
    Diagram d = make_path(m - 1);
    d.n = m;
    d.adj.resize(m + 1);
    d.adj[m - 2].push_back(m);
    d.adj[m].push_back(m - 2);
    for (auto& v : d.adj) std::sort(v.begin(), v.end());
    return d;
}

Diagram make_E(int m) {
    // chain 1-3-4-5-...-m with 2 attached to 4
    Diagram d;
    d.n = m;
    d.adj.assign(m + 1, {});
    auto link = [&](int a, int b) {
        d.adj[a].push_back(b);
        d.adj[b].push_back(a);
    };
    link(1, 3);
    link(3, 4);
    link(2, 4);
    for (int v = 4; v < m; ++v) link(v, v + 1);
    for (auto& v : d.adj) std::sort(v.begin(), v.end());
    return d;
}

std::vector<std::vector<int>> simply_laced_cartan(const Diagram& dg) {
    std::vector<std::vector<int>> c(dg.n + 1, std::vector<int>(dg.n + 1, 0));
    for (int i = 1; i <= dg.n; ++i) {
        c[i][i] = 2;
        for (int j : dg.adj[i]) c[i][j] = -1;
    }
    return c;
}

long long count_positive_roots(const std::vector<std::vector<int>>& cartan) {
    int n = static_cast<int>(cartan.size()) - 1;
    std::set<std::vector<long long>> roots;
    std::vector<std::vector<long long>> frontier;
    for (int i = 1; i <= n; ++i) {
        std::vector<long long> a(n + 1, 0);
        for (int k = 1; k <= n; ++k) a[k] = cartan[k][i];
        roots.insert(a);
        frontier.push_back(a);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<long long>> next;
        for (const auto& v : frontier)
            for (int i = 1; i <= n; ++i) {
                std::vector<long long> w = v;
                long long vi = v[i];
                for (int k = 1; k <= n; ++k) w[k] -= vi * cartan[k][i];
                if (roots.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
    }
    return static_cast<long long>(roots.size()) / 2;
}

std::vector<int> closed_form_star(char fam, int m) {
    std::vector<int> st(m + 1);
    for (int i = 1; i <= m; ++i) st[i] = i;
    if (fam == 'A') {
        for (int i = 1; i <= m; ++i) st[i] = m + 1 - i;
    } else if (fam == 'D') {
        if (m % 2 == 1) std::swap(st[m - 1], st[m]);
    } else if (fam == 'E' && m == 6) {
        st[1] = 6; st[6] = 1; st[3] = 5; st[5] = 3;
    }
    return st;
}

}  // namespace

std::vector<int> longest_word_of(const std::vector<std::vector<int>>& cartan) {
    int n = static_cast<int>(cartan.size()) - 1;
    std::vector<long long> lam(n + 1, 1);
    std::vector<int> word;
    for (;;) {
        int pick = 0;
        for (int i = 1; i <= n; ++i)
            if (lam[i] > 0) { pick = i; break; }
        if (pick == 0) break;
        long long li = lam[pick];
        for (int j = 1; j <= n; ++j) lam[j] -= li * cartan[j][pick];
        word.push_back(pick);
        if (word.size() > 100000) throw std::logic_error("longest word search runaway");
    }
    return word;
}

std::vector<int> star_brute_force(const std::vector<std::vector<int>>& cartan) {
    int n = static_cast<int>(cartan.size()) - 1;
    std::vector<int> word = longest_word_of(cartan);
    // w0 as a matrix on fundamental-weight coordinates
    IntMatrix w0 = IntMatrix::identity(n);
    for (int idx : word) {
        IntMatrix s = IntMatrix::identity(n);
        for (int j = 1; j <= n; ++j) s.at(j - 1, idx - 1) -= cartan[j][idx];
        w0 = w0 * s;
    }
    std::vector<int> st(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        std::vector<long long> img(n, 0);
        for (int rrow = 0; rrow < n; ++rrow)
            for (int k = 0; k < n; ++k) img[rrow] += w0.at(rrow, k) * cartan[k + 1][i];
        for (int j = 1; j <= n; ++j) {
            bool match = true;
            for (int rrow = 0; rrow < n; ++rrow)
                if (img[rrow] != -cartan[rrow + 1][j]) { match = false; break; }
            if (match) { st[i] = j; break; }
        }
        if (st[i] == 0) throw std::logic_error("w0 image of a simple root is not minus a simple root");
    }
    return st;
}

struct LieTypeBuilder {
    static std::unique_ptr<LieTypeData> build(Family f, int n) {
        validate(f, n);
        auto g = std::unique_ptr<LieTypeData>(new LieTypeData());
        g->family = f;
        g->rank = n;

        switch (f) {
            case Family::A:
                g->delta = make_path(n);
                g->h_dual = n + 1;
                break;
            case Family::B:
                g->delta = make_path(2 * n - 1);
                g->h_dual = 2 * n - 1;
                break;
            case Family::C:
                g->delta = make_D(n + 1);
                g->h_dual = n + 1;
                break;
            case Family::D:
                g->delta = make_D(n);
                g->h_dual = 2 * n - 2;
                break;
            case Family::E:
                g->delta = make_E(n);
                g->h_dual = n == 6 ? 12 : n == 7 ? 18 : 30;
                break;
            case Family::F:
                g->delta = make_E(6);
                g->h_dual = 9;
                break;
            case Family::G:
                g->delta = make_D(4);
                g->h_dual = 4;
                break;
        }

        int m = g->delta.n;
        g->sigma.assign(m + 1, 0);
        for (int v = 1; v <= m; ++v) g->sigma[v] = v;
        g->orbit_of.assign(m + 1, 0);
        switch (f) {
            case Family::A:
            case Family::D:
            case Family::E:
                for (int v = 1; v <= m; ++v) g->orbit_of[v] = v;
                break;
            case Family::B:
                for (int v = 1; v <= m; ++v) {
                    g->sigma[v] = 2 * n - v;
                    g->orbit_of[v] = std::min(v, 2 * n - v);
                }
                break;
            case Family::C:
                g->sigma[n] = n + 1;
                g->sigma[n + 1] = n;
                for (int v = 1; v <= m; ++v) g->orbit_of[v] = std::min(v, n);
                break;
            case Family::F:
                g->sigma[1] = 6; g->sigma[6] = 1;
                g->sigma[3] = 5; g->sigma[5] = 3;
                g->orbit_of[1] = g->orbit_of[6] = 1;
                g->orbit_of[3] = g->orbit_of[5] = 2;
                g->orbit_of[4] = 3;
                g->orbit_of[2] = 4;
                break;
            case Family::G:
                g->sigma[1] = 3; g->sigma[3] = 4; g->sigma[4] = 1;
                g->orbit_of[1] = g->orbit_of[3] = g->orbit_of[4] = 1;
                g->orbit_of[2] = 2;
                break;
        }

        g->orbit_members.assign(n + 1, {});
        for (int v = 1; v <= m; ++v) g->orbit_members[g->orbit_of[v]].push_back(v);
        g->r = 1;
        g->d.assign(n + 1, 0);
        for (int i = 1; i <= n; ++i) {
            if (g->orbit_members[i].empty()) throw std::logic_error("empty sigma-orbit");
            g->d[i] = static_cast<int>(g->orbit_members[i].size());
            g->r = std::max(g->r, g->d[i]);
        }

        g->delta_cartan = simply_laced_cartan(g->delta);
        g->cartan.assign(n + 1, std::vector<int>(n + 1, 0));
        for (int i = 1; i <= n; ++i) {
            g->cartan[i][i] = 2;
            int rep = g->orbit_members[i][0];
            for (int j = 1; j <= n; ++j) {
                if (j == i) continue;
                int cnt = 0;
                for (int w : g->orbit_members[j])
                    if (g->delta.adjacent(rep, w)) ++cnt;
                g->cartan[i][j] = -cnt;
            }
        }
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (static_cast<long long>(g->d[i]) * g->cartan[i][j] !=
                    static_cast<long long>(g->d[j]) * g->cartan[j][i])
                    throw std::logic_error("DC is not symmetric");

        g->ell0 = count_positive_roots(g->delta_cartan);
        if (static_cast<long long>(n) * g->r * g->h_dual != 2 * g->ell0)
            throw std::logic_error("n r h_dual != 2 ell0");

        // parity function: BFS 2-coloring with epsilon_1 = 0
        g->epsilon.assign(n + 1, -1);
        g->epsilon[1] = 0;
        std::vector<int> queue = {1};
        while (!queue.empty()) {
            int i = queue.back();
            queue.pop_back();
            for (int j = 1; j <= n; ++j) {
                if (j == i || g->cartan[i][j] == 0) continue;
                int want = (g->epsilon[i] + g->dij(i, j)) & 1;
                if (g->epsilon[j] == -1) {
                    g->epsilon[j] = want;
                    queue.push_back(j);
                } else if (g->epsilon[j] != want) {
                    throw std::logic_error("no parity function exists");
                }
            }
        }

        // star involutions, checked against the brute-force w0 computation
        g->delta_star = star_brute_force(g->delta_cartan);
        char dfam = (f == Family::A || f == Family::B) ? 'A'
                    : (f == Family::E || f == Family::F) ? 'E'
                                                         : 'D';
        std::vector<int> closed = closed_form_star(dfam, m);
        if (closed != g->delta_star) throw std::logic_error("delta star mismatch vs closed form");
        g->i_star_tab.assign(n + 1, 0);
        for (int i = 1; i <= n; ++i) g->i_star_tab[i] = g->orbit_of[g->delta_star[g->orbit_members[i][0]]];
        std::vector<int> folded_star = star_brute_force(g->cartan);
        if (folded_star != g->i_star_tab) throw std::logic_error("folded star mismatch");

        build_tc(*g);

        // adjugate of delta_cartan for exact alpha-coordinate solves
        build_delta_adjugate(*g);
        return g;
    }

    static void validate(Family f, int n) {
        auto bad = [&](const char* why) {
            throw std::invalid_argument("invalid type " + family_name(f) + std::to_string(n) + ": " + why);
        };
        switch (f) {
            case Family::A: if (n < 1) bad("rank must be >= 1"); break;
            case Family::B: if (n < 2) bad("rank must be >= 2"); break;
            case Family::C: if (n < 2) bad("rank must be >= 2"); break;
            case Family::D: if (n < 4) bad("rank must be >= 4"); break;
            case Family::E: if (n < 6 || n > 8) bad("rank must be 6, 7 or 8"); break;
            case Family::F: if (n != 4) bad("rank must be 4"); break;
            case Family::G: if (n != 2) bad("rank must be 2"); break;
        }
        if (n > 40) throw std::invalid_argument("rank too large");
    }

    static void build_tc(LieTypeData& g) {
        int n = g.rank;
        int period = 2 * g.r * g.h_dual;
        g.tc_period_ = period;
        std::vector<std::vector<LP>> cz(n, std::vector<LP>(n));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j)
                    cz[i - 1][j - 1] = lp_add(lp_mono(1, g.d[i]), lp_mono(1, -g.d[i]));
                else
                    cz[i - 1][j - 1] = lp_qint(g.cartan[i][j]);
            }
        LP det = lp_full_det(cz);
        g.tc_table_.assign(static_cast<size_t>(n) * n * period, 0);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                // cofactor with row j, column i removed; sign (-1)^(i+j)
                std::vector<std::vector<LP>> minor;
                for (int a = 1; a <= n; ++a) {
                    if (a == j) continue;
                    std::vector<LP> row;
                    for (int b = 1; b <= n; ++b) {
                        if (b == i) continue;
                        row.push_back(cz[a - 1][b - 1]);
                    }
                    minor.push_back(std::move(row));
                }
                LP num = minor.empty() ? lp_mono(1, 0) : lp_full_det(minor);
                if ((i + j) % 2 == 1) num = lp_neg(num);
                std::vector<long long> ser = lp_series_quotient(num, det, period);
                for (int u = 0; u < period; ++u) {
                    long long v = ser[u];
                    if (v > 1000000000LL || v < -1000000000LL) throw std::logic_error("tc overflow");
                    g.tc_table_[(static_cast<size_t>(i - 1) * n + (j - 1)) * period + u] = static_cast<int>(v);
                }
                if (g.tc_table_[(static_cast<size_t>(i - 1) * n + (j - 1)) * period + g.d[i]] != (i == j ? 1 : 0))
                    throw std::logic_error("tilde_c(d_i) != delta_ij");
            }
    }

    static void build_delta_adjugate(LieTypeData& g) {
        int m = g.delta.n;
        std::vector<std::vector<LP>> cz(m, std::vector<LP>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) cz[i][j] = lp_mono(g.delta_cartan[i + 1][j + 1], 0);
        LP det = lp_full_det(cz);
        if (det.zero() || det.lo != 0) throw std::logic_error("bad delta Cartan determinant");
        g.delta_cartan_det = det.c[0];
        g.delta_cartan_adj.assign(m, std::vector<long long>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                std::vector<std::vector<LP>> minor;
                for (int a = 0; a < m; ++a) {
                    if (a == j) continue;
                    std::vector<LP> row;
                    for (int b = 0; b < m; ++b) {
                        if (b == i) continue;
                        row.push_back(cz[a][b]);
                    }
                    minor.push_back(std::move(row));
                }
                LP num = minor.empty() ? lp_mono(1, 0) : lp_full_det(minor);
                long long v = num.zero() ? 0 : (num.lo == 0 ? num.c[0] : 0);
                if ((i + j) % 2 == 1) v = -v;
                g.delta_cartan_adj[i][j] = v;
            }
    }
};

const LieTypeData& LieTypeData::get(Family f, int rank) {
    static std::mutex mx;
    static std::map<std::pair<char, int>, std::unique_ptr<LieTypeData>> registry;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_pair(static_cast<char>(f), rank);
    auto it = registry.find(key);
    if (it == registry.end()) it = registry.emplace(key, LieTypeBuilder::build(f, rank)).first;
    return *it->second;
}

const LieTypeData& LieTypeData::get(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("type name too short: '" + name + "'");
    Family f = family_from_char(name[0]);
    size_t pos = 1;
    int rank = 0;
    for (; pos < name.size(); ++pos) {
        if (name[pos] < '0' || name[pos] > '9') throw std::invalid_argument("bad type name: '" + name + "'");
        rank = rank * 10 + (name[pos] - '0');
    }
    return get(f, rank);
}

std::string LieTypeData::name() const { return family_name(family) + std::to_string(rank); }

int LieTypeData::tilde_c(int i, int j, int u) const {
    check_index(i);
    check_index(j);
    if (u < d[i]) return 0;
    int period = tc_period_;
    int um = u % period;
    return tc_table_[(static_cast<size_t>(i - 1) * rank + (j - 1)) * period + um];
}

void LieTypeData::check_index(int i) const {
    if (i < 1 || i > rank) throw std::out_of_range("Dynkin index " + std::to_string(i) + " out of range for " + name());
}

void LieTypeData::check_delta_index(int v) const {
    if (v < 1 || v > delta.n)
        throw std::out_of_range("unfolded vertex " + std::to_string(v) + " out of range for " + name());
}

}  // namespace qgr
