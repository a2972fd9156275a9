#include "qgr/qdata.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace qgr {

bool QDatum::on_lattice(int v, int p) const {
    g->check_delta_index(v);
    int step = 2 * dbar(v);
    int diff = p - xi[v];
    return ((diff % step) + step) % step == 0;
}

QValidation validate_qdatum(const QDatum& q) {
    const LieTypeData& g = *q.g;
    QValidation rep;
    if (static_cast<int>(q.xi.size()) != g.delta.n + 1) {
        rep.message = "xi has wrong length";
        return rep;
    }
    // condition (1): adjacent vertices in orbits of equal size differ by d
    for (int v = 1; v <= g.delta.n; ++v)
        for (int u : g.delta.adj[v]) {
            if (u < v) continue;
            int dv = q.dbar(v), du = q.dbar(u);
            if (dv != du) continue;
            int diff = q.xi[v] - q.xi[u];
            if (diff != dv && diff != -dv) {
                rep.message = "height condition fails at edge (" + std::to_string(v) + "," +
                              std::to_string(u) + "): |xi_" + std::to_string(v) + " - xi_" +
                              std::to_string(u) + "| != " + std::to_string(dv);
                return rep;
            }
        }
    // condition (2): for i ~ j with d_i = 1 < d_j, a unique chain top at
    // distance one from the short vertex
    for (int i = 1; i <= g.rank; ++i)
        for (int j = 1; j <= g.rank; ++j) {
            if (i == j || g.cartan[i][j] == 0) continue;
            if (!(g.d[i] == 1 && g.d[j] == g.r && g.r > 1)) continue;
            int short_v = g.orbit_members[i][0];
            int found = 0;
            for (int cand : g.orbit_members[j]) {
                int diff = q.xi[short_v] - q.xi[cand];
                if (diff != 1 && diff != -1) continue;
                bool chain = true;
                int s = cand;
                for (int k = 1; k < g.r; ++k) {
                    s = g.sigma[s];
                    if (q.xi[s] != q.xi[cand] - 2 * k) {
                        chain = false;
                        break;
                    }
                }
                if (chain) ++found;
            }
            if (found != 1) {
                rep.message = "height condition fails for orbit pair (" + std::to_string(i) + "," +
                              std::to_string(j) + "): " + std::to_string(found) +
                              " admissible chain tops (need exactly 1)";
                return rep;
            }
        }
    // parity coherence relative to the fixed parity function
    int offset = -1;
    for (int v = 1; v <= g.delta.n; ++v) {
        int o = ((q.xi[v] - g.epsilon[g.orbit_of[v]]) % 2 + 2) % 2;
        if (offset == -1)
            offset = o;
        else if (offset != o) {
            rep.message = "height function parity is incoherent at vertex " + std::to_string(v);
            return rep;
        }
    }
    rep.ok = true;
    rep.parity_offset = offset;
    return rep;
}

QDatum make_qdatum(const LieTypeData& g, const std::vector<int>& xi) {
    QDatum q;
    q.g = &g;
    if (static_cast<int>(xi.size()) == g.delta.n) {
        q.xi.assign(1, 0);
        q.xi.insert(q.xi.end(), xi.begin(), xi.end());
    } else {
        q.xi = xi;
    }
    QValidation rep = validate_qdatum(q);
    if (!rep.ok) throw std::invalid_argument("invalid Q-datum: " + rep.message);
    return q;
}

bool is_source(const QDatum& q, int v) {
    q.g->check_delta_index(v);
    for (int u : q.g->delta.adj[v])
        if (q.xi[v] <= q.xi[u]) return false;
    return true;
}

std::vector<int> sources(const QDatum& q) {
    std::vector<int> out;
    for (int v = 1; v <= q.g->delta.n; ++v)
        if (is_source(q, v)) out.push_back(v);
    return out;
}

QDatum source_reflect(const QDatum& q, int v) {
    if (!is_source(q, v))
        throw std::invalid_argument("vertex " + std::to_string(v) + " is not a source of the Q-datum");
    QDatum r = q;
    r.xi[v] -= 2 * q.dbar(v);
    QValidation rep = validate_qdatum(r);
    if (!rep.ok) throw std::logic_error("source reflection produced an invalid Q-datum: " + rep.message);
    return r;
}

int orbit_top(const QDatum& q, int i) {
    q.g->check_index(i);
    int best = q.g->orbit_members[i][0];
    for (int v : q.g->orbit_members[i])
        if (q.xi[v] > q.xi[best]) best = v;
    return best;
}

bool satisfies_tau_condition(const QDatum& q) {
    const LieTypeData& g = *q.g;
    for (int i = 1; i <= g.rank; ++i) {
        int top = orbit_top(q, i);
        int s = top;
        for (int k = 1; k < g.d[i]; ++k) {
            s = g.sigma[s];
            if (q.xi[s] != q.xi[top] - 2 * k) return false;
        }
    }
    return true;
}

WeylSigma tau_q(const QDatum& q) {
    const LieTypeData& g = *q.g;
    if (satisfies_tau_condition(q)) {
        std::vector<int> order(g.rank);
        for (int i = 1; i <= g.rank; ++i) order[i - 1] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return q.xi[orbit_top(q, a)] > q.xi[orbit_top(q, b)];
        });
        WeylSigma acc = weyl_identity(g);
        for (int i : order) acc = acc * weyl_reflection(g, orbit_top(q, i));
        return acc * weyl_sigma(g);
    }
    // conjugate along source reflections toward a datum satisfying the
    // condition
    int budget = 2 * g.delta.n * g.rh_dual();
    std::vector<int> path;
    QDatum cur = q;
    while (!satisfies_tau_condition(cur)) {
        if (static_cast<int>(path.size()) >= budget)
            throw std::logic_error("tau search exhausted its reflection budget");
        int best = 0;
        for (int v = 1; v <= g.delta.n; ++v)
            if (is_source(cur, v) && (best == 0 || cur.xi[v] > cur.xi[best])) best = v;
        path.push_back(best);
        cur = source_reflect(cur, best);
    }
    WeylSigma tau = tau_q(cur);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        WeylSigma s = weyl_reflection(g, *it);
        tau = s * tau * s;
    }
    return tau;
}

Weight gamma_root(const QDatum& q, int v) {
    const LieTypeData& g = *q.g;
    g.check_delta_index(v);
    WeylSigma tau = tau_q(q);
    WeylSigma td = weyl_power(tau, q.dbar(v), 2 * g.rh_dual());
    Weight w = fundamental_weight(g, v);
    Weight res = w - td.apply(w);
    if (!is_positive_root(g, res)) throw std::logic_error("gamma is not a positive root");
    return res;
}

std::vector<int> adapted_word(const QDatum& q) {
    const LieTypeData& g = *q.g;
    // compatible reading of the twisted AR quiver: vertices by descending p
    auto verts = ar_vertices(q);
    std::stable_sort(verts.begin(), verts.end(), [](const auto& a, const auto& b) {
        return a.second > b.second || (a.second == b.second && a.first < b.first);
    });
    std::vector<int> word;
    for (auto [v, p] : verts) word.push_back(v);
    reduced_word(g, word);  // validates
    return word;
}

int fold_inverse(const QDatum& q, int i, int p) {
    q.g->check_index(i);
    for (int v : q.g->orbit_members[i])
        if (q.on_lattice(v, p)) return v;
    throw std::invalid_argument("(" + std::to_string(i) + "," + std::to_string(p) +
                                ") is off the folded lattice of the Q-datum");
}

CoordinateMap::CoordinateMap(const QDatum& q) : q_(q), tau_(tau_q(q)) {
    const LieTypeData& g = *q.g;
    int bound = 2 * g.rh_dual();
    tau_pow_.push_back(weyl_identity(g));
    for (int k = 1; k <= g.r; ++k) tau_pow_.push_back(tau_pow_.back() * tau_);
    int ord = weyl_order(tau_, bound);
    WeylSigma inv = weyl_power(tau_, ord - 1, bound);
    tau_pow_inv_.push_back(weyl_identity(g));
    for (int k = 1; k <= g.r; ++k) tau_pow_inv_.push_back(tau_pow_inv_.back() * inv);
    // seed the k = 0 window so that phi_inverse can anchor on it
    for (auto [v, p] : ar_vertices(q_)) ensure(v, p);
}

void CoordinateMap::ensure(int v, int p) const {
    if (!q_.on_lattice(v, p))
        throw std::invalid_argument("vertex (" + std::to_string(v) + "," + std::to_string(p) +
                                    ") is off the repetition lattice");
    if (fwd_.count({v, p})) return;
    const LieTypeData& g = *q_.g;
    int d = q_.dbar(v);
    // anchor at (v, xi_v) and walk toward p
    std::pair<int, int> anchor{v, q_.xi[v]};
    if (!fwd_.count(anchor)) {
        Weight gam = fundamental_weight(g, v) - tau_pow_[d].apply(fundamental_weight(g, v));
        if (!is_positive_root(g, gam)) throw std::logic_error("gamma is not a positive root");
        fwd_[anchor] = {gam, 0};
        rev_[{gam.w, 0}] = anchor;
    }
    int steps = (p - q_.xi[v]) / (2 * d);
    int cur = q_.xi[v];
    while (cur != p) {
        auto [alpha, k] = fwd_[{v, cur}];
        int next = cur + (steps > 0 ? 2 * d : -2 * d);
        if (!fwd_.count({v, next})) {
            // moving p by +-2d applies tau^{-+d}
            Weight img = (steps > 0 ? tau_pow_inv_[d] : tau_pow_[d]).apply(alpha);
            std::pair<Weight, int> val;
            if (is_positive_root(g, img))
                val = {img, k};
            else
                val = {-img, k + (steps > 0 ? 1 : -1)};
            if (!is_positive_root(g, val.first)) throw std::logic_error("phi image is not a root");
            fwd_[{v, next}] = val;
            rev_[{val.first.w, val.second}] = {v, next};
        }
        cur = next;
    }
}

std::pair<Weight, int> CoordinateMap::phi(int v, int p) const {
    std::lock_guard<std::mutex> lock(mx_);
    ensure(v, p);
    return fwd_.at({v, p});
}

std::pair<int, int> CoordinateMap::phi_inverse(const Weight& alpha, int k) const {
    std::lock_guard<std::mutex> lock(mx_);
    auto it = rev_.find({alpha.w, k});
    if (it != rev_.end()) return it->second;
    // anchor on the k = 0 window (seeded at construction) and shift:
    // phi(v*, p + rh) = (alpha, k+1)
    auto it0 = rev_.find({alpha.w, 0});
    if (it0 == rev_.end()) throw std::invalid_argument("not a positive root of the unfolded diagram");
    auto [v0, p0] = it0->second;
    int v = v0, p = p0 + k * q_.rh_dual();
    if (k % 2 != 0) v = q_.g->delta_star[v0];
    ensure(v, p);
    auto chk = fwd_.at({v, p});
    if (!(chk.first == alpha) || chk.second != k) throw std::logic_error("phi shift rule violated");
    return {v, p};
}

std::pair<Weight, int> CoordinateMap::phi_folded(int i, int p) const {
    return phi(fold_inverse(q_, i, p), p);
}

Weight CoordinateMap::pi_phibar(int i, int p) const {
    auto [alpha, k] = phi_folded(i, p);
    return (k % 2 == 0) ? alpha : -alpha;
}

std::vector<std::pair<int, int>> ar_vertices(const QDatum& q) {
    const LieTypeData& g = *q.g;
    std::vector<std::pair<int, int>> out;
    int rh = g.rh_dual();
    for (int v = 1; v <= g.delta.n; ++v) {
        int lo = q.xi[g.delta_star[v]] - rh;  // exclusive
        int d2 = 2 * q.dbar(v);
        for (int p = q.xi[v]; p > lo; p -= d2) out.push_back({v, p});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> ar_arrows(
    const QDatum& q, const std::vector<std::pair<int, int>>& vertices) {
    const LieTypeData& g = *q.g;
    std::set<std::pair<int, int>> vs(vertices.begin(), vertices.end());
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> arrows;
    for (auto [v, p] : vertices)
        for (int u : g.delta.adj[v]) {
            int step = g.dij(g.orbit_of[v], g.orbit_of[u]);
            if (vs.count({u, p + step})) arrows.push_back({{v, p}, {u, p + step}});
        }
    return arrows;
}

QDatum canonical_height(const LieTypeData& g, int b) {
    std::vector<int> xi(g.delta.n + 1, 0);
    auto eps = [&](int v) { return g.epsilon[g.orbit_of[v]]; };
    switch (g.family) {
        case Family::A:
        case Family::D:
        case Family::E: {
            bool even = ((b % 2) + 2) % 2 == 0;
            for (int v = 1; v <= g.delta.n; ++v) xi[v] = even ? b - eps(v) : b - 1 + eps(v);
            break;
        }
        case Family::B: {
            int n = g.rank;
            for (int v = 1; v <= g.delta.n; ++v) {
                int t = v - n;
                bool top = (t <= 0 && ((t % 2) + 2) % 2 == 1) || (t >= 0 && t % 2 == 0);
                if (((b % 2) + 2) % 2 == 0)
                    xi[v] = top ? b - eps(v) : b - 2 - eps(v);
                else
                    xi[v] = top ? b - 1 + eps(v) : b - 3 + eps(v);
            }
            break;
        }
        case Family::C: {
            int n = g.rank;
            for (int v = 1; v <= g.delta.n; ++v) {
                bool top = v <= n;
                if (((b % 2) + 2) % 2 == 0)
                    xi[v] = top ? b - eps(v) : b - 2 - eps(v);
                else
                    xi[v] = top ? b - 1 + eps(v) : b - 3 + eps(v);
            }
            break;
        }
        case Family::F: {
            bool match = ((b - g.epsilon[1]) % 2 + 2) % 2 == 0;
            std::vector<int> vals = match ? std::vector<int>{b, b, b - 2, b - 1, b, b - 2}
                                          : std::vector<int>{b - 1, b - 1, b - 3, b, b - 1, b - 3};
            for (int v = 1; v <= 6; ++v) xi[v] = vals[v - 1];
            break;
        }
        case Family::G: {
            bool match = ((b - g.epsilon[1]) % 2 + 2) % 2 == 0;
            std::vector<int> vals = match ? std::vector<int>{b, b - 1, b - 2, b - 4}
                                          : std::vector<int>{b - 1, b, b - 3, b - 5};
            for (int v = 1; v <= 4; ++v) xi[v] = vals[v - 1];
            break;
        }
    }
    return make_qdatum(g, xi);
}

QDatum random_qdatum(const LieTypeData& g, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    int rh = g.rh_dual();
    int b = static_cast<int>(rng() % (2 * rh + 1)) - rh;
    QDatum q = canonical_height(g, b);
    int steps = static_cast<int>(rng() % (3 * static_cast<unsigned>(rh)));
    for (int s = 0; s < steps; ++s) {
        auto src = sources(q);
        q = source_reflect(q, src[rng() % src.size()]);
    }
    return q;
}

Weight wt_q(const CoordinateMap& cm, const Monomial& m) {
    Weight acc(cm.datum().g->delta.n);
    for (const auto& [key, u] : m.e) {
        Weight w = cm.pi_phibar(key.first, key.second);
        for (size_t t = 0; t < acc.w.size(); ++t) acc.w[t] += u * w.w[t];
    }
    return acc;
}

namespace {

void xi_bound_dfs(const LieTypeData& g, std::vector<int>& xi, std::vector<char>& assigned, int limit,
                  std::vector<std::vector<int>>& out) {
    int pick = 0;
    for (int v = 1; v <= g.delta.n && pick == 0; ++v)
        if (!assigned[v])
            for (int u : g.delta.adj[v])
                if (assigned[u]) {
                    pick = v;
                    break;
                }
    if (pick == 0) {
        out.push_back(xi);
        return;
    }
    for (int cand = -limit; cand <= limit; ++cand) {
        bool ok = true;
        for (int u : g.delta.adj[pick]) {
            if (!assigned[u]) continue;
            int dv = g.d[g.orbit_of[pick]], du = g.d[g.orbit_of[u]];
            int diff = cand - xi[u];
            if (dv == du) {
                if (diff != dv && diff != -dv) ok = false;
            } else {
                if (diff % 2 == 0 || diff > 2 * g.r - 1 || diff < -(2 * g.r - 1)) ok = false;
            }
            if (!ok) break;
        }
        if (!ok) continue;
        xi[pick] = cand;
        assigned[pick] = 1;
        xi_bound_dfs(g, xi, assigned, limit, out);
        assigned[pick] = 0;
    }
}

}  // namespace

int xi_bound(const LieTypeData& g, int i, int j) {
    g.check_index(i);
    g.check_index(j);
    int limit = 2 * g.rh_dual();
    std::vector<int> xi(g.delta.n + 1, 0);
    std::vector<char> assigned(g.delta.n + 1, 0);
    xi[1] = 0;
    assigned[1] = 1;
    std::vector<std::vector<int>> all;
    xi_bound_dfs(g, xi, assigned, limit, all);
    bool found = false;
    int best = 0;
    for (const auto& cand : all) {
        QDatum q{&g, cand};
        if (!validate_qdatum(q).ok) continue;
        for (int v : g.orbit_members[i])
            for (int w : g.orbit_members[j]) {
                int val = cand[w] - cand[v];
                if (!found || val > best) best = val;
                found = true;
            }
    }
    if (!found) throw std::logic_error("no valid height function found");
    return best;
}

std::vector<std::pair<int, int>> hat_iq(const QDatum& q) {
    std::vector<std::pair<int, int>> out;
    for (auto [v, p] : ar_vertices(q)) out.push_back({q.g->orbit_of[v], p});
    std::sort(out.begin(), out.end());
    return out;
}

bool in_hat_iq(const QDatum& q, int i, int p) {
    q.g->check_index(i);
    for (int v : q.g->orbit_members[i]) {
        if (!q.on_lattice(v, p)) continue;
        return q.xi[q.g->delta_star[v]] - q.rh_dual() < p && p <= q.xi[v];
    }
    return false;
}

bool in_leq_xi(const QDatum& q, int i, int p) {
    q.g->check_index(i);
    for (int v : q.g->orbit_members[i])
        if (q.on_lattice(v, p)) return p <= q.xi[v];
    return false;
}

QTElement truncate_leq_xi(const QDatum& q, const QTElement& x) {
    return truncate(x, [&q](int i, int p) { return in_leq_xi(q, i, p); });
}

std::string root_label(const LieTypeData& g, const Weight& alpha) {
    std::vector<long long> a = alpha_coords(g, alpha);
    int lo = 0, hi = 0;
    bool interval = true;
    for (int v = 1; v <= g.delta.n; ++v) {
        if (a[v] == 0) continue;
        if (a[v] != 1) interval = false;
        if (lo == 0) lo = v;
        hi = v;
    }
    if (interval)
        for (int v = lo; v <= hi; ++v)
            if (a[v] != 1) interval = false;
    std::ostringstream os;
    if (interval && lo > 0) {
        if (lo == hi)
            os << '[' << lo << ']';
        else
            os << '[' << lo << ',' << hi << ']';
        return os.str();
    }
    bool first = true;
    for (int v = 1; v <= g.delta.n; ++v) {
        if (a[v] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (a[v] != 1) os << a[v];
        os << 'a' << v;
    }
    return os.str();
}

std::string ar_ascii(const QDatum& q) {
    const LieTypeData& g = *q.g;
    CoordinateMap cm(q);
    auto verts = ar_vertices(q);
    int pmin = 0, pmax = 0;
    bool first = true;
    std::map<std::pair<int, int>, std::string> label;
    for (auto [v, p] : verts) {
        label[{v, p}] = root_label(g, cm.phi(v, p).first);
        if (first || p < pmin) pmin = p;
        if (first || p > pmax) pmax = p;
        first = false;
    }
    size_t width = 4;
    for (const auto& [k, s] : label) width = std::max(width, s.size() + 1);
    std::ostringstream os;
    os << "(i\\p)";
    std::string head = "(i\\p)";
    for (int p = pmin; p <= pmax; ++p) {
        std::string col = std::to_string(p);
        os << std::string(width > col.size() ? width - col.size() : 1, ' ') << col;
    }
    os << '\n';
    for (int v = 1; v <= g.delta.n; ++v) {
        std::string row = std::to_string(v);
        os << row << std::string(head.size() - row.size(), ' ');
        for (int p = pmin; p <= pmax; ++p) {
            auto it = label.find({v, p});
            std::string cell = it == label.end() ? "" : it->second;
            os << std::string(width > cell.size() ? width - cell.size() : 1, ' ') << cell;
        }
        os << '\n';
    }
    return os.str();
}

std::string ar_dot(const QDatum& q) {
    const LieTypeData& g = *q.g;
    CoordinateMap cm(q);
    auto verts = ar_vertices(q);
    std::ostringstream os;
    os << "digraph ar_quiver {\n  rankdir=LR;\n  node [shape=box];\n";
    for (auto [v, p] : verts)
        os << "  \"v" << v << "_" << p << "\" [label=\"" << root_label(g, cm.phi(v, p).first)
           << "\", row=" << v << ", col=" << p << "];\n";
    for (const auto& [a, b] : ar_arrows(q, verts))
        os << "  \"v" << a.first << "_" << a.second << "\" -> \"v" << b.first << "_" << b.second << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace qgr
