#include "qgr/qcluster.hpp"

#include <algorithm>

namespace qgr {

TorusElt TorusElt::mono(const std::vector<long long>& a, const TCoeff& c) {
    TorusElt x;
    if (!c.is_zero()) x.terms[a] = c;
    return x;
}

void TorusElt::add_term(const std::vector<long long>& a, const TCoeff& c) {
    if (c.is_zero()) return;
    auto it = terms.find(a);
    if (it == terms.end()) {
        terms.emplace(a, c);
        return;
    }
    it->second = it->second.plus(c);
    if (it->second.is_zero()) terms.erase(it);
}

TCoeff TorusElt::coeff(const std::vector<long long>& a) const {
    auto it = terms.find(a);
    return it == terms.end() ? TCoeff::zero() : it->second;
}

TorusElt TorusElt::plus(const TorusElt& o) const {
    TorusElt r = *this;
    for (const auto& [a, c] : o.terms) r.add_term(a, c);
    return r;
}

TorusElt TorusElt::minus(const TorusElt& o) const {
    TorusElt r = *this;
    for (const auto& [a, c] : o.terms) r.add_term(a, c.negate());
    return r;
}

TorusElt TorusElt::scale(const TCoeff& c) const {
    TorusElt r;
    for (const auto& [a, v] : terms) {
        TCoeff nv = v.times(c);
        if (!nv.is_zero()) r.terms[a] = nv;
    }
    return r;
}

namespace {

long long lambda_form(const std::vector<std::vector<long long>>& lambda0,
                      const std::vector<long long>& a, const std::vector<long long>& b) {
    long long s = 0;
    for (size_t i = 1; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 1; j < b.size(); ++j) s += a[i] * lambda0[i][j] * b[j];
    }
    return s;
}

std::vector<long long> vec_add(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

std::vector<long long> vec_sub(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

}  // namespace

TorusElt torus_mul(const std::vector<std::vector<long long>>& lambda0, const TorusElt& x,
                   const TorusElt& y) {
    TorusElt r;
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) {
            long long tw = lambda_form(lambda0, a, b);
            if (tw > 2000000000LL || tw < -2000000000LL) throw std::overflow_error("v-exponent overflow");
            r.add_term(vec_add(a, b), ca.times(cb).times_t(static_cast<int>(tw)));
        }
    return r;
}

TorusElt torus_divide_right(const std::vector<std::vector<long long>>& lambda0, const TorusElt& x,
                            const TorusElt& s) {
    if (s.is_zero()) throw std::invalid_argument("torus division by zero");
    TorusElt rem = x, quot;
    const auto& lead_s = *s.terms.rbegin();
    int ks;
    long long cs;
    if (!lead_s.second.single_power(ks, cs) || (cs != 1 && cs != -1))
        throw std::logic_error("divisor leading coefficient is not a unit");
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 100000) throw std::logic_error("torus division did not terminate");
        const auto& lead_r = *rem.terms.rbegin();
        std::vector<long long> u = vec_sub(lead_r.first, lead_s.first);
        // c_t * v^{Lambda0(u, us)/2} * c_s = c_r
        long long tw = lambda_form(lambda0, u, lead_s.first);
        TCoeff ct = lead_r.second.times_t(static_cast<int>(-tw - ks));
        if (cs == -1) ct = ct.negate();
        quot.add_term(u, ct);
        rem = rem.minus(torus_mul(lambda0, TorusElt::mono(u, ct), s));
        if (!rem.is_zero() && !(rem.terms.rbegin()->first < lead_r.first))
            throw std::logic_error("torus division is not exact");
    }
    return quot;
}

bool pair_compatible(const CompatiblePair& cp) {
    for (size_t sc = 0; sc < cp.j_ex.size(); ++sc)
        for (int t = 1; t <= cp.ell; ++t) {
            long long sum = 0;
            for (int k = 1; k <= cp.ell; ++k) sum += cp.btilde[k][sc] * cp.lambda[k][t];
            if (sum != ((cp.j_ex[sc] == t) ? cp.scale : 0)) return false;
        }
    // principal part of Btilde skew-symmetric
    for (size_t a = 0; a < cp.j_ex.size(); ++a)
        for (size_t b = 0; b < cp.j_ex.size(); ++b)
            if (cp.btilde[cp.j_ex[a]][b] != -cp.btilde[cp.j_ex[b]][a]) return false;
    // Lambda skew-symmetric
    for (int a = 1; a <= cp.ell; ++a)
        for (int b = 1; b <= cp.ell; ++b)
            if (cp.lambda[a][b] != -cp.lambda[b][a]) return false;
    return true;
}

QuantumSeed gls_seed(const ReducedWord& word) {
    QuantumSeed seed;
    seed.pair = gls_pair(word);
    seed.lambda0 = seed.pair.lambda;
    int n = seed.pair.ell;
    seed.vars.resize(n + 1);
    for (int j = 1; j <= n; ++j) {
        std::vector<long long> e(n + 1, 0);
        e[j] = 1;
        seed.vars[j] = TorusElt::mono(e);
    }
    return seed;
}

QuantumSeed seed_from_qdatum(const QDatum& q) {
    return gls_seed(reduced_word(*q.g, adapted_word(q)));
}

QuantumSeed mutate(const QuantumSeed& seed, int k) {
    const CompatiblePair& cp = seed.pair;
    int n = cp.ell;
    auto col_of = [&](int kk) -> int {
        for (size_t c = 0; c < cp.j_ex.size(); ++c)
            if (cp.j_ex[c] == kk) return static_cast<int>(c);
        return -1;
    };
    int kc = col_of(k);
    if (kc < 0) throw std::invalid_argument("direction " + std::to_string(k) + " is frozen");

    // E and F of the mutation, sign choice +1
    std::vector<std::vector<long long>> E(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j != k)
                E[i][j] = (i == j) ? 1 : 0;
            else if (i == k)
                E[i][j] = -1;
            else
                E[i][j] = std::max(0LL, -cp.btilde[i][kc]);
        }
    size_t ne = cp.j_ex.size();
    std::vector<std::vector<long long>> F(ne, std::vector<long long>(ne, 0));
    for (size_t a = 0; a < ne; ++a)
        for (size_t b = 0; b < ne; ++b) {
            if (cp.j_ex[a] != k)
                F[a][b] = (a == b) ? 1 : 0;
            else if (a == b)
                F[a][b] = -1;
            else
                F[a][b] = std::max(0LL, cp.btilde[k][b]);
        }

    QuantumSeed out;
    out.lambda0 = seed.lambda0;
    out.pair = cp;
    // Lambda' = E^T Lambda E
    std::vector<std::vector<long long>> lam(n + 1, std::vector<long long>(n + 1, 0));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            long long s = 0;
            for (int i = 1; i <= n; ++i) {
                if (E[i][a] == 0) continue;
                for (int j = 1; j <= n; ++j) s += E[i][a] * cp.lambda[i][j] * E[j][b];
            }
            lam[a][b] = s;
        }
    out.pair.lambda = std::move(lam);
    // Btilde' = E Btilde F
    std::vector<std::vector<long long>> bt(n + 1, std::vector<long long>(ne, 0));
    for (int i = 1; i <= n; ++i)
        for (size_t b = 0; b < ne; ++b) {
            long long s = 0;
            for (int j = 1; j <= n; ++j) {
                if (E[i][j] == 0) continue;
                for (size_t a = 0; a < ne; ++a) s += E[i][j] * cp.btilde[j][a] * F[a][b];
            }
            bt[i][b] = s;
        }
    out.pair.btilde = std::move(bt);
    if (!pair_compatible(out.pair)) throw std::logic_error("mutation broke compatibility");

    // new cluster variable: X^{a'} + X^{a''} in the current cluster; only the
    // k-th current variable is inverted, handled by one exact right division
    // X^a = v^{c2/2} (prod_{j != k} X_j^{a_j}) X_k^{-1} with a_k = -1; the
    // division by the current X_k happens once on the summed numerator
    auto half = [&](bool primed) -> TorusElt {
        std::vector<long long> a(n + 1, 0);
        a[k] = -1;
        for (int j = 1; j <= n; ++j) {
            if (j == k) continue;
            long long b = cp.btilde[j][kc];
            a[j] = std::max(0LL, primed ? b : -b);
        }
        long long c2 = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) c2 -= a[i] * a[j] * cp.lambda[i][j];
        for (int j = k + 1; j <= n; ++j) c2 -= 2 * a[j] * cp.lambda[k][j];
        TorusElt acc =
            TorusElt::mono(std::vector<long long>(n + 1, 0), TCoeff::t_half_pow(static_cast<int>(c2)));
        for (int j = 1; j <= n; ++j) {
            if (j == k || a[j] == 0) continue;
            for (long long r = 0; r < a[j]; ++r) acc = torus_mul(seed.lambda0, acc, seed.vars[j]);
        }
        return acc;
    };
    TorusElt numerator = half(true).plus(half(false));
    out.vars = seed.vars;
    out.vars[k] = torus_divide_right(seed.lambda0, numerator, seed.vars[k]);
    return out;
}

nlohmann::json seed_to_json(const QuantumSeed& seed) {
    nlohmann::json j;
    int n = seed.pair.ell;
    nlohmann::json lam = nlohmann::json::array(), bt = nlohmann::json::array();
    for (int a = 1; a <= n; ++a) {
        lam.push_back(std::vector<long long>(seed.pair.lambda[a].begin() + 1, seed.pair.lambda[a].end()));
        bt.push_back(seed.pair.btilde[a]);
    }
    j["Lambda"] = lam;
    j["Btilde"] = bt;
    j["exchangeable"] = seed.pair.j_ex;
    nlohmann::json vars = nlohmann::json::array();
    for (int v = 1; v <= n; ++v) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [a, c] : seed.vars[v].terms) {
            nlohmann::json coeff = nlohmann::json::object();
            for (const auto& [kk, vv] : c.c) coeff[std::to_string(kk)] = vv;
            terms.push_back({{"coeff", coeff},
                             {"exps", std::vector<long long>(a.begin() + 1, a.end())}});
        }
        vars.push_back(terms);
    }
    j["variables"] = vars;
    return j;
}

PhiT phi_t(const QDatum& q) {
    const LieTypeData& g = *q.g;
    PhiT out;
    out.letters = adapted_word(q);
    auto word = reduced_word(g, out.letters);
    auto cp = gls_pair(word);
    out.roots = word.betas;
    out.lambda = cp.lambda;
    CoordinateMap cm(q);
    for (const auto& alpha : out.roots) {
        auto [v, p] = cm.phi_inverse(alpha, 0);
        out.images.push_back(kr_monomial(g, v, p, q.xi[v]));
    }
    out.kappa_ok = true;
    int n = cp.ell;
    for (int s = 1; s <= n && out.kappa_ok; ++s)
        for (int t = 1; t <= n; ++t) {
            long long kappa = nn_mm(g, out.images[s - 1], out.images[t - 1]);
            if (kappa != cp.lambda[s][t]) {
                out.kappa_ok = false;
                out.bad_s = s;
                out.bad_t = t;
                break;
            }
        }
    return out;
}

DetRecReport verify_det_vs_tsystem(const QDatum& q) {
    const LieTypeData& g = *q.g;
    DetRecReport rep;
    CoordinateMap cm(q);
    int rh = g.rh_dual();

    auto timage = [&](int v, int p, int s) -> QTElement {  // image of (v; p, s): truncated F[p,s)
        if (p == s) return QTElement::scalar(TCoeff::one());
        return truncate_leq_xi(q, ft(g, kr_monomial(g, v, p, s - 2 * q.dbar(v))).elem);
    };
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.message = msg;
        return rep;
    };

    for (int v = 1; v <= g.delta.n; ++v) {
        int d2 = 2 * q.dbar(v);
        int lo = q.xi[g.delta_star[v]] - rh;
        for (int p = q.xi[v]; p > lo; p -= d2) {
            // base case s = xi_v + 2d: the image collapses to the KR monomial
            QTElement base = timage(v, p, q.xi[v] + d2);
            if (!(base == QTElement::monomial(kr_monomial(g, v, p, q.xi[v]))))
                return fail("base case failed at (" + std::to_string(v) + ";" + std::to_string(p) + ")");
            ++rep.checked;
            for (int s = p + d2; s <= q.xi[v]; s += d2) {
                QTElement lhs = mul(g, timage(v, p, s), timage(v, p + d2, s + d2));
                QTElement r1 = mul(g, timage(v, p, s + d2), timage(v, p + d2, s));
                QTElement r2 = QTElement::scalar(TCoeff::one());
                Monomial m2;
                auto next_lattice = [&](int u, int above) {
                    int du2 = 2 * q.dbar(u);
                    int r = ((q.xi[u] - (above + 1)) % du2 + du2) % du2;
                    return above + 1 + r;
                };
                for (int u : g.delta.adj[v]) {
                    int du2 = 2 * q.dbar(u);
                    int pu = next_lattice(u, p);
                    int su = next_lattice(u, s);
                    if (su <= pu) continue;
                    r2 = mul(g, r2, timage(u, pu, su));
                    m2 = m2.mul(kr_monomial(g, u, pu, su - du2));
                }
                Monomial m1 = kr_monomial(g, v, p, s)
                                  .mul(s - d2 >= p + d2 ? kr_monomial(g, v, p + d2, s - d2) : Monomial::unit());
                int a2, b2;
                try {
                    a2 = top_t_exponent(lhs, m1) - top_t_exponent(r1, m1);
                    QTElement rem = lhs.minus(r1.times_t(a2));
                    b2 = top_t_exponent(rem, m2) - top_t_exponent(r2, m2);
                    if (!(rem == r2.times_t(b2)))
                        return fail("exchange closure failed at (" + std::to_string(v) + ";" +
                                    std::to_string(p) + "," + std::to_string(s) + ")");
                } catch (const std::logic_error& e) {
                    return fail("exchange shape failed at (" + std::to_string(v) + ";" +
                                std::to_string(p) + "," + std::to_string(s) + "): " + e.what());
                }
                ++rep.checked;
            }
        }
    }
    return rep;
}

}  // namespace qgr
