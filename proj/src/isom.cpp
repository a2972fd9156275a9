#include "qgr/isom.hpp"

#include <sstream>

namespace qgr {

QFactorization qfactorize(const QDatum& q, const Monomial& m) {
    if (!m.dominant()) throw std::invalid_argument("qfactorize requires a dominant monomial");
    const LieTypeData& g = *q.g;
    int rh = g.rh_dual();
    QFactorization out;
    for (const auto& [key, u] : m.e) {
        auto [i, p] = key;
        int xmax = *std::max_element(q.xi.begin() + 1, q.xi.end());
        int k0 = (p - xmax - rh) / rh - 2;
        int k1 = (p - xmax + rh) / rh + 2;
        bool found = false;
        for (int k = k0; k <= k1 && !found; ++k) {
            int is = k % 2 == 0 ? i : g.i_star(i);
            if (in_hat_iq(q, is, p - k * rh)) {
                out.parts[k] = out.parts[k].mul(Monomial::var(is, p - k * rh, u));
                found = true;
            }
        }
        if (!found) throw std::logic_error("variable not covered by any window shift");
    }
    return out;
}

long long nu2(const CoordinateMap& cm, const Monomial& m) {
    const QDatum& q = cm.datum();
    auto fac = qfactorize(q, m);
    long long acc = 0;
    for (auto it = fac.parts.begin(); it != fac.parts.end(); ++it)
        for (auto jt = std::next(it); jt != fac.parts.end(); ++jt) {
            long long sign = ((it->first + jt->first) % 2 + 2) % 2 == 0 ? 1 : -1;
            acc -= sign * pairing(*q.g, wt_q(cm, it->second), wt_q(cm, jt->second));
        }
    return acc;
}

FacEReport verify_facE(const CoordinateMap& cm, const Monomial& m) {
    const QDatum& q = cm.datum();
    const LieTypeData& g = *q.g;
    FacEReport rep;
    rep.nu2 = nu2(cm, m);
    auto fac = qfactorize(q, m);
    QTElement rhs = QTElement::scalar(TCoeff::t_half_pow(static_cast<int>(rep.nu2)));
    for (const auto& [k, part] : fac.parts) rhs = mul(g, rhs, frakD_t(g, et(g, part).elem, k));
    QTElement lhs = et(g, m).elem;
    rep.ok = lhs == rhs;
    if (!rep.ok) {
        QTElement d = lhs.minus(rhs);
        rep.diff = d.terms.empty() ? "?" : d.terms.begin()->first.str();
    }
    return rep;
}

PresentationReport verify_presentation(const QDatum& q, int k0, int k1) {
    const LieTypeData& g = *q.g;
    CoordinateMap cm(q);
    PresentationReport rep;

    std::map<std::pair<int, int>, QTElement> gen;
    for (int v = 1; v <= g.delta.n; ++v)
        for (int k = k0; k <= k1; ++k) {
            auto [vx, p] = cm.phi_inverse(simple_root(g, v), k);
            gen[{v, k}] = ft(g, Monomial::var(g.orbit_of[vx], p)).elem;
        }
    auto root_pairing = [&](int v, int u) -> int {
        if (v == u) return 2;
        return g.delta.adjacent(v, u) ? -1 : 0;
    };
    auto record = [&](bool ok, int v, int u, int k, int l) {
        ++rep.checked;
        if (!ok && rep.ok) {
            rep.ok = false;
            std::ostringstream os;
            os << "(" << v << "," << u << "," << k << "," << l << ")";
            rep.first_failure = os.str();
        }
    };

    for (int v = 1; v <= g.delta.n; ++v)
        for (int u = 1; u <= g.delta.n; ++u)
            for (int k = k0; k <= k1; ++k)
                for (int l = k; l <= k1; ++l) {
                    const QTElement &x = gen.at({v, k}), &y = gen.at({u, l});
                    if (l == k) {
                        if (u <= v) continue;
                        if (!g.delta.adjacent(v, u)) {
                            record(mul(g, x, y) == mul(g, y, x), v, u, k, l);
                        } else {
                            // x^2 y - (t + t^{-1}) x y x + y x^2 = 0
                            QTElement xxy = mul(g, mul(g, x, x), y);
                            QTElement xyx = mul(g, mul(g, x, y), x);
                            QTElement yxx = mul(g, y, mul(g, x, x));
                            QTElement lhs = xxy.minus(xyx.times_t(2).plus(xyx.times_t(-2))).plus(yxx);
                            record(lhs.is_zero(), v, u, k, l);
                        }
                    } else if (l == k + 1) {
                        QTElement lhs = mul(g, x, y);
                        QTElement rhs = mul(g, y, x).times_t(-2 * root_pairing(v, u));
                        if (v == u) {
                            rhs.add_term(Monomial::unit(), TCoeff::one());
                            rhs.add_term(Monomial::unit(), TCoeff::t_half_pow(-4).negate());
                        }
                        record(lhs == rhs, v, u, k, l);
                    } else {
                        int sign = ((k + l) % 2 + 2) % 2 == 0 ? 1 : -1;
                        QTElement lhs = mul(g, x, y);
                        QTElement rhs = mul(g, y, x).times_t(2 * sign * root_pairing(v, u));
                        record(lhs == rhs, v, u, k, l);
                    }
                }
    return rep;
}

QDatum ab_datum_a(int n) {
    if (n < 2) throw std::invalid_argument("the type-B comparison needs n >= 2");
    const auto& g = LieTypeData::get(Family::A, 2 * n - 1);
    std::vector<int> xi(2 * n, 0);
    for (int v = 1; v <= 2 * n - 1; ++v) xi[v] = -v;
    return make_qdatum(g, xi);
}

QDatum ab_datum_b(int n) {
    if (n < 2) throw std::invalid_argument("the type-B comparison needs n >= 2");
    const auto& g = LieTypeData::get(Family::B, n);
    std::vector<int> xi(2 * n, 0);
    for (int v = 1; v <= 2 * n - 1; ++v) {
        if (v < n)
            xi[v] = -2 * v;
        else if (v == n)
            xi[v] = 1 - 2 * n;
        else
            xi[v] = 2 - 2 * v;
    }
    return make_qdatum(g, xi);
}

namespace {

// image of Y_{i,-i-2k} inside the fundamental window, per the case table
Monomial psi_window(int n, int i, int k) {
    auto bbar = [&](int v) { return std::min(v, 2 * n - v); };
    if (i <= n - 1 && k <= n - i - 1) return Monomial::var(bbar(i), -2 * i - 4 * k);
    if (i <= n && k == n - i) return Monomial::var(n, -6 * n + 4 * i + 1);
    if (2 <= i && i <= n && n - i + 1 <= k && k <= n - 1)
        // split of the interval root at the short node: factors at the
        // window positions of [k+1, n] and [n+1, k+i]
        return Monomial::var(n, 1 - 2 * n - 4 * k).mul(Monomial::var(n, 2 * n + 3 - 4 * i - 4 * k));
    if (i <= n - 1 && k == n) return Monomial::var(n, -2 * n + 3 - 4 * i);
    if (i <= n - 2 && k >= n + 1) return Monomial::var(bbar(i), 4 - 2 * i - 4 * k);
    if (i >= n + 1) return Monomial::var(bbar(i), 2 - 2 * i - 4 * k);
    throw std::logic_error("window case fell through");
}

}  // namespace

Monomial psi_b(const Monomial& m, int n) {
    if (!m.dominant()) throw std::invalid_argument("psi requires a dominant monomial");
    const auto& gb = LieTypeData::get(Family::B, n);
    int rh_a = 2 * n;           // r h_dual of A_{2n-1}
    int rh_b = 2 * (2 * n - 1); // r h_dual of B_n
    Monomial out;
    for (const auto& [key, u] : m.e) {
        auto [i, p] = key;
        if (i < 1 || i > 2 * n - 1 || ((p + i) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("variable Y[" + std::to_string(i) + "," + std::to_string(p) +
                                        "] is off the type-A lattice");
        bool found = false;
        for (int j = -((std::abs(p) + 4 * n) / rh_a + 2); j <= (std::abs(p) + 4 * n) / rh_a + 2 && !found;
             ++j) {
            int ij = j % 2 == 0 ? i : 2 * n - i;
            int pj = p - j * rh_a;
            int k = -(pj + ij) / 2;
            if (2 * k != -(pj + ij)) continue;
            if (k < 0 || k > 2 * n - 1 - ij) continue;
            Monomial img = psi_window(n, ij, k);
            out = out.mul(frakD_mono(gb, img, j).pow(u));
            (void)rh_b;
            found = true;
        }
        if (!found) throw std::logic_error("no window shift found for the variable");
    }
    return out;
}

nlohmann::json psi_table_json(int n, int window) {
    nlohmann::json arr = nlohmann::json::array();
    for (int j = -window; j <= window; ++j)
        for (int i = 1; i <= 2 * n - 1; ++i)
            for (int k = 0; k <= 2 * n - 1 - i; ++k) {
                int ij = j % 2 == 0 ? i : 2 * n - i;
                int p = -i - 2 * k + j * 2 * n;
                Monomial from = Monomial::var(ij, p);
                Monomial to = psi_b(from, n);
                arr.push_back({{"from", monomial_to_json(from)}, {"to", monomial_to_json(to)}});
            }
    return arr;
}

}  // namespace qgr
