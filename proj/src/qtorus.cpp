#include "qgr/qtorus.hpp"

#include <algorithm>
#include <sstream>

namespace qgr {

Monomial Monomial::var(int i, int p, int exp) {
    Monomial m;
    if (exp != 0) m.e[{i, p}] = exp;
    return m;
}

int Monomial::exp(int i, int p) const {
    auto it = e.find({i, p});
    return it == e.end() ? 0 : it->second;
}

Monomial Monomial::mul(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [k, v] : o.e) {
        int nv = r.exp(k.first, k.second) + v;
        if (nv == 0)
            r.e.erase(k);
        else
            r.e[k] = nv;
    }
    return r;
}

Monomial Monomial::pow(int k) const {
    Monomial r;
    if (k == 0) return r;
    for (const auto& [key, v] : e) r.e[key] = v * k;
    return r;
}

bool Monomial::dominant() const {
    for (const auto& [k, v] : e)
        if (v < 0) return false;
    return true;
}

bool Monomial::anti_dominant() const {
    for (const auto& [k, v] : e)
        if (v > 0) return false;
    return true;
}

bool Monomial::i_dominant(int i) const {
    for (const auto& [k, v] : e)
        if (k.first == i && v < 0) return false;
    return true;
}

Monomial Monomial::part_of(int i) const {
    Monomial r;
    for (const auto& [k, v] : e)
        if (k.first == i) r.e[k] = v;
    return r;
}

std::string Monomial::str() const {
    if (e.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : e) {
        if (!first) os << ' ';
        first = false;
        os << "Y[" << k.first << ',' << k.second << ']';
        if (v != 1) os << '^' << v;
    }
    return os.str();
}

TCoeff TCoeff::one() {
    TCoeff c;
    c.c[0] = 1;
    return c;
}

TCoeff TCoeff::t_half_pow(int k) {
    TCoeff c;
    c.c[k] = 1;
    return c;
}

bool TCoeff::is_one() const { return c.size() == 1 && c.begin()->first == 0 && c.begin()->second == 1; }

TCoeff TCoeff::plus(const TCoeff& o) const {
    TCoeff r = *this;
    for (const auto& [k, v] : o.c) {
        long long nv = (r.c.count(k) ? r.c[k] : 0) + v;
        if (nv == 0)
            r.c.erase(k);
        else
            r.c[k] = nv;
    }
    return r;
}

TCoeff TCoeff::minus(const TCoeff& o) const { return plus(o.negate()); }

TCoeff TCoeff::times(const TCoeff& o) const {
    TCoeff r;
    for (const auto& [k1, v1] : c)
        for (const auto& [k2, v2] : o.c) {
            long long nv = (r.c.count(k1 + k2) ? r.c[k1 + k2] : 0) + v1 * v2;
            if (nv == 0)
                r.c.erase(k1 + k2);
            else
                r.c[k1 + k2] = nv;
        }
    return r;
}

TCoeff TCoeff::times_t(int k) const {
    TCoeff r;
    for (const auto& [d, v] : c) r.c[d + k] = v;
    return r;
}

TCoeff TCoeff::negate() const {
    TCoeff r = *this;
    for (auto& [k, v] : r.c) v = -v;
    return r;
}

TCoeff TCoeff::bar() const {
    TCoeff r;
    for (const auto& [k, v] : c) r.c[-k] = v;
    return r;
}

bool TCoeff::bar_invariant() const { return *this == bar(); }

long long TCoeff::eval_t1() const {
    long long s = 0;
    for (const auto& [k, v] : c) s += v;
    return s;
}

bool TCoeff::single_power(int& k, long long& coeff) const {
    if (c.size() != 1) return false;
    k = c.begin()->first;
    coeff = c.begin()->second;
    return true;
}

bool TCoeff::nonneg() const {
    for (const auto& [k, v] : c)
        if (v < 0) return false;
    return true;
}

std::string TCoeff::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c) {
        if (!first || v < 0) os << (v < 0 ? "-" : "+");
        first = false;
        long long av = v < 0 ? -v : v;
        if (av != 1 || k == 0) os << av;
        if (k != 0) {
            if (av != 1) os << '*';
            os << 't';
            if (k != 2) {
                os << '^';
                if (k % 2 == 0)
                    os << k / 2;
                else
                    os << '(' << k << "/2)";
            }
        }
    }
    return os.str();
}

QTElement QTElement::scalar(const TCoeff& c) {
    QTElement x;
    if (!c.is_zero()) x.terms[Monomial::unit()] = c;
    return x;
}

QTElement QTElement::monomial(const Monomial& m, const TCoeff& c) {
    QTElement x;
    if (!c.is_zero()) x.terms[m] = c;
    return x;
}

void QTElement::add_term(const Monomial& m, const TCoeff& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second = it->second.plus(c);
    if (it->second.is_zero()) terms.erase(it);
}

TCoeff QTElement::coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? TCoeff::zero() : it->second;
}

QTElement QTElement::plus(const QTElement& o) const {
    QTElement r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

QTElement QTElement::minus(const QTElement& o) const {
    QTElement r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c.negate());
    return r;
}

QTElement QTElement::scale(const TCoeff& c) const {
    QTElement r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms) {
        TCoeff nv = v.times(c);
        if (!nv.is_zero()) r.terms[m] = nv;
    }
    return r;
}

QTElement QTElement::times_t(int k) const {
    QTElement r;
    for (const auto& [m, v] : terms) r.terms[m] = v.times_t(k);
    return r;
}

int nn(const LieTypeData& g, int i, int p, int j, int s) {
    int di = g.d[i];
    return g.tilde_c(i, j, p - s - di) - g.tilde_c(i, j, p - s + di) - g.tilde_c(i, j, s - p - di) +
           g.tilde_c(i, j, s - p + di);
}

long long nn_mm(const LieTypeData& g, const Monomial& a, const Monomial& b) {
    long long total = 0;
    for (const auto& [ka, va] : a.e)
        for (const auto& [kb, vb] : b.e)
            total += static_cast<long long>(va) * vb * nn(g, ka.first, ka.second, kb.first, kb.second);
    return total;
}

QTElement mul(const LieTypeData& g, const QTElement& a, const QTElement& b) {
    QTElement r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            long long twist = nn_mm(g, ma, mb);
            if (twist > 2000000000LL || twist < -2000000000LL) throw std::overflow_error("t-exponent overflow");
            r.add_term(ma.mul(mb), ca.times(cb).times_t(static_cast<int>(twist)));
        }
    return r;
}

QTElement bar(const QTElement& x) {
    QTElement r;
    for (const auto& [m, c] : x.terms) r.terms[m] = c.bar();
    return r;
}

bool bar_invariant(const QTElement& x) {
    for (const auto& [m, c] : x.terms)
        if (!c.bar_invariant()) return false;
    return true;
}

Monomial a_monomial(const LieTypeData& g, int i, int p) {
    g.check_index(i);
    int di = g.d[i];
    Monomial m = Monomial::var(i, p - di).mul(Monomial::var(i, p + di));
    for (int j = 1; j <= g.rank; ++j) {
        if (j == i) continue;
        int c = g.cartan[j][i];
        if (c == -1)
            m = m.mul(Monomial::var(j, p, -1));
        else if (c == -2)
            m = m.mul(Monomial::var(j, p - 1, -1)).mul(Monomial::var(j, p + 1, -1));
        else if (c == -3)
            m = m.mul(Monomial::var(j, p - 2, -1)).mul(Monomial::var(j, p, -1)).mul(Monomial::var(j, p + 2, -1));
        else if (c != 0)
            throw std::logic_error("unexpected Cartan entry");
    }
    return m;
}

std::optional<std::map<std::pair<int, int>, int>> nakajima_leq(const LieTypeData& g, const Monomial& a,
                                                               const Monomial& b) {
    Monomial q = a.inverse().mul(b);
    std::map<std::pair<int, int>, int> cert;
    long long guard = 0;
    while (!q.is_unit()) {
        if (++guard > 200000) throw std::logic_error("nakajima_leq runaway");
        // variable with the smallest parameter; it can only come from the
        // lowest factor of some A_{i, p+d_i}
        auto best = q.e.begin();
        for (auto it = q.e.begin(); it != q.e.end(); ++it)
            if (it->first.second < best->first.second ||
                (it->first.second == best->first.second && it->first.first < best->first.first))
                best = it;
        auto [i, p] = best->first;
        int u = best->second;
        if (u < 0) return std::nullopt;
        cert[{i, p + g.d[i]}] += u;
        q = q.mul(a_monomial(g, i, p + g.d[i]).pow(-u));
    }
    return cert;
}

Monomial frakD_mono(const LieTypeData& g, const Monomial& m, int k) {
    Monomial r;
    int rh = g.rh_dual();
    for (const auto& [key, v] : m.e) {
        int i = key.first;
        if (k % 2 != 0) i = g.i_star(i);
        r.e[{i, key.second + k * rh}] = v;
    }
    return r;
}

Monomial omega_mono(const Monomial& m) {
    Monomial r;
    for (const auto& [key, v] : m.e) r.e[{key.first, -key.second}] = -v;
    return r;
}

Monomial omega_star_mono(const LieTypeData& g, const Monomial& m) {
    Monomial r;
    int rh = g.rh_dual();
    for (const auto& [key, v] : m.e) r.e[{g.i_star(key.first), -key.second - rh}] = v;
    return r;
}

QTElement frakD_t(const LieTypeData& g, const QTElement& x, int k) {
    QTElement r;
    for (const auto& [m, c] : x.terms) r.terms[frakD_mono(g, m, k)] = c;
    return r;
}

QTElement omega_t(const LieTypeData& g, const QTElement& x) {
    (void)g;
    QTElement r;
    for (const auto& [m, c] : x.terms) r.add_term(omega_mono(m), c.bar());
    return r;
}

QTElement truncate(const QTElement& x, const std::function<bool(int, int)>& keep) {
    QTElement r;
    for (const auto& [m, c] : x.terms) {
        bool ok = true;
        for (const auto& [key, v] : m.e)
            if (!keep(key.first, key.second)) {
                ok = false;
                break;
            }
        if (ok) r.terms[m] = c;
    }
    return r;
}

QTElement truncate_leq_b(const QTElement& x, int b) {
    return truncate(x, [b](int, int p) { return p <= b; });
}

Classical truncate_leq_b(const Classical& x, int b) {
    Classical r;
    for (const auto& [m, c] : x) {
        bool ok = true;
        for (const auto& [key, v] : m.e)
            if (key.second > b) {
                ok = false;
                break;
            }
        if (ok) r[m] = c;
    }
    return r;
}

Classical ev_t1(const QTElement& x) {
    Classical r;
    for (const auto& [m, c] : x.terms) {
        long long v = c.eval_t1();
        if (v != 0) r[m] = v;
    }
    return r;
}

Classical classical_mul(const Classical& a, const Classical& b) {
    Classical r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            long long nv = r[ma.mul(mb)] += ca * cb;
            if (nv == 0) r.erase(ma.mul(mb));
        }
    return r;
}

Monomial parse_monomial(const std::string& text) {
    Monomial m;
    size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("monomial parse error at position " + std::to_string(pos) + ": " + why);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '*')) ++pos;
    };
    auto parse_int = [&]() -> int {
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') fail("expected integer");
        long long v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos++] - '0');
            if (v > 1000000) fail("integer too large");
        }
        return static_cast<int>(neg ? -v : v);
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != 'Y') fail("expected 'Y'");
        ++pos;
        if (pos >= text.size() || text[pos] != '[') fail("expected '['");
        ++pos;
        int i = parse_int();
        if (pos >= text.size() || text[pos] != ',') fail("expected ','");
        ++pos;
        int p = parse_int();
        if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
        ++pos;
        int e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            e = parse_int();
        }
        m = m.mul(Monomial::var(i, p, e));
        skip_ws();
    }
    return m;
}

}  // namespace qgr
