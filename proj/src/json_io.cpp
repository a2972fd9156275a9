#include "qgr/json_io.hpp"

namespace qgr {

namespace {

std::string var_key(int i, int p) { return "Y[" + std::to_string(i) + "," + std::to_string(p) + "]"; }

std::pair<int, int> parse_var_key(const std::string& key) {
    Monomial m = parse_monomial(key);
    if (m.e.size() != 1 || m.e.begin()->second != 1)
        throw std::invalid_argument("bad monomial key: " + key);
    return m.e.begin()->first;
}

}  // namespace

nlohmann::json monomial_to_json(const Monomial& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : m.e) j[var_key(k.first, k.second)] = v;
    return j;
}

Monomial monomial_from_json(const nlohmann::json& j) {
    Monomial m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto [i, p] = parse_var_key(it.key());
        m = m.mul(Monomial::var(i, p, it.value().get<int>()));
    }
    return m;
}

nlohmann::json element_to_json(const QTElement& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : x.terms) {
        nlohmann::json coeff = nlohmann::json::object();
        for (const auto& [k, v] : c.c) coeff[std::to_string(k)] = v;
        arr.push_back({{"coeff", coeff}, {"monomial", monomial_to_json(m)}});
    }
    return arr;
}

QTElement element_from_json(const nlohmann::json& j) {
    QTElement x;
    for (const auto& rec : j) {
        Monomial m = monomial_from_json(rec.at("monomial"));
        TCoeff c;
        const auto& coeff = rec.at("coeff");
        for (auto it = coeff.begin(); it != coeff.end(); ++it) {
            long long v = it.value().get<long long>();
            if (v != 0) c.c[std::stoi(it.key())] = v;
        }
        x.add_term(m, c);
    }
    return x;
}

nlohmann::json classical_to_json(const Classical& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : x) arr.push_back({{"mult", c}, {"monomial", monomial_to_json(m)}});
    return arr;
}

Classical classical_from_json(const nlohmann::json& j) {
    Classical x;
    for (const auto& rec : j) x[monomial_from_json(rec.at("monomial"))] = rec.at("mult").get<long long>();
    return x;
}

}  // namespace qgr
