#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgr/isom.hpp"
#include "qgr/json_io.hpp"
#include "qgr/qchar.hpp"
#include "qgr/qcluster.hpp"
#include "qgr/qdata.hpp"
#include "qgr/rmatrix.hpp"

namespace py = pybind11;
using namespace qgr;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

QDatum datum_of(const std::string& type, const std::vector<int>& xi) {
    const LieTypeData& g = LieTypeData::get(type);
    if (xi.empty()) return canonical_height(g, 0);
    return make_qdatum(g, xi);
}

py::dict element_dict(const LieTypeData& g, const Monomial& m, const char* kind, const QTElement& e) {
    py::dict out;
    out["type"] = g.name();
    out["monomial"] = m.str();
    out["kind"] = kind;
    py::list terms;
    for (const auto& [mono, c] : e.terms) {
        py::dict t;
        t["monomial"] = mono.str();
        py::dict coeff;
        for (const auto& [k, v] : c.c) coeff[py::cast(k)] = v;
        t["coeff_half_powers"] = coeff;
        terms.append(t);
    }
    out["terms"] = terms;
    return out;
}

}  // namespace

PYBIND11_MODULE(_qgr, m) {
    m.doc() = "exact (q,t)-characters and verifiers for quantum Grothendieck rings";

    m.def("lie_type", [](const std::string& name) {
        const LieTypeData& g = LieTypeData::get(name);
        py::dict d;
        d["name"] = g.name();
        d["rank"] = g.rank;
        d["r"] = g.r;
        d["h_dual"] = g.h_dual;
        d["ell0"] = g.ell0;
        d["d"] = std::vector<int>(g.d.begin() + 1, g.d.end());
        d["epsilon"] = std::vector<int>(g.epsilon.begin() + 1, g.epsilon.end());
        d["unfolded_vertices"] = g.delta.n;
        return d;
    });

    m.def("tilde_c", [](const std::string& type, int i, int j, int u) {
        return LieTypeData::get(type).tilde_c(i, j, u);
    });
    m.def("star", [](const std::string& type, int i) { return LieTypeData::get(type).i_star(i); });
    m.def("nn", [](const std::string& type, int i, int p, int j, int s) {
        return nn(LieTypeData::get(type), i, p, j, s);
    });

    m.def("char", [](const std::string& type, const std::string& literal, const std::string& kind) {
        const LieTypeData& g = LieTypeData::get(type);
        Monomial mono = parse_monomial(literal);
        if (kind == "classical") {
            auto res = classical_fm(g, mono);
            py::dict d;
            d["applicable"] = res.fm_applicable;
            if (!res.fm_applicable) d["failure"] = res.failure;
            py::list terms;
            for (const auto& [mm, c] : res.classical) {
                py::dict t;
                t["monomial"] = mm.str();
                t["mult"] = c;
                terms.append(t);
            }
            d["terms"] = terms;
            return d;
        }
        if (kind == "F") return element_dict(g, mono, "F", ft(g, mono).elem);
        if (kind == "E") return element_dict(g, mono, "E", et(g, mono).elem);
        auto res = lt(g, mono, default_poset_budget());
        py::dict d = element_dict(g, mono, "L", res.result.elem);
        py::dict kl;
        for (const auto& [mm, p] : res.kl) {
            py::dict poly;
            for (const auto& [k, v] : p.c) poly[py::cast(k / 2)] = v;
            kl[py::cast(mm.str())] = poly;
        }
        d["kl"] = kl;
        return d;
    }, py::arg("type"), py::arg("monomial"), py::arg("kind") = "L");

    m.def("verify_tsystem", [](const std::string& type, int vertex, int p, int s, bool quantum) {
        auto rep = verify_tsystem(LieTypeData::get(type), vertex, p, s, quantum);
        py::dict d;
        d["holds"] = rep.holds;
        d["x2"] = rep.x2;
        d["y2"] = rep.y2;
        d["xy_gap_ok"] = rep.xy_gap_ok;
        d["y_formula_ok"] = rep.y_formula_ok;
        return d;
    }, py::arg("type"), py::arg("vertex"), py::arg("p"), py::arg("s"), py::arg("quantum") = true);

    m.def("verify_tboson", [](const std::string& type, int i, int p) {
        auto rep = verify_tboson(LieTypeData::get(type), i, p);
        return py::make_tuple(rep.holds_plus, rep.holds_minus);
    });

    m.def("verify_kappa", [](const std::string& type, const std::vector<int>& xi) {
        auto phi = phi_t(datum_of(type, xi));
        return phi.kappa_ok;
    }, py::arg("type"), py::arg("xi") = std::vector<int>{});

    m.def("verify_presentation", [](const std::string& type, const std::vector<int>& xi, int k0, int k1) {
        auto rep = verify_presentation(datum_of(type, xi), k0, k1);
        return py::make_tuple(rep.ok, rep.checked);
    }, py::arg("type"), py::arg("xi") = std::vector<int>{}, py::arg("k0") = 0, py::arg("k1") = 1);

    m.def("validate_qdatum", [](const std::string& type, const std::vector<int>& xi) {
        QDatum q{&LieTypeData::get(type), std::vector<int>(1, 0)};
        q.xi.insert(q.xi.end(), xi.begin(), xi.end());
        auto rep = validate_qdatum(q);
        py::dict d;
        d["ok"] = rep.ok;
        d["message"] = rep.message;
        d["parity_offset"] = rep.parity_offset;
        return d;
    });
    m.def("canonical_height", [](const std::string& type, int b) {
        auto q = canonical_height(LieTypeData::get(type), b);
        return std::vector<int>(q.xi.begin() + 1, q.xi.end());
    });
    m.def("ar_ascii", [](const std::string& type, const std::vector<int>& xi) {
        return ar_ascii(datum_of(type, xi));
    }, py::arg("type"), py::arg("xi") = std::vector<int>{});
    m.def("ar_dot", [](const std::string& type, const std::vector<int>& xi) {
        return ar_dot(datum_of(type, xi));
    }, py::arg("type"), py::arg("xi") = std::vector<int>{});
    m.def("tau_order", [](const std::string& type, const std::vector<int>& xi) {
        auto q = datum_of(type, xi);
        return weyl_order(tau_q(q), 2 * q.g->rh_dual() + 1);
    }, py::arg("type"), py::arg("xi") = std::vector<int>{});

    m.def("denominator", [](const std::string& type, int i, int j) {
        auto den = denominator_fund(LieTypeData::get(type), i, j);
        return py::make_tuple(den.roots, den.exact);
    });
    m.def("dd", [](const std::string& type, int i, int p, int j, int s) {
        auto d = dd_fund(LieTypeData::get(type), i, p, j, s);
        return py::make_tuple(d.value, d.exact);
    });

    m.def("psi", [](const std::string& literal, int n) { return psi_b(parse_monomial(literal), n).str(); });
    m.def("psi_table", [](int n, int window) { return json_to_py(psi_table_json(n, window)); },
          py::arg("n"), py::arg("window") = 1);

    m.def("gls_seed", [](const std::string& type, const std::vector<int>& word,
                         const std::vector<int>& script) {
        QuantumSeed seed = gls_seed(reduced_word(LieTypeData::get(type), word));
        for (int k : script) seed = mutate(seed, k);
        return json_to_py(seed_to_json(seed));
    }, py::arg("type"), py::arg("word"), py::arg("script") = std::vector<int>{});

    py::register_exception<FMInapplicableError>(m, "FMInapplicableError");
    py::register_exception<PosetBudgetError>(m, "PosetBudgetError");
}
