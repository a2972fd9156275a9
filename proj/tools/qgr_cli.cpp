#include "CLI11.hpp"

#include "qgr/isom.hpp"
#include "qgr/json_io.hpp"
#include "qgr/qchar.hpp"
#include "qgr/qcluster.hpp"
#include "qgr/qdata.hpp"
#include "qgr/rmatrix.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

using namespace qgr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFmInapplicable = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerifyFailed = 4;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

QDatum datum_from_options(const LieTypeData& g, const std::string& xi_text, bool have_canonical,
                          int canonical_b) {
    if (!xi_text.empty()) {
        auto xi = parse_int_list(xi_text);
        if (static_cast<int>(xi.size()) != g.delta.n)
            throw std::invalid_argument("expected " + std::to_string(g.delta.n) + " heights for " + g.name());
        QDatum q{&g, std::vector<int>(1, 0)};
        q.xi.insert(q.xi.end(), xi.begin(), xi.end());
        auto rep = validate_qdatum(q);
        if (!rep.ok) throw std::invalid_argument("invalid height function: " + rep.message);
        return q;
    }
    return canonical_height(g, have_canonical ? canonical_b : 0);
}

std::string element_text(const QTElement& x) {
    std::ostringstream os;
    for (const auto& [m, c] : x.terms) os << c.str() << "  " << m.str() << "\n";
    return os.str();
}

nlohmann::json char_header(const LieTypeData& g, const Monomial& m, const std::string& kind,
                           const QTElement& elem) {
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& [mono, c] : elem.terms)
        for (const auto& [k, v] : c.c) {
            if (first || k < lo) lo = k;
            if (first || k > hi) hi = k;
            first = false;
        }
    return {{"type", g.name()},
            {"monomial", monomial_to_json(m)},
            {"kind", kind},
            {"t_degree_min_halves", lo},
            {"t_degree_max_halves", hi}};
}

int cmd_char(const std::string& type, const std::string& literal, const std::string& kind, bool truncate,
             int trunc_b, const std::string& out, const std::string& format) {
    const LieTypeData& g = LieTypeData::get(type);
    Monomial m = parse_monomial(literal);
    for (const auto& [key, v] : m.e) {
        g.check_index(key.first);
        if (((key.second - g.epsilon[key.first]) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("Y[" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                        "] is off the parity lattice of " + g.name());
    }
    QTElement elem;
    nlohmann::json extra;
    if (kind == "classical") {
        auto res = classical_fm(g, m);
        if (!res.fm_applicable) {
            std::cerr << "FM-inapplicable: " << res.failure << "\n";
            return kExitFmInapplicable;
        }
        for (const auto& [mono, c] : res.classical) {
            TCoeff tc;
            tc.c[0] = c;
            elem.add_term(mono, tc);
        }
    } else if (kind == "F") {
        elem = ft(g, m).elem;
    } else if (kind == "E") {
        elem = et(g, m).elem;
    } else {
        auto res = lt(g, m, default_poset_budget());
        elem = res.result.elem;
        nlohmann::json kl = nlohmann::json::object();
        for (const auto& [mono, p] : res.kl) {
            int deg = p.c.empty() ? 0 : p.c.rbegin()->first / 2;
            std::vector<long long> coeffs(deg + 1, 0);
            for (const auto& [k, v] : p.c) coeffs[k / 2] = v;
            kl[mono.str()] = coeffs;
        }
        extra["kl"] = kl;
    }
    if (truncate) elem = truncate_leq_b(elem, trunc_b);
    if (format == "json") {
        nlohmann::json j = {{"header", char_header(g, m, kind, elem)}, {"terms", element_to_json(elem)}};
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        write_output(out, j.dump(2) + "\n");
    } else {
        write_output(out, element_text(elem));
    }
    return kExitOk;
}

struct Instance {
    std::string key;
    std::function<std::pair<bool, std::string>()> run;
};

int run_instances(std::vector<Instance>& instances, int jobs, const std::string& out) {
    std::vector<std::pair<bool, std::string>> results(instances.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= instances.size()) return;
            try {
                results[idx] = instances[idx].run();
            } catch (const std::exception& e) {
                results[idx] = {false, std::string("error: ") + e.what()};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::ostringstream os;
    bool all = true;
    for (size_t i = 0; i < instances.size(); ++i) {
        all = all && results[i].first;
        os << instances[i].key << ": " << (results[i].first ? "PASS" : "FAIL");
        if (!results[i].second.empty()) os << " " << results[i].second;
        os << "\n";
    }
    os << (all ? "ALL PASS" : "FAIL") << " (" << instances.size() << " instances)\n";
    write_output(out, os.str());
    return all ? kExitOk : kExitVerifyFailed;
}

std::string half_str(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

void add_tsystem(std::vector<Instance>& out, const LieTypeData& g, int max_steps) {
    for (int v = 1; v <= g.delta.n; ++v)
        for (int k = 1; k <= max_steps; ++k) {
            int i = g.orbit_of[v];
            int p = g.epsilon[i];
            int s = p + 2 * g.d[i] * k;
            std::ostringstream key;
            key << "tsystem " << g.name() << " vertex=" << v << " [" << p << "," << s << "]";
            out.push_back({key.str(), [&g, v, p, s] {
                               auto rep = verify_tsystem(g, v, p, s, true);
                               auto repc = verify_tsystem(g, v, p, s, false);
                               bool ok = rep.holds && repc.holds && rep.xy_gap_ok && rep.y_formula_ok;
                               std::string note = "x=" + half_str(rep.x2) + " y=" + half_str(rep.y2);
                               if (!rep.first_diff.empty()) note += " diff=" + rep.first_diff;
                               return std::make_pair(ok, note);
                           }});
        }
}

void add_tboson(std::vector<Instance>& out, const LieTypeData& g, int window) {
    for (int i = 1; i <= g.rank; ++i)
        for (int w = 0; w < window; ++w) {
            int p = g.epsilon[i] + 2 * w;
            std::ostringstream key;
            key << "tboson " << g.name() << " i=" << i << " p=" << p;
            out.push_back({key.str(), [&g, i, p] {
                               auto rep = verify_tboson(g, i, p);
                               return std::make_pair(rep.holds_plus && rep.holds_minus,
                                                     rep.diff.empty() ? "" : "diff=" + rep.diff);
                           }});
        }
}

void add_tclemma(std::vector<Instance>& out, const LieTypeData& g) {
    int rh = g.rh_dual();
    for (int prop = 1; prop <= 6; ++prop) {
        std::ostringstream key;
        key << "tc-lemma " << g.name() << " property=" << prop;
        out.push_back({key.str(), [&g, prop, rh] {
                           for (int i = 1; i <= g.rank; ++i)
                               for (int j = 1; j <= g.rank; ++j) {
                                   int js = g.i_star(j);
                                   for (int u = -2 * rh; u <= 4 * rh; ++u) {
                                       bool ok = true;
                                       switch (prop) {
                                           case 1:
                                               if (u < g.d[i]) ok = g.tilde_c(i, j, u) == 0;
                                               if (u == g.d[i])
                                                   ok = ok && g.tilde_c(i, j, u) == (i == j ? 1 : 0);
                                               break;
                                           case 2:
                                               ok = g.tilde_c(i, j, u + g.d[i]) - g.tilde_c(i, j, u - g.d[i]) ==
                                                    g.tilde_c(j, i, u + g.d[j]) - g.tilde_c(j, i, u - g.d[j]);
                                               break;
                                           case 3:
                                               if (g.d[i] == g.d[j])
                                                   ok = g.tilde_c(i, j, u) == g.tilde_c(j, i, u);
                                               else if (g.d[i] == 1 && g.d[j] == 2)
                                                   ok = g.tilde_c(i, j, u) ==
                                                        g.tilde_c(j, i, u + 1) + g.tilde_c(j, i, u - 1);
                                               else if (g.d[i] == 1 && g.d[j] == 3)
                                                   ok = g.tilde_c(i, j, u) == g.tilde_c(j, i, u + 2) +
                                                                                  g.tilde_c(j, i, u) +
                                                                                  g.tilde_c(j, i, u - 2);
                                               break;
                                           case 4:
                                               if (u >= 0)
                                                   ok = g.tilde_c(i, j, u + rh) == -g.tilde_c(i, js, u);
                                               break;
                                           case 5:
                                               if (u >= 0 && u <= rh)
                                                   ok = g.tilde_c(i, j, rh - u) == g.tilde_c(i, js, u);
                                               break;
                                           case 6:
                                               if (u >= 0 && u <= rh) ok = g.tilde_c(i, j, u) >= 0;
                                               break;
                                       }
                                       if (!ok)
                                           return std::make_pair(false, "(i,j,u)=(" + std::to_string(i) + "," +
                                                                            std::to_string(j) + "," +
                                                                            std::to_string(u) + ")");
                                   }
                               }
                           return std::make_pair(true, std::string());
                       }});
    }
}

void add_kappa(std::vector<Instance>& out, const QDatum& q) {
    out.push_back({"kappa " + q.g->name(), [q] {
                       auto phi = phi_t(q);
                       if (phi.kappa_ok) return std::make_pair(true, std::string());
                       return std::make_pair(false, "pair (" + std::to_string(phi.bad_s) + "," +
                                                        std::to_string(phi.bad_t) + ")");
                   }});
}

void add_face(std::vector<Instance>& out, const QDatum& q) {
    const LieTypeData& g = *q.g;
    int rh = g.rh_dual();
    for (int i = 1; i <= g.rank; ++i)
        for (int j = 1; j <= g.rank; ++j) {
            Monomial m = Monomial::var(i, g.epsilon[i]).mul(Monomial::var(j, g.epsilon[j] + rh));
            std::ostringstream key;
            key << "facE " << g.name() << " m=" << m.str();
            out.push_back({key.str(), [q, m] {
                               CoordinateMap cm(q);
                               auto rep = verify_facE(cm, m);
                               return std::make_pair(rep.ok, "nu=" + half_str(static_cast<int>(rep.nu2)) +
                                                                 (rep.diff.empty() ? "" : " diff=" + rep.diff));
                           }});
        }
}

void add_presentation(std::vector<Instance>& out, const QDatum& q, int k0, int k1) {
    std::ostringstream key;
    key << "presentation " << q.g->name() << " k=[" << k0 << "," << k1 << "]";
    out.push_back({key.str(), [q, k0, k1] {
                       auto rep = verify_presentation(q, k0, k1);
                       std::string note = std::to_string(rep.checked) + " relations";
                       if (!rep.ok) note += " first failure " + rep.first_failure;
                       return std::make_pair(rep.ok, note);
                   }});
}

void add_psi(std::vector<Instance>& out, int n, int window) {
    out.push_back({"psi n=" + std::to_string(n) + " printed values", [n] {
                       if (n != 2) return std::make_pair(true, std::string("(printed values are for n=2)"));
                       bool ok = psi_b(Monomial::var(1, -1), 2) == Monomial::var(1, -2) &&
                                 psi_b(Monomial::var(2, -2), 2) == Monomial::var(2, -3) &&
                                 psi_b(Monomial::var(2, -4), 2) ==
                                     Monomial::var(2, -7).mul(Monomial::var(2, -5));
                       return std::make_pair(ok, std::string());
                   }});
    out.push_back({"psi n=" + std::to_string(n) + " window bijection", [n, window] {
                       const auto& ga = LieTypeData::get(Family::A, 2 * n - 1);
                       const auto& gb = LieTypeData::get(Family::B, n);
                       std::set<Monomial> images;
                       int count = 0;
                       for (int j = -window; j <= window; ++j)
                           for (int i = 1; i <= 2 * n - 1; ++i)
                               for (int k = 0; k <= 2 * n - 1 - i; ++k) {
                                   Monomial from = frakD_mono(ga, Monomial::var(i, -i - 2 * k), j);
                                   Monomial img = psi_b(from, n);
                                   if (!img.dominant()) return std::make_pair(false, std::string("image not dominant"));
                                   if (!(psi_b(frakD_mono(ga, from, 1), n) == frakD_mono(gb, img, 1)))
                                       return std::make_pair(false, "not D-equivariant at " + from.str());
                                   images.insert(img);
                                   ++count;
                               }
                       if (static_cast<int>(images.size()) != count)
                           return std::make_pair(false, std::string("not injective"));
                       return std::make_pair(true, std::to_string(count) + " variables");
                   }});
    out.push_back({"psi n=" + std::to_string(n) + " Q-weight preservation", [n] {
                       auto qa = ab_datum_a(n);
                       auto qb = ab_datum_b(n);
                       CoordinateMap cma(qa), cmb(qb);
                       for (int i = 1; i <= 2 * n - 1; ++i)
                           for (int k = 0; k <= 2 * n - 1 - i; ++k) {
                               Monomial from = Monomial::var(i, -i - 2 * k);
                               if (!(wt_q(cma, from) == wt_q(cmb, psi_b(from, n))))
                                   return std::make_pair(false, "at " + from.str());
                           }
                       return std::make_pair(true, std::string());
                   }});
}

int cmd_qdatum(const std::string& type, const std::string& xi_text, bool have_canonical, int canonical_b,
               bool dot, const std::string& out) {
    const LieTypeData& g = LieTypeData::get(type);
    QDatum q = datum_from_options(g, xi_text, have_canonical, canonical_b);
    auto rep = validate_qdatum(q);
    std::ostringstream os;
    os << "type " << g.name() << "  xi =";
    for (int v = 1; v <= g.delta.n; ++v) os << " " << q.xi[v];
    os << "\nparity offset " << rep.parity_offset << "\n";
    auto tau = tau_q(q);
    int order = weyl_order(tau, 2 * g.rh_dual() + 1);
    os << "tau order " << order << " (r h_dual = " << g.rh_dual() << ")\n";
    if (order != g.rh_dual()) throw std::logic_error("tau order mismatch");
    auto verts = ar_vertices(q);
    os << "AR quiver: " << verts.size() << " vertices (ell0 = " << g.ell0 << ")\n";
    if (have_canonical) {
        os << "window (" << canonical_b - g.rh_dual() << "," << canonical_b << "]\n";
    }
    os << (dot ? ar_dot(q) : ar_ascii(q));
    write_output(out, os.str());
    return kExitOk;
}

int cmd_cluster(const std::string& type, const std::string& word_text, const std::string& xi_text,
                bool have_canonical, int canonical_b, const std::string& script, const std::string& out) {
    const LieTypeData& g = LieTypeData::get(type);
    QuantumSeed seed;
    if (!word_text.empty()) {
        seed = gls_seed(reduced_word(g, parse_int_list(word_text)));
    } else {
        seed = seed_from_qdatum(datum_from_options(g, xi_text, have_canonical, canonical_b));
    }
    if (!script.empty()) {
        std::ifstream is(script);
        if (!is) throw std::invalid_argument("cannot read mutation script " + script);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            seed = mutate(seed, std::stoi(line));
        }
    }
    write_output(out, seed_to_json(seed).dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in quantum Grothendieck rings of quantum loop algebras"};
    app.require_subcommand(1);

    std::string type, literal, kind = "L", out, format = "json", xi_text, word_text, script;
    int trunc_b = 0, canonical_b = 0, jobs = 1, max_steps = 3, window = 1, psi_n = 2, kmin = 0, kmax = 1,
        ab_pair = 0;
    bool dot = false;
    std::string table_out;

    auto* c = app.add_subcommand("char", "compute a (q,t)-character");
    c->add_option("type", type)->required();
    c->add_option("monomial", literal, "product of Y[i,p] factors with optional ^e");
    c->add_option("--kind", kind)->check(CLI::IsMember({"classical", "F", "E", "L"}));
    auto* topt = c->add_option("--truncate", trunc_b, "drop variables with parameter above the bound");
    c->add_option("-o,--output", out);
    c->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* v = app.add_subcommand("verify", "run a verifier suite");
    std::string suite;
    v->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"tsystem", "tboson", "presentation", "kappa", "facE", "tc-lemma", "psi"}));
    v->add_option("type", type);
    v->add_option("--max-steps", max_steps);
    v->add_option("--window", window);
    v->add_option("--n", psi_n);
    v->add_option("--kmin", kmin);
    v->add_option("--kmax", kmax);
    v->add_option("--ab-pair", ab_pair, "run the presentation for the paired A/B data of this rank");
    v->add_option("--xi", xi_text);
    auto* vcan = v->add_option("--canonical", canonical_b);
    v->add_option("--jobs", jobs);
    v->add_option("-o,--output", out);
    v->add_option("--table-out", table_out, "psi: write the mapping table as JSON");

    auto* qd = app.add_subcommand("qdatum", "validate a Q-datum and render its AR quiver");
    qd->add_option("type", type)->required();
    qd->add_option("--xi", xi_text);
    auto* qcan = qd->add_option("--canonical", canonical_b);
    qd->add_flag("--dot", dot);
    bool ascii = false;
    qd->add_flag("--ascii", ascii);
    qd->add_option("-o,--output", out);

    auto* cl = app.add_subcommand("cluster", "GLS quantum seed and mutations");
    cl->add_option("type", type)->required();
    cl->add_option("--word", word_text, "comma-separated reduced word for w0");
    cl->add_option("--xi", xi_text);
    auto* ccan = cl->add_option("--canonical", canonical_b);
    cl->add_option("--mutate", script, "mutation script: one exchangeable index per line");
    cl->add_option("-o,--output", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("char"))
            return cmd_char(type, literal, kind, topt->count() > 0, trunc_b, out, format);
        if (app.got_subcommand("qdatum"))
            return cmd_qdatum(type, xi_text, qcan->count() > 0, canonical_b, dot, out);
        if (app.got_subcommand("cluster"))
            return cmd_cluster(type, word_text, xi_text, ccan->count() > 0, canonical_b, script, out);

        // verify
        std::vector<Instance> instances;
        if (suite == "psi") {
            add_psi(instances, psi_n, window);
            if (!table_out.empty())
                write_output(table_out, psi_table_json(psi_n, window).dump(2) + "\n");
        } else if (suite == "presentation" && ab_pair > 0) {
            add_presentation(instances, ab_datum_a(ab_pair), kmin, kmax);
            add_presentation(instances, ab_datum_b(ab_pair), kmin, kmax);
        } else {
            if (type.empty()) throw std::invalid_argument("this suite needs a type argument");
            const LieTypeData& g = LieTypeData::get(type);
            if (suite == "tsystem") add_tsystem(instances, g, max_steps);
            if (suite == "tboson") add_tboson(instances, g, window);
            if (suite == "tc-lemma") add_tclemma(instances, g);
            if (suite == "kappa")
                add_kappa(instances, datum_from_options(g, xi_text, vcan->count() > 0, canonical_b));
            if (suite == "facE")
                add_face(instances, datum_from_options(g, xi_text, vcan->count() > 0, canonical_b));
            if (suite == "presentation")
                add_presentation(instances, datum_from_options(g, xi_text, vcan->count() > 0, canonical_b),
                                 kmin, kmax);
        }
        return run_instances(instances, jobs, out);
    } catch (const qgr::FMInapplicableError& e) {
        std::cerr << "FM-inapplicable: " << e.what() << "\n";
        return kExitFmInapplicable;
    } catch (const qgr::PosetBudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << " (set QGR_BUDGET to raise)\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}
