#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgr/liealg.hpp"

using namespace qgr;

namespace {
const std::vector<std::string> kAllTypes = {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4",
                                            "C2", "C3", "C4", "D4", "D5", "E6", "F4", "G2"};
}

TEST_CASE("table constants per family") {
    struct Row { const char* name; int r; int hd; long long ell0; };
    const Row rows[] = {
        {"A1", 1, 2, 1},   {"A2", 1, 3, 3},   {"A3", 1, 4, 6},  {"A4", 1, 5, 10}, {"A5", 1, 6, 15},
        {"B2", 2, 3, 6},   {"B3", 2, 5, 15},  {"B4", 2, 7, 28},
        {"C2", 2, 3, 6},   {"C3", 2, 4, 12},  {"C4", 2, 5, 20},
        {"D4", 1, 6, 12},  {"D5", 1, 8, 20},  {"E6", 1, 12, 36},
        {"F4", 2, 9, 36},  {"G2", 3, 4, 12},
    };
    for (const auto& row : rows) {
        const auto& g = LieTypeData::get(row.name);
        CAPTURE(row.name);
        CHECK(g.r == row.r);
        CHECK(g.h_dual == row.hd);
        CHECK(g.ell0 == row.ell0);
        CHECK(static_cast<long long>(g.rank) * g.r * g.h_dual == 2 * g.ell0);
    }
}

TEST_CASE("invalid types rejected") {
    CHECK_THROWS_AS(LieTypeData::get(Family::D, 3), std::invalid_argument);
    CHECK_THROWS_AS(LieTypeData::get(Family::B, 1), std::invalid_argument);
    CHECK_THROWS_AS(LieTypeData::get(Family::E, 9), std::invalid_argument);
    CHECK_THROWS_AS(LieTypeData::get(Family::G, 3), std::invalid_argument);
    CHECK_THROWS_AS(LieTypeData::get("Q7"), std::invalid_argument);
    CHECK_THROWS_AS(LieTypeData::get("A"), std::invalid_argument);
}

TEST_CASE("symmetrized Cartan matrix is symmetric, d in {1,r}") {
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        for (int i = 1; i <= g.rank; ++i) {
            CHECK((g.d[i] == 1 || g.d[i] == g.r));
            for (int j = 1; j <= g.rank; ++j)
                CHECK(g.d[i] * g.cartan[i][j] == g.d[j] * g.cartan[j][i]);
        }
    }
}

TEST_CASE("explicit small Cartan matrices") {
    const auto& b2 = LieTypeData::get("B2");
    CHECK(b2.cartan[1][2] == -1);
    CHECK(b2.cartan[2][1] == -2);
    CHECK(b2.d[1] == 2);
    CHECK(b2.d[2] == 1);
    const auto& g2 = LieTypeData::get("G2");
    CHECK(g2.cartan[1][2] == -1);
    CHECK(g2.cartan[2][1] == -3);
    CHECK(g2.d[1] == 3);
    CHECK(g2.d[2] == 1);
    const auto& f4 = LieTypeData::get("F4");
    CHECK(f4.cartan[2][3] == -1);
    CHECK(f4.cartan[3][2] == -2);
    CHECK(f4.d == std::vector<int>{0, 2, 2, 1, 1});
}

TEST_CASE("tilde_c base values") {
    const auto& a1 = LieTypeData::get("A1");
    CHECK(a1.tilde_c(1, 1, 1) == 1);
    CHECK(a1.tilde_c(1, 1, 3) == -1);
    CHECK(a1.tilde_c(1, 1, 0) == 0);
    CHECK(a1.tilde_c(1, 1, -5) == 0);
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        for (int i = 1; i <= g.rank; ++i)
            for (int j = 1; j <= g.rank; ++j) {
                CHECK(g.tilde_c(i, j, g.d[i]) == (i == j ? 1 : 0));
                CHECK(g.tilde_c(i, j, 0) == 0);
            }
    }
}

TEST_CASE("tilde_c lemma properties on a wide window") {
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        const int rh = g.rh_dual();
        CAPTURE(name);
        for (int i = 1; i <= g.rank; ++i)
            for (int j = 1; j <= g.rank; ++j) {
                int js = g.i_star(j);
                for (int u = -2 * rh; u <= 4 * rh; ++u) {
                    if (u < g.d[i]) CHECK(g.tilde_c(i, j, u) == 0);
                    // (2)
                    CHECK(g.tilde_c(i, j, u + g.d[i]) - g.tilde_c(i, j, u - g.d[i]) ==
                          g.tilde_c(j, i, u + g.d[j]) - g.tilde_c(j, i, u - g.d[j]));
                    // (3)
                    if (g.d[i] == g.d[j]) {
                        CHECK(g.tilde_c(i, j, u) == g.tilde_c(j, i, u));
                    } else if (g.d[i] == 1 && g.d[j] == 2) {
                        CHECK(g.tilde_c(i, j, u) == g.tilde_c(j, i, u + 1) + g.tilde_c(j, i, u - 1));
                    } else if (g.d[i] == 1 && g.d[j] == 3) {
                        CHECK(g.tilde_c(i, j, u) ==
                              g.tilde_c(j, i, u + 2) + g.tilde_c(j, i, u) + g.tilde_c(j, i, u - 2));
                    }
                    // (4)
                    if (u >= 0) CHECK(g.tilde_c(i, j, u + rh) == -g.tilde_c(i, js, u));
                    // (5), (6)
                    if (u >= 0 && u <= rh) {
                        CHECK(g.tilde_c(i, j, rh - u) == g.tilde_c(i, js, u));
                        CHECK(g.tilde_c(i, j, u) >= 0);
                    }
                }
            }
    }
}

TEST_CASE("C(z) * C~(z) = Id as truncated series") {
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        const int rh = g.rh_dual();
        // C(z) row i: z^{d_i}+z^{-d_i} on diagonal, [c_ij]_z off-diagonal.
        auto cz = [&](int i, int j, int deg) -> long long {
            if (i == j) return (deg == g.d[i] || deg == -g.d[i]) ? 1 : 0;
            int c = g.cartan[i][j];
            if (c == 0) return 0;
            int m = -c;
            if (deg >= 1 - m && deg <= m - 1 && (deg - (1 - m)) % 2 == 0) return -1;
            return 0;
        };
        for (int i = 1; i <= g.rank; ++i)
            for (int j = 1; j <= g.rank; ++j)
                for (int u = 0; u <= 2 * rh; ++u) {
                    long long sum = 0;
                    for (int k = 1; k <= g.rank; ++k)
                        for (int deg = -3; deg <= 3; ++deg)
                            sum += cz(i, k, deg) * g.tilde_c(k, j, u - deg);
                    // the identity matrix contributes at u = 0 only
                    CHECK(sum == (u == 0 && i == j ? 1 : 0));
                }
    }
}

TEST_CASE("star involution") {
    const auto& a3 = LieTypeData::get("A3");
    CHECK(a3.i_star(1) == 3);
    CHECK(a3.i_star(2) == 2);
    const auto& b3 = LieTypeData::get("B3");
    CHECK(b3.i_star(1) == 1);
    CHECK(b3.delta_star[1] == 5);  // on the unfolded A5 diagram
    const auto& a1 = LieTypeData::get("A1");
    CHECK(a1.i_star(1) == 1);
    const auto& d5 = LieTypeData::get("D5");
    CHECK(d5.i_star(4) == 5);
    const auto& d4 = LieTypeData::get("D4");
    CHECK(d4.i_star(3) == 3);
    const auto& e6 = LieTypeData::get("E6");
    CHECK(e6.i_star(1) == 6);
    CHECK(e6.i_star(3) == 5);
    CHECK(e6.i_star(2) == 2);
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        for (int i = 1; i <= g.rank; ++i) CHECK(g.i_star(g.i_star(i)) == i);
        for (int v = 1; v <= g.delta.n; ++v) CHECK(g.delta_star[g.delta_star[v]] == v);
        if (g.r > 1)
            for (int i = 1; i <= g.rank; ++i) CHECK(g.i_star(i) == i);
    }
}

TEST_CASE("parity function and orbits") {
    for (const auto& name : kAllTypes) {
        const auto& g = LieTypeData::get(name);
        CHECK(g.epsilon[1] == 0);
        for (int i = 1; i <= g.rank; ++i)
            for (int j = 1; j <= g.rank; ++j)
                if (i != j && g.cartan[i][j] != 0)
                    CHECK(((g.epsilon[i] - g.epsilon[j] - g.dij(i, j)) % 2 + 2) % 2 == 0);
        for (int v = 1; v <= g.delta.n; ++v) {
            CHECK(g.orbit_of[g.sigma[v]] == g.orbit_of[v]);
            int s = v;
            for (int k = 0; k < g.r; ++k) s = g.sigma[s];
            CHECK(s == v);
        }
    }
}
