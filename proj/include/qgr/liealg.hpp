#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgr {

// Families of finite-dimensional simple Lie algebras.
enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Family family_from_char(char c);
std::string family_name(Family f);

// Simply-laced diagram with 1-based vertex labels.
struct Diagram {
    int n = 0;
    std::vector<std::vector<int>> adj;  // adj[v] sorted

    bool adjacent(int a, int b) const;
};

struct IntMatrix {
    int n = 0;
    std::vector<long long> a;  // row-major n x n

    IntMatrix() = default;
    explicit IntMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    static IntMatrix identity(int n);
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }
    bool is_identity() const;
    bool is_minus_identity() const;
};

// Immutable Cartan datum for one finite type, with its unfolding and the
// inverse quantum Cartan coefficients. Obtain instances via LieTypeData::get.
class LieTypeData {
public:
    Family family;
    int rank = 0;       // rank n of the folded algebra
    int r = 1;          // lacing number
    int h_dual = 0;     // dual Coxeter number
    long long ell0 = 0; // number of positive roots of the unfolded diagram

    std::vector<int> d;                    // 1-based, d[i] in {1, r}
    std::vector<std::vector<int>> cartan;  // folded Cartan matrix, 1-based
    std::vector<int> epsilon;              // parity function on I, 1-based

    // Unfolding (Delta, sigma). For simply-laced types Delta is the diagram
    // itself and sigma the identity.
    Diagram delta;
    std::vector<std::vector<int>> delta_cartan;  // Cartan of Delta, 1-based
    std::vector<int> sigma;                      // permutation of Delta_0
    std::vector<int> orbit_of;                   // Delta_0 -> I
    std::vector<std::vector<int>> orbit_members; // I -> sorted vertex list
    std::vector<int> delta_star;                 // involution on Delta_0
    std::vector<int> i_star_tab;                 // involution on I

    // Adjugate data of delta_cartan for exact root-coordinate solves.
    std::vector<std::vector<long long>> delta_cartan_adj;
    long long delta_cartan_det = 0;

    static const LieTypeData& get(Family f, int rank);
    static const LieTypeData& get(const std::string& name);  // e.g. "B3"

    std::string name() const;
    int dij(int i, int j) const { return d[i] < d[j] ? d[i] : d[j]; }
    int i_star(int i) const { return i_star_tab[i]; }
    int rh_dual() const { return r * h_dual; }

    // Coefficient of z^u in the Laurent expansion of C~_{ij}(z) at z = 0.
    int tilde_c(int i, int j, int u) const;

    void check_index(int i) const;
    void check_delta_index(int v) const;

private:
    LieTypeData() = default;
    friend struct LieTypeBuilder;

    std::vector<int> tc_table_;  // [i][j][u], u in [0, 2 r h_dual)
    int tc_period_ = 0;
};

// Longest-element reduced word of the (possibly folded) Cartan matrix,
// computed greedily from rho. Used for the brute-force star check.
std::vector<int> longest_word_of(const std::vector<std::vector<int>>& cartan);

// Involution induced by w0 on the index set of `cartan`, by brute force.
std::vector<int> star_brute_force(const std::vector<std::vector<int>>& cartan);

}  // namespace qgr
