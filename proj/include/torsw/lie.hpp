#ifndef TORSW_LIE_HPP
#define TORSW_LIE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "torsw/matrix.hpp"

namespace torsw {

/// Generator labels for sl_{n+1}[s^{±1}, t^{±1}] in the affine-style
/// generating set:
/// h_i(k), x_i^+(k), x_i^-(k) with node i in [0, n] and s-exponent k.
enum class GenKind { H, XPlus, XMinus };

struct TorGen {
    GenKind kind;
    int node; // i in [0, n]
    long k;   // exponent of s

    bool operator==(const TorGen& o) const {
        return kind == o.kind && node == o.node && k == o.k;
    }
    bool operator<(const TorGen& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (node != o.node) return node < o.node;
        return k < o.k;
    }
    std::string label() const {
        std::string base = kind == GenKind::H ? "h" : (kind == GenKind::XPlus ? "x+" : "x-");
        return base + std::to_string(node) + "(" + std::to_string(k) + ")";
    }
};

/// General multiloop element x (x) t_1^{p_1}...t_m^{p_m}.
struct LoopMonomial {
    RatMatrix elem;         // traceless (n+1)x(n+1)
    std::vector<long> exps; // p in Z^m
};

/// Matrix unit E_{ij} in (n+1)x(n+1), 1-based indices.
inline RatMatrix mat_unit(int i, int j, int n) {
    if (i < 1 || i > n + 1 || j < 1 || j > n + 1)
        throw std::out_of_range("matrix unit index out of range");
    RatMatrix e(n + 1, n + 1);
    e.set(i - 1, j - 1, 1);
    return e;
}

inline bool is_traceless(const RatMatrix& a) {
    Rational tr(0);
    for (int i = 0; i < a.rows(); ++i) tr += a.at(i, i);
    return tr == 0;
}

/// Chevalley h_i = E_ii - E_{i+1,i+1}, i in [1, n]; h_0 = -(h_1 + ... + h_n).
inline RatMatrix chevalley_h(int i, int n) {
    if (i == 0) {
        RatMatrix h(n + 1, n + 1);
        h.set(n, n, 1);
        h.set(0, 0, -1);
        return h;
    }
    if (i < 1 || i > n) throw std::out_of_range("chevalley_h node out of range");
    return mat_unit(i, i, n) - mat_unit(i + 1, i + 1, n);
}

/// Entry of the affine Cartan matrix of type A_n^{(1)}, i, j in [0, n].
inline long cartan_entry(int i, int j, int n) {
    if (i < 0 || i > n || j < 0 || j > n) throw std::out_of_range("cartan index out of range");
    if (i == j) return 2;
    if (n == 1) return -2;
    int d = i - j;
    if (d < 0) d = -d;
    return (d == 1 || d == n) ? -1 : 0;
}

/// Matrix of the generator on the natural representation V (the s-exponent
/// and the t-decoration evaluate to 1):
///   x_i^+ = E_{i,i+1}, x_i^- = E_{i+1,i}, h_i = E_ii - E_{i+1,i+1} (i >= 1),
///   x_0^+ = E_{n+1,1}, x_0^- = E_{1,n+1}, h_0 = E_{n+1,n+1} - E_{11}.
inline RatMatrix natural_rep(const TorGen& g, int n) {
    if (g.node < 0 || g.node > n) throw std::out_of_range("natural_rep node out of range");
    switch (g.kind) {
        case GenKind::H:
            return chevalley_h(g.node, n);
        case GenKind::XPlus:
            return g.node == 0 ? mat_unit(n + 1, 1, n) : mat_unit(g.node, g.node + 1, n);
        case GenKind::XMinus:
            return g.node == 0 ? mat_unit(1, n + 1, n) : mat_unit(g.node + 1, g.node, n);
    }
    throw std::logic_error("unreachable");
}

/// Evaluation action on V: every Laurent variable is evaluated at 1.
inline RatMatrix eval_action(const LoopMonomial& x) { return x.elem; }

/// Weight in the epsilon-basis, stored modulo the all-ones vector and
/// canonicalized so the last coordinate is 0.
struct Weight {
    std::vector<long> coords; // length n+1, coords.back() == 0

    explicit Weight(std::vector<long> c) : coords(std::move(c)) {
        if (coords.empty()) throw std::invalid_argument("empty weight");
        long last = coords.back();
        for (auto& v : coords) v -= last;
    }

    long pairing(int i) const { // lambda(h_i), i in [1, n]
        return coords.at(i - 1) - coords.at(i);
    }
    Weight operator+(const Weight& o) const {
        if (coords.size() != o.coords.size()) throw std::invalid_argument("weight size mismatch");
        std::vector<long> c(coords.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords[i] + o.coords[i];
        return Weight(std::move(c));
    }
    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator<(const Weight& o) const { return coords < o.coords; }
};

/// Weight of the basis vector v_r: epsilon_r.
inline Weight weight_of(int r, int n) {
    if (r < 1 || r > n + 1) throw std::out_of_range("weight_of index out of range");
    std::vector<long> c(n + 1, 0);
    c[r - 1] = 1;
    return Weight(std::move(c));
}

/// Decomposition x = sum [a_j, b_j] used by the gluing recursion:
///   c E_{ij} = [c/2 (E_ii - E_jj), E_ij] for off-diagonal terms,
///   d h_i    = [d x_i^+, x_i^-]          for the diagonal part.
inline std::vector<std::pair<RatMatrix, RatMatrix>> chevalley_decompose(const RatMatrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("decompose non-square matrix");
    const int n = x.rows() - 1;
    if (!is_traceless(x)) throw std::invalid_argument("decompose non-traceless matrix");
    std::vector<std::pair<RatMatrix, RatMatrix>> terms;
    for (int i = 1; i <= n + 1; ++i) {
        for (int j = 1; j <= n + 1; ++j) {
            if (i == j) continue;
            Rational c = x.at(i - 1, j - 1);
            if (c == 0) continue;
            terms.emplace_back((mat_unit(i, i, n) - mat_unit(j, j, n)) * (c / 2),
                               mat_unit(i, j, n));
        }
    }
    // diagonal = sum_i d_i h_i with d_i the leading partial sums
    Rational partial(0);
    for (int i = 1; i <= n; ++i) {
        partial += x.at(i - 1, i - 1);
        if (partial == 0) continue;
        terms.emplace_back(mat_unit(i, i + 1, n) * partial, mat_unit(i + 1, i, n));
    }
    return terms;
}

inline std::vector<std::pair<RatMatrix, RatMatrix>> chevalley_decompose(const TorGen& g, int n) {
    return chevalley_decompose(natural_rep(g, n));
}

/// Basis of sl_{n+1}: E_{ij} (i != j) in row-major order, then h_1..h_n.
inline std::vector<RatMatrix> sl_basis(int n) {
    std::vector<RatMatrix> basis;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j)
            if (i != j) basis.push_back(mat_unit(i, j, n));
    for (int i = 1; i <= n; ++i) basis.push_back(chevalley_h(i, n));
    return basis;
}

/// Coordinates of a traceless matrix in sl_basis order.
inline std::vector<Rational> sl_coords(const RatMatrix& x) {
    const int n = x.rows() - 1;
    if (!is_traceless(x)) throw std::invalid_argument("sl_coords of non-traceless matrix");
    std::vector<Rational> c;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j)
            if (i != j) c.push_back(x.at(i - 1, j - 1));
    // diagonal in the h_i basis: coefficient of h_i is a_1 + ... + a_i
    Rational partial(0);
    for (int i = 1; i <= n; ++i) {
        partial += x.at(i - 1, i - 1);
        c.push_back(partial);
    }
    return c;
}

} // namespace torsw

#endif
