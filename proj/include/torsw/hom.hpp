#ifndef TORSW_HOM_HPP
#define TORSW_HOM_HPP

#include <map>
#include <string>
#include <vector>

#include "torsw/aff.hpp"
#include "torsw/balanced.hpp"
#include "torsw/inverse.hpp"
#include "torsw/lie.hpp"
#include "torsw/matrix.hpp"

namespace torsw {

struct HomSpace {
    std::string side; // "aff" or "toroidal"
    std::vector<RatMatrix> basis;
    int dim() const { return static_cast<int>(basis.size()); }
    // toroidal bookkeeping: dimension at the smaller truncation, and whether
    // enlarging the generator set kept it
    int dim_at_kmax = -1;
    bool stabilized = true;
};

/// Incrementally intersects {x : C_i x = 0}: keep a basis matrix and refine
/// by the kernel of each constraint applied to it.
class SubspaceIntersection {
public:
    explicit SubspaceIntersection(int n) : basis_(RatMatrix::identity(n)) {}

    void constrain(const RatMatrix& c) {
        if (basis_.cols() == 0) return;
        std::vector<RatVector> k = mat_kernel(c * basis_);
        basis_ = basis_ * RatMatrix::from_columns(k, basis_.cols());
    }

    int dim() const { return basis_.cols(); }
    const RatMatrix& basis() const { return basis_; }

private:
    RatMatrix basis_; // columns span the current solution space
};

/// Right-module homomorphisms M -> M', row convention (m maps to m phi):
/// G phi == phi G' for every generator. The constraint on vec(phi) is
/// (I (x) G) - (G'^T (x) I).
inline HomSpace hom_dim_aff(const AffModule& m1, const AffModule& m2) {
    if (m1.loops() != m2.loops() || m1.letters() != m2.letters())
        throw std::invalid_argument("hom between modules of different shape");
    const int d1 = m1.dim(), d2 = m2.dim();
    SubspaceIntersection sol(d1 * d2);
    for (const GenLabel& g : AffPresentation(m1.loops(), m1.letters()).generators()) {
        const RatMatrix& a = m1.gen_matrix(g);
        const RatMatrix& b = m2.gen_matrix(g);
        sol.constrain(RatMatrix::identity(d2).kron(a) -
                      b.transpose().kron(RatMatrix::identity(d1)));
    }
    HomSpace out;
    out.side = "aff";
    for (int j = 0; j < sol.dim(); ++j)
        out.basis.push_back(RatMatrix::unvec(sol.basis().column_vec(j), d1, d2));
    return out;
}

/// Intertwiners W -> W' of the quotient actions, column convention
/// (phi Z == Z' phi), over the generator set {h_i(k), x_i^{+/-}(k) :
/// i in [0,n], |k| <= kmax}. Solved at kmax and kmax+1; a dimension drop on
/// enlargement is flagged, never silently accepted.
inline HomSpace hom_dim_toroidal(const BalancedModule& b1, const BalancedModule& b2,
                                 long kmax) {
    if (b1.n() != b2.n() || b1.ell() != b2.ell())
        throw std::invalid_argument("hom between quotients of different shape");
    const int d1 = b1.dim(), d2 = b2.dim();
    auto solve_up_to = [&](long bound, SubspaceIntersection& sol, long from) {
        for (long k = from; k <= bound; ++k)
            for (long sgn : {1L, -1L}) {
                long kk = k * sgn;
                if (kk < -bound) continue;
                for (int i = 0; i <= b1.n(); ++i)
                    for (GenKind kd : {GenKind::H, GenKind::XPlus, GenKind::XMinus}) {
                        const RatMatrix& z = b1.toroidal_operator({kd, i, kk});
                        const RatMatrix& zp = b2.toroidal_operator({kd, i, kk});
                        sol.constrain(z.transpose().kron(RatMatrix::identity(d2)) -
                                      RatMatrix::identity(d1).kron(zp));
                    }
                if (k == 0) break;
            }
    };
    SubspaceIntersection sol(d1 * d2);
    solve_up_to(kmax, sol, 0);
    int at_kmax = sol.dim();
    solve_up_to(kmax + 1, sol, kmax + 1);
    HomSpace out;
    out.side = "toroidal";
    out.dim_at_kmax = at_kmax;
    out.stabilized = sol.dim() == at_kmax;
    for (int j = 0; j < sol.dim(); ++j)
        out.basis.push_back(RatMatrix::unvec(sol.basis().column_vec(j), d2, d1));
    return out;
}

struct FaithfulReport {
    int dim_aff = 0, dim_tor = 0;
    bool stabilized = false;
    bool injective = false; // rank of the images of f -> f (x) id
    bool surjective = false;
    bool images_intertwine = false;
    bool pass() const { return stabilized && injective && surjective && images_intertwine; }
};

/// The induced quotient map of f (x) id for a module hom phi (row convention).
inline RatMatrix induced_hom(const BalancedModule& b1, const BalancedModule& b2,
                             const RatMatrix& phi) {
    RatMatrix ambient = phi.transpose().kron(RatMatrix::identity(b1.tensor_space().dim()));
    return b2.project() * ambient * b1.section();
}

/// f -> f (x) id is a bijection Hom(M, M') -> Hom(F M, F M') when ell <= n:
/// checked by exact rank of the images and dimension equality.
inline FaithfulReport check_fully_faithful(const AffModule& m1, const AffModule& m2, int n,
                                           long kmax) {
    BalancedModule b1(m1, n), b2(m2, n);
    HomSpace aff = hom_dim_aff(m1, m2);
    HomSpace tor = hom_dim_toroidal(b1, b2, kmax);
    FaithfulReport rep;
    rep.dim_aff = aff.dim();
    rep.dim_tor = tor.dim();
    rep.stabilized = tor.stabilized;

    std::vector<RatVector> image_vecs;
    rep.images_intertwine = true;
    for (const RatMatrix& phi : aff.basis) {
        RatMatrix ind = induced_hom(b1, b2, phi);
        image_vecs.push_back(ind.vec());
        for (long k = -kmax; k <= kmax; ++k)
            for (int i = 0; i <= n; ++i)
                for (GenKind kd : {GenKind::H, GenKind::XPlus, GenKind::XMinus})
                    if (ind * b1.toroidal_operator({kd, i, k}) !=
                        b2.toroidal_operator({kd, i, k}) * ind)
                        rep.images_intertwine = false;
    }
    rep.injective =
        rank(RatMatrix::from_columns(image_vecs, b1.dim() * b2.dim())) == aff.dim();
    rep.surjective = aff.dim() == tor.dim();
    return rep;
}

inline std::map<Weight, int> tensor_weight_multiset(int n, int ell) {
    TensorSpace sp(n, ell);
    std::map<Weight, int> out;
    for (int t = 0; t < sp.dim(); ++t) ++out[sp.weight_of_tuple(sp.tuple_of(t))];
    return out;
}

/// multiset inclusion: every weight multiplicity of ws fits inside the
/// reference multiset.
inline bool weights_embed(const std::map<Weight, int>& ws, const std::map<Weight, int>& ref) {
    for (const auto& [w, d] : ws) {
        auto it = ref.find(w);
        if (it == ref.end() || it->second < d) return false;
    }
    return true;
}

/// Degree-ell membership: the necessary weight-multiset test against
/// V^{(x) ell}, plus the constructive certificate (the object is a balanced
/// quotient by construction).
inline ClaimReport degree_check(const BalancedModule& b) {
    ClaimReport rep;
    rep.check("weight multiset embeds in the ell-fold tensor power",
              weights_embed(b.weight_multiset(), tensor_weight_multiset(b.n(), b.ell())));
    rep.check("object arises as a balanced quotient", true);
    return rep;
}

} // namespace torsw

#endif
