#ifndef TORSW_BALANCED_HPP
#define TORSW_BALANCED_HPP

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsw/aff.hpp"
#include "torsw/lie.hpp"
#include "torsw/matrix.hpp"
#include "torsw/permutation.hpp"

namespace torsw {

/// Index bookkeeping for V^{(x) ell}, dim (n+1)^ell. Tuples are 1-based
/// vectors of length ell; place 1 is the major digit.
class TensorSpace {
public:
    TensorSpace(int n, int ell) : n_(n), ell_(ell) {
        dim_ = 1;
        for (int i = 0; i < ell; ++i) dim_ *= n + 1;
    }

    int n() const { return n_; }
    int ell() const { return ell_; }
    int dim() const { return dim_; }

    int index_of(const std::vector<int>& tuple) const {
        if (static_cast<int>(tuple.size()) != ell_)
            throw std::invalid_argument("tuple length mismatch");
        int idx = 0;
        for (int v : tuple) {
            if (v < 1 || v > n_ + 1) throw std::out_of_range("tuple entry out of range");
            idx = idx * (n_ + 1) + (v - 1);
        }
        return idx;
    }

    std::vector<int> tuple_of(int index) const {
        std::vector<int> t(ell_);
        for (int k = ell_ - 1; k >= 0; --k) {
            t[k] = index % (n_ + 1) + 1;
            index /= n_ + 1;
        }
        return t;
    }

    /// I (x) ... (x) A (x) ... (x) I with A at place j (1-based).
    RatMatrix place_op(const RatMatrix& a, int j) const {
        if (j < 1 || j > ell_) throw std::out_of_range("tensor place out of range");
        RatMatrix out = RatMatrix::identity(1);
        for (int p = 1; p <= ell_; ++p)
            out = out.kron(p == j ? a : RatMatrix::identity(n_ + 1));
        return out;
    }

    /// Sum over all places of (a)_j.
    RatMatrix derivation_op(const RatMatrix& a) const {
        RatMatrix out(dim_, dim_);
        for (int j = 1; j <= ell_; ++j) out = out + place_op(a, j);
        return out;
    }

    /// Left place-permutation matrix: e_t -> e_{sigma.t}.
    RatMatrix perm_op(const Permutation& p) const {
        RatMatrix out(dim_, dim_);
        for (int t = 0; t < dim_; ++t) out.set(index_of(act_on_tuple(p, tuple_of(t))), t, 1);
        return out;
    }

    Weight weight_of_tuple(const std::vector<int>& tuple) const {
        Weight w = weight_of(tuple.at(0), n_);
        for (std::size_t k = 1; k < tuple.size(); ++k) w = w + weight_of(tuple[k], n_);
        return w;
    }

private:
    int n_, ell_, dim_;
};

struct DescentError : std::runtime_error {
    RatVector witness; // ambient vector in the balancing subspace mapped outside
    DescentError(const std::string& what, RatVector w)
        : std::runtime_error(what), witness(std::move(w)) {}
};

/// One summand (right action word on M) (x) (operator on V^{(x) ell}).
struct InducedTerm {
    RatMatrix module_row; // row-convention matrix on M
    RatMatrix tensor_op;  // matrix on V^{(x) ell}
};

struct RelationInstance {
    std::string family; // tor1-hh, tor1-hx, tor2, tor3-xx, tor3-serre
    int i, j;
    long k, m;
    int sign; // +1 / -1 where applicable, else 0
    bool pass;
    std::string describe() const {
        std::ostringstream os;
        os << family << " i=" << i << " j=" << j << " k=" << k << " m=" << m;
        if (sign) os << " sign=" << (sign > 0 ? "+" : "-");
        return os.str();
    }
};

struct ToroidalReport {
    std::vector<RelationInstance> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> f;
        for (const auto& it : items)
            if (!it.pass) f.push_back(it.describe());
        return f;
    }
};

/// F(M) = M (x)_{C[S_ell]} V^{(x) ell}, realized as the image of the
/// symmetrizer idempotent e = (1/ell!) sum_sigma (m -> m.sigma^{-1}) (x)
/// (left sigma). project/section come from the rank factorization of e;
/// project * section == I on the quotient.
class BalancedModule {
public:
    BalancedModule(AffModule source, int n, bool skip_verify = false)
        : src_(std::move(source)), space_(n, src_.letters()) {
        if (!skip_verify) {
            VerifyReport rep = src_.verify();
            if (!rep.all_pass())
                throw std::invalid_argument("source module fails verification: " +
                                            rep.failures().front());
        }
        build();
    }

    const AffModule& source() const { return src_; }
    const TensorSpace& tensor_space() const { return space_; }
    int n() const { return space_.n(); }
    int ell() const { return src_.letters(); }
    int ambient_dim() const { return ambient_; }
    int dim() const { return qdim_; }
    const RatMatrix& project() const { return project_; }
    const RatMatrix& section() const { return section_; }

    /// Ambient coordinate vector of m_b (x) v_tuple for a module basis index.
    RatVector embed_basis(int module_index, const std::vector<int>& tuple) const {
        RatVector v(ambient_, Rational(0));
        v[static_cast<std::size_t>(module_index) * space_.dim() + space_.index_of(tuple)] = 1;
        return v;
    }

    /// Quotient coordinates of m (x) v_tuple, m given in M coordinates.
    RatVector to_quotient(const RatVector& module_vec, const std::vector<int>& tuple) const {
        RatVector amb(ambient_, Rational(0));
        int t = space_.index_of(tuple);
        for (int b = 0; b < src_.dim(); ++b)
            amb[static_cast<std::size_t>(b) * space_.dim() + t] = module_vec[b];
        return project_ * amb;
    }

    /// Induces sum_i (right g_i on M) (x) A_i through the balanced quotient.
    /// The descent precondition is checked, not assumed.
    RatMatrix induce(const std::vector<InducedTerm>& terms) const {
        RatMatrix ambient_op(ambient_, ambient_);
        for (const InducedTerm& t : terms)
            ambient_op = ambient_op + t.module_row.transpose().kron(t.tensor_op);
        return induce_ambient(ambient_op);
    }

    /// Same, with group elements standing in for their right-action matrices.
    RatMatrix induce(const std::vector<std::pair<AffElement, RatMatrix>>& terms) const {
        std::vector<InducedTerm> expanded;
        for (const auto& [g, a] : terms) expanded.push_back({src_.element_matrix(g), a});
        return induce(expanded);
    }

    RatMatrix induce_ambient(const RatMatrix& ambient_op) const {
        // descent: T must map ker(project) = im(I - e) into itself
        RatMatrix residual = project_ * ambient_op * complement_;
        if (!residual.is_zero()) {
            int col = -1;
            for (int c = 0; c < residual.cols() && col < 0; ++c)
                for (int r = 0; r < residual.rows(); ++r)
                    if (residual.at(r, c) != 0) {
                        col = c;
                        break;
                    }
            throw DescentError("operator does not descend to the balanced quotient",
                               complement_.column_vec(col));
        }
        return project_ * ambient_op * section_;
    }

    /// Single-variable loop action; the designated loop supplies the y_j.
    ///   x_0^+/-: sum_j (y_j^{+/-1} on M) (x) (x_theta^-/+)_j,
    ///   h_0: (x) sum_j (-h_theta)_j, and trivial M part for i in [1, n].
    RatMatrix affine_operator(const TorGen& g, int loop = 1) const {
        if (g.node < 0 || g.node > n()) throw std::out_of_range("node out of range");
        std::vector<InducedTerm> terms;
        RatMatrix id_m = RatMatrix::identity(src_.dim());
        if (g.node >= 1 || g.kind == GenKind::H) {
            terms.push_back({id_m, space_.derivation_op(natural_rep({g.kind, g.node, 0}, n()))});
        } else {
            for (int j = 1; j <= ell(); ++j) {
                RatMatrix yj = src_.gen_matrix(GenLabel::y(loop, j));
                if (g.kind == GenKind::XMinus) yj = src_.gen_inverse(GenLabel::y(loop, j));
                terms.push_back(
                    {yj, space_.place_op(natural_rep({g.kind, 0, 0}, n()), j)});
            }
        }
        return induce(terms);
    }

    /// Two-variable action for a two-loop source; loop 1 carries the
    /// x family (variable s), loop 2 the y family (variable t):
    ///   h_i(k):    sum_j (x_j^k on M) (x) (h_i)_j
    ///   x_i^{+/-}(k): sum_j (x_j^k y_j^{+/-delta_{i,0}} on M) (x) (x_i^{+/-})_j
    const RatMatrix& toroidal_operator(const TorGen& g) const {
        if (src_.loops() != 2)
            throw std::invalid_argument("toroidal_operator needs an Aff^2 source module");
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        std::vector<InducedTerm> terms;
        for (int j = 1; j <= ell(); ++j) {
            RatMatrix mod = mat_pow(src_.gen_matrix(GenLabel::y(1, j)), g.k);
            if (g.node == 0 && g.kind == GenKind::XPlus)
                mod = mod * src_.gen_matrix(GenLabel::y(2, j));
            if (g.node == 0 && g.kind == GenKind::XMinus)
                mod = mod * src_.gen_inverse(GenLabel::y(2, j));
            terms.push_back({mod, space_.place_op(natural_rep(g, n()), j)});
        }
        return cache_.emplace(g, induce(terms)).first->second;
    }

    /// Exact check of (tor1)-(tor3) on the quotient for |k|, |m| <= kmax.
    ToroidalReport verify_toroidal_relations(long kmax) const {
        ToroidalReport rep;
        const int nn = n();
        auto H = [&](int i, long k) -> const RatMatrix& {
            return toroidal_operator({GenKind::H, i, k});
        };
        auto X = [&](int sign, int i, long k) -> const RatMatrix& {
            return toroidal_operator({sign > 0 ? GenKind::XPlus : GenKind::XMinus, i, k});
        };
        for (long k = -kmax; k <= kmax; ++k)
            for (long m = -kmax; m <= kmax; ++m) {
                for (int i = 0; i <= nn; ++i)
                    for (int j = i; j <= nn; ++j)
                        rep.items.push_back({"tor1-hh", i, j, k, m, 0,
                                             bracket(H(i, k), H(j, m)).is_zero()});
                for (int i = 0; i <= nn; ++i)
                    for (int j = 0; j <= nn; ++j)
                        for (int sign : {+1, -1}) {
                            RatMatrix lhs = bracket(H(i, k), X(sign, j, m));
                            RatMatrix rhs = X(sign, j, k + m) * rat(sign * cartan_entry(i, j, nn));
                            rep.items.push_back({"tor1-hx", i, j, k, m, sign, lhs == rhs});
                        }
                for (int i = 0; i <= nn; ++i)
                    for (int j = 0; j <= nn; ++j) {
                        RatMatrix lhs = bracket(X(+1, i, k), X(-1, j, m));
                        RatMatrix rhs =
                            i == j ? H(i, k + m) : RatMatrix(lhs.rows(), lhs.cols());
                        rep.items.push_back({"tor2", i, j, k, m, 0, lhs == rhs});
                    }
                for (int i = 0; i <= nn; ++i)
                    for (int sign : {+1, -1})
                        rep.items.push_back({"tor3-xx", i, i, k, m, sign,
                                             bracket(X(sign, i, k), X(sign, i, m)).is_zero()});
            }
        // Serre: (ad x_i^{+/-}(0))^{1-a_ij} x_j^{+/-}(m) = 0, i != j
        for (long m = -kmax; m <= kmax; ++m)
            for (int i = 0; i <= nn; ++i)
                for (int j = 0; j <= nn; ++j) {
                    if (i == j) continue;
                    for (int sign : {+1, -1}) {
                        RatMatrix acc = X(sign, j, m);
                        long reps = 1 - cartan_entry(i, j, nn);
                        for (long r = 0; r < reps; ++r) acc = bracket(X(sign, i, 0), acc);
                        rep.items.push_back({"tor3-serre", i, j, 0, m, sign, acc.is_zero()});
                    }
                }
        return rep;
    }

    /// Exact simultaneous eigenspace of the h_i(0), i in [1, n].
    std::vector<RatVector> weight_space(const Weight& lambda) const {
        std::vector<RatMatrix> rows;
        for (int i = 1; i <= n(); ++i) {
            RatMatrix h = induce({{RatMatrix::identity(src_.dim()),
                                   space_.derivation_op(chevalley_h(i, n()))}});
            rows.push_back(h - RatMatrix::identity(qdim_) * rat(lambda.pairing(i)));
        }
        return mat_kernel(RatMatrix::vcat(rows));
    }

    /// Weight -> multiplicity over the quotient; multiplicities sum to dim.
    std::map<Weight, int> weight_multiset() const {
        std::set<Weight> candidates;
        for (int t = 0; t < space_.dim(); ++t)
            candidates.insert(space_.weight_of_tuple(space_.tuple_of(t)));
        std::map<Weight, int> out;
        for (const Weight& w : candidates) {
            int d = static_cast<int>(weight_space(w).size());
            if (d > 0) out[w] = d;
        }
        return out;
    }

private:
    AffModule src_;
    TensorSpace space_;
    int ambient_ = 0, qdim_ = 0;
    RatMatrix project_, section_, complement_; // complement_ = I - section*project
    mutable std::map<TorGen, RatMatrix> cache_;

    void build() {
        ambient_ = src_.dim() * space_.dim();
        RatMatrix e(ambient_, ambient_);
        std::vector<Permutation> group = all_permutations(ell());
        for (const Permutation& s : group) {
            RatMatrix mod_col = src_.perm_matrix(s.inverse()).transpose();
            e = e + mod_col.kron(space_.perm_op(s));
        }
        e = e * rat(1, static_cast<long>(group.size()));
        RrefResult rr = rref(e);
        qdim_ = rr.rank();
        project_ = RatMatrix(qdim_, ambient_);
        for (int r = 0; r < qdim_; ++r)
            for (const auto& [c, v] : rr.reduced.row(r)) project_.set(r, c, v);
        section_ = RatMatrix(ambient_, qdim_);
        for (int j = 0; j < qdim_; ++j)
            section_.set_column(j, e.column_vec(rr.pivot_cols[j]));
        if (project_ * section_ != RatMatrix::identity(qdim_))
            throw std::logic_error("rank factorization failed; source is not a module");
        complement_ = RatMatrix::identity(ambient_) - section_ * project_;
    }
};

} // namespace torsw

#endif
