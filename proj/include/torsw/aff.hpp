#ifndef TORSW_AFF_HPP
#define TORSW_AFF_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsw/matrix.hpp"
#include "torsw/permutation.hpp"

namespace torsw {

/// Generator of Aff^m(S_ell): sigma_k (k in [1, ell-1]) or y_{i,r}
/// (loop i in [1, m], index r in [1, ell]).
struct GenLabel {
    enum Kind { Sigma, Y } kind;
    int loop;  // Y only
    int index; // k for Sigma, r for Y

    static GenLabel sigma(int k) { return {Sigma, 0, k}; }
    static GenLabel y(int i, int r) { return {Y, i, r}; }

    std::string str() const {
        if (kind == Sigma) return "s" + std::to_string(index);
        return "y." + std::to_string(loop) + "." + std::to_string(index);
    }
    bool operator==(const GenLabel& o) const {
        return kind == o.kind && loop == o.loop && index == o.index;
    }
    bool operator<(const GenLabel& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (loop != o.loop) return loop < o.loop;
        return index < o.index;
    }
};

struct Letter {
    GenLabel gen;
    int pow; // +1 or -1
};

using GroupWord = std::vector<Letter>;

inline std::string word_str(const GroupWord& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << w[i].gen.str();
        if (w[i].pow != 1) os << "^" << w[i].pow;
    }
    return os.str();
}

struct Relation {
    std::string name;
    GroupWord lhs, rhs;
};

/// The defining relation list of Aff^m(S_ell), generated from (m, ell).
/// ell = 1 keeps only the y-commutations and cross-loop relations; ell = 2
/// drops the braid relation. Cross relations appear for every ordered pair
/// of distinct loops.
class AffPresentation {
public:
    AffPresentation(int m, int ell) : m_(m), ell_(ell) {
        if (m < 1 || ell < 1) throw std::invalid_argument("need m >= 1, ell >= 1");
        build();
    }

    int loops() const { return m_; }
    int letters() const { return ell_; }
    const std::vector<Relation>& relations() const& { return rels_; }
    std::vector<Relation> relations() && { return std::move(rels_); }

    std::vector<GenLabel> generators() const {
        std::vector<GenLabel> g;
        for (int k = 1; k < ell_; ++k) g.push_back(GenLabel::sigma(k));
        for (int i = 1; i <= m_; ++i)
            for (int r = 1; r <= ell_; ++r) g.push_back(GenLabel::y(i, r));
        return g;
    }

private:
    int m_, ell_;
    std::vector<Relation> rels_;

    static Letter L(GenLabel g, int p = 1) { return {g, p}; }

    void add(std::string name, GroupWord lhs, GroupWord rhs) {
        rels_.push_back({std::move(name), std::move(lhs), std::move(rhs)});
    }

    void build() {
        // sigma_k^2 = 1
        for (int k = 1; k < ell_; ++k)
            add("s" + std::to_string(k) + "^2 = 1",
                {L(GenLabel::sigma(k)), L(GenLabel::sigma(k))}, {});
        // braid
        for (int k = 1; k <= ell_ - 2; ++k)
            add("braid s" + std::to_string(k) + " s" + std::to_string(k + 1),
                {L(GenLabel::sigma(k)), L(GenLabel::sigma(k + 1)), L(GenLabel::sigma(k))},
                {L(GenLabel::sigma(k + 1)), L(GenLabel::sigma(k)), L(GenLabel::sigma(k + 1))});
        // distant sigma commute
        for (int k = 1; k < ell_; ++k)
            for (int j = k + 2; j < ell_; ++j)
                add("s" + std::to_string(k) + " s" + std::to_string(j) + " commute",
                    {L(GenLabel::sigma(k)), L(GenLabel::sigma(j))},
                    {L(GenLabel::sigma(j)), L(GenLabel::sigma(k))});
        for (int i = 1; i <= m_; ++i) {
            // same-loop y commute
            for (int s = 1; s <= ell_; ++s)
                for (int p = s + 1; p <= ell_; ++p)
                    add(GenLabel::y(i, s).str() + " " + GenLabel::y(i, p).str() + " commute",
                        {L(GenLabel::y(i, s)), L(GenLabel::y(i, p))},
                        {L(GenLabel::y(i, p)), L(GenLabel::y(i, s))});
            // y commutes with distant sigma
            for (int s = 1; s <= ell_; ++s)
                for (int k = 1; k < ell_; ++k) {
                    if (s == k || s == k + 1) continue;
                    add(GenLabel::y(i, s).str() + " s" + std::to_string(k) + " commute",
                        {L(GenLabel::y(i, s)), L(GenLabel::sigma(k))},
                        {L(GenLabel::sigma(k)), L(GenLabel::y(i, s))});
                }
            // sigma_k y_{i,k} sigma_k = y_{i,k+1}
            for (int k = 1; k < ell_; ++k)
                add("s" + std::to_string(k) + " " + GenLabel::y(i, k).str() + " s" +
                        std::to_string(k) + " = " + GenLabel::y(i, k + 1).str(),
                    {L(GenLabel::sigma(k)), L(GenLabel::y(i, k)), L(GenLabel::sigma(k))},
                    {L(GenLabel::y(i, k + 1))});
        }
        // cross-loop relations, ordered pairs i != i'
        for (int i = 1; i <= m_; ++i)
            for (int ip = 1; ip <= m_; ++ip) {
                if (i == ip) continue;
                GroupWord lhs, rhs;
                for (int r = 1; r <= ell_; ++r) lhs.push_back(L(GenLabel::y(i, r)));
                lhs.push_back(L(GenLabel::y(ip, 1)));
                rhs.push_back(L(GenLabel::y(ip, 1)));
                for (int r = 1; r <= ell_; ++r) rhs.push_back(L(GenLabel::y(i, r)));
                add("y" + std::to_string(i) + ".1..ell " + GenLabel::y(ip, 1).str() +
                        " cross product",
                    lhs, rhs);
                if (ell_ >= 2)
                    add(GenLabel::y(ip, 1).str() + " " + GenLabel::y(i, 2).str() + " cross commute",
                        {L(GenLabel::y(ip, 1)), L(GenLabel::y(i, 2))},
                        {L(GenLabel::y(i, 2)), L(GenLabel::y(ip, 1))});
            }
    }
};

/// Normal form element ((r_1, ..., r_m), sigma) of (Z^ell)^m |x S_ell.
struct AffElement {
    std::vector<std::vector<long>> lattice; // m vectors of length ell
    Permutation perm;

    static AffElement identity(int m, int ell) {
        return {std::vector<std::vector<long>>(m, std::vector<long>(ell, 0)),
                Permutation::identity(ell)};
    }

    bool operator==(const AffElement& o) const {
        return lattice == o.lattice && perm == o.perm;
    }
};

/// ((r, sigma)(q, tau)) = (r + sigma(q), sigma tau); sigma moves lattice
/// coordinates by place: (sigma q)[sigma(j)] = q[j].
inline AffElement multiply(const AffElement& g, const AffElement& h) {
    if (g.lattice.size() != h.lattice.size() || g.perm.size() != h.perm.size())
        throw std::invalid_argument("aff element shape mismatch");
    AffElement out = g;
    for (std::size_t i = 0; i < g.lattice.size(); ++i) {
        std::vector<long> moved = act_on_tuple(g.perm, h.lattice[i]);
        for (std::size_t r = 0; r < moved.size(); ++r) out.lattice[i][r] += moved[r];
    }
    out.perm = compose(g.perm, h.perm);
    return out;
}

/// Evaluation under the identification sigma_c -> (0, sigma_c),
/// y_{i,r} -> (e_r in slot i, 1).
inline AffElement word_to_element(const GroupWord& w, int m, int ell) {
    AffElement e = AffElement::identity(m, ell);
    for (const Letter& l : w) {
        AffElement g = AffElement::identity(m, ell);
        if (l.gen.kind == GenLabel::Sigma) {
            if (l.gen.index < 1 || l.gen.index >= ell)
                throw std::out_of_range("sigma index out of range");
            g.perm = Permutation::coxeter(ell, l.gen.index);
        } else {
            if (l.gen.loop < 1 || l.gen.loop > m || l.gen.index < 1 || l.gen.index > ell)
                throw std::out_of_range("y index out of range");
            g.lattice[l.gen.loop - 1][l.gen.index - 1] = l.pow;
        }
        e = multiply(e, g);
    }
    return e;
}

struct RelationStatus {
    std::string relation;
    bool pass;
};

struct VerifyReport {
    std::vector<RelationStatus> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> f;
        for (const auto& it : items)
            if (!it.pass) f.push_back(it.relation);
        return f;
    }
};

/// Right Aff^m(S_ell)-module given by generator matrices, row-vector
/// convention: word evaluation multiplies matrices left-to-right.
class AffModule {
public:
    AffModule(int m, int ell, int dim, std::map<std::string, RatMatrix> mats)
        : m_(m), ell_(ell), dim_(dim), mats_(std::move(mats)) {
        for (const GenLabel& g : AffPresentation(m, ell).generators())
            if (!mats_.count(g.str()))
                throw std::invalid_argument("missing generator matrix " + g.str());
        for (const auto& [label, mat] : mats_)
            if (mat.rows() != dim || mat.cols() != dim)
                throw std::invalid_argument("generator matrix " + label + " has wrong shape");
    }

    int loops() const { return m_; }
    int letters() const { return ell_; }
    int dim() const { return dim_; }

    const RatMatrix& gen_matrix(const GenLabel& g) const {
        auto it = mats_.find(g.str());
        if (it == mats_.end()) throw std::invalid_argument("unknown generator " + g.str());
        return it->second;
    }
    const std::map<std::string, RatMatrix>& matrices() const { return mats_; }

    const RatMatrix& gen_inverse(const GenLabel& g) const {
        auto it = inv_cache_.find(g.str());
        if (it == inv_cache_.end())
            it = inv_cache_.emplace(g.str(), inverse(gen_matrix(g))).first;
        return it->second;
    }

    RatMatrix eval_word(const GroupWord& w) const {
        RatMatrix r = RatMatrix::identity(dim_);
        for (const Letter& l : w) {
            if (l.pow == 1)
                r = r * gen_matrix(l.gen);
            else if (l.pow == -1)
                r = r * gen_inverse(l.gen);
            else
                r = r * mat_pow(gen_matrix(l.gen), l.pow);
        }
        return r;
    }

    /// Right-action matrix of an arbitrary permutation.
    RatMatrix perm_matrix(const Permutation& p) const {
        GroupWord w;
        for (int k : coxeter_word_of(p)) w.push_back({GenLabel::sigma(k), 1});
        return eval_word(w);
    }

    /// Right-action matrix of a normal-form element: lattice part first,
    /// then the permutation.
    RatMatrix element_matrix(const AffElement& e) const {
        if (static_cast<int>(e.lattice.size()) != m_ || e.perm.size() != ell_)
            throw std::invalid_argument("element shape mismatch");
        RatMatrix r = RatMatrix::identity(dim_);
        for (int i = 1; i <= m_; ++i)
            for (int s = 1; s <= ell_; ++s) {
                long p = e.lattice[i - 1][s - 1];
                if (p != 0) r = r * mat_pow(gen_matrix(GenLabel::y(i, s)), p);
            }
        return r * perm_matrix(e.perm);
    }

    /// Checks every defining relation as exact matrix equality, plus
    /// invertibility of the y matrices.
    VerifyReport verify() const {
        VerifyReport rep;
        for (int i = 1; i <= m_; ++i)
            for (int r = 1; r <= ell_; ++r) {
                GenLabel g = GenLabel::y(i, r);
                bool ok = true;
                try {
                    (void)gen_inverse(g);
                } catch (const std::domain_error&) {
                    ok = false;
                }
                rep.items.push_back({g.str() + " invertible", ok});
            }
        AffPresentation pres(m_, ell_);
        for (const Relation& rel : pres.relations())
            rep.items.push_back({rel.name, eval_word(rel.lhs) == eval_word(rel.rhs)});
        return rep;
    }

    bool same_matrices(const AffModule& o) const {
        return m_ == o.m_ && ell_ == o.ell_ && dim_ == o.dim_ && mats_ == o.mats_;
    }

private:
    int m_, ell_, dim_;
    std::map<std::string, RatMatrix> mats_;
    mutable std::map<std::string, RatMatrix> inv_cache_;
};

/// Fixture family: basis {e_tau : tau in S_ell}, e_tau.sigma = e_{tau sigma},
/// e_tau.y_{i,r} = a^{(i)}_{tau(r)} e_tau. Parameters must be nonzero.
inline AffModule evaluation_module(const std::vector<std::vector<Rational>>& params, int ell) {
    const int m = static_cast<int>(params.size());
    if (m < 1) throw std::invalid_argument("need at least one parameter tuple");
    for (const auto& a : params) {
        if (static_cast<int>(a.size()) != ell)
            throw std::invalid_argument("parameter tuple length != ell");
        for (const auto& v : a)
            if (v == 0) throw std::invalid_argument("evaluation parameter must be nonzero");
    }
    std::vector<Permutation> basis = all_permutations(ell);
    std::map<Permutation, int> index;
    for (int b = 0; b < static_cast<int>(basis.size()); ++b) index[basis[b]] = b;
    const int dim = static_cast<int>(basis.size());

    std::map<std::string, RatMatrix> mats;
    for (int k = 1; k < ell; ++k) {
        RatMatrix s(dim, dim);
        Permutation sk = Permutation::coxeter(ell, k);
        for (int b = 0; b < dim; ++b) s.set(b, index.at(compose(basis[b], sk)), 1);
        mats[GenLabel::sigma(k).str()] = s;
    }
    for (int i = 1; i <= m; ++i)
        for (int r = 1; r <= ell; ++r) {
            RatMatrix y(dim, dim);
            for (int b = 0; b < dim; ++b) y.set(b, b, params[i - 1][basis[b](r) - 1]);
            mats[GenLabel::y(i, r).str()] = y;
        }
    return AffModule(m, ell, dim, std::move(mats));
}

/// m=1 module keeping the sigma matrices and the i-th y family.
inline AffModule restrict_to_loop(const AffModule& mod, int i) {
    if (i < 1 || i > mod.loops()) throw std::out_of_range("loop index out of range");
    std::map<std::string, RatMatrix> mats;
    for (int k = 1; k < mod.letters(); ++k)
        mats[GenLabel::sigma(k).str()] = mod.gen_matrix(GenLabel::sigma(k));
    for (int r = 1; r <= mod.letters(); ++r)
        mats[GenLabel::y(1, r).str()] = mod.gen_matrix(GenLabel::y(i, r));
    return AffModule(1, mod.letters(), mod.dim(), std::move(mats));
}

struct GlueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Glues m single-loop modules sharing sigma matrices into an Aff^m module.
/// Rejects mismatched sigma matrices and non-commuting cross-loop y families
/// (the operator form of the group-gluing commutation condition).
inline AffModule glue_modules(const std::vector<AffModule>& parts) {
    const int m = static_cast<int>(parts.size());
    if (m < 1) throw std::invalid_argument("nothing to glue");
    const int ell = parts[0].letters();
    const int dim = parts[0].dim();
    for (const AffModule& p : parts) {
        if (p.loops() != 1) throw GlueError("glue parts must be single-loop modules");
        if (p.letters() != ell || p.dim() != dim) throw GlueError("glue parts shape mismatch");
    }
    for (int k = 1; k < ell; ++k)
        for (int i = 1; i < m; ++i)
            if (parts[i].gen_matrix(GenLabel::sigma(k)) != parts[0].gen_matrix(GenLabel::sigma(k)))
                throw GlueError("sigma matrices differ between parts 1 and " +
                                std::to_string(i + 1));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int r = 1; r <= ell; ++r)
                for (int s = 1; s <= ell; ++s) {
                    const RatMatrix& a = parts[i].gen_matrix(GenLabel::y(1, r));
                    const RatMatrix& b = parts[j].gen_matrix(GenLabel::y(1, s));
                    if (a * b != b * a)
                        throw GlueError("cross-loop families do not commute: y." +
                                        std::to_string(i + 1) + "." + std::to_string(r) +
                                        " vs y." + std::to_string(j + 1) + "." +
                                        std::to_string(s));
                }
    std::map<std::string, RatMatrix> mats;
    for (int k = 1; k < ell; ++k)
        mats[GenLabel::sigma(k).str()] = parts[0].gen_matrix(GenLabel::sigma(k));
    for (int i = 1; i <= m; ++i)
        for (int r = 1; r <= ell; ++r)
            mats[GenLabel::y(i, r).str()] = parts[i - 1].gen_matrix(GenLabel::y(1, r));
    return AffModule(m, ell, dim, std::move(mats));
}

} // namespace torsw

#endif
