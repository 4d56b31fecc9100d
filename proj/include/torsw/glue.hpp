#ifndef TORSW_GLUE_HPP
#define TORSW_GLUE_HPP

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "torsw/balanced.hpp"
#include "torsw/inverse.hpp"
#include "torsw/lie.hpp"
#include "torsw/matrix.hpp"

namespace torsw {

/// Per-loop operator assignments x (x) t_i^k -> End of the quotient, read off
/// a shared multiloop source module: loop i acts through its own y family,
///   rho_i(x (x) t_i^k) = sum_j (y_{i,j}^k on M) (x) (x)_j.
class LoopSystem {
public:
    explicit LoopSystem(std::shared_ptr<const BalancedModule> space)
        : space_(std::move(space)), basis_(sl_basis(space_->n())) {}

    int loops() const { return space_->source().loops(); }
    const BalancedModule& space() const { return *space_; }
    const std::vector<RatMatrix>& basis() const { return basis_; }

    const RatMatrix& rho_basis(int i, int b, long k) const {
        auto key = std::make_tuple(i, b, k);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, compute(i, basis_[b], k)).first->second;
    }

    RatMatrix rho(int i, const RatMatrix& x, long k) const {
        std::vector<Rational> c = sl_coords(x);
        RatMatrix out(space_->dim(), space_->dim());
        for (std::size_t b = 0; b < c.size(); ++b)
            if (c[b] != 0) out = out + rho_basis(i, static_cast<int>(b), k) * c[b];
        return out;
    }

private:
    std::shared_ptr<const BalancedModule> space_;
    std::vector<RatMatrix> basis_;
    mutable std::map<std::tuple<int, int, long>, RatMatrix> cache_;

    RatMatrix compute(int i, const RatMatrix& x, long k) const {
        if (i < 1 || i > loops()) throw std::out_of_range("loop index out of range");
        std::vector<InducedTerm> terms;
        for (int j = 1; j <= space_->ell(); ++j)
            terms.push_back({mat_pow(space_->source().gen_matrix(GenLabel::y(i, j)), k),
                             space_->tensor_space().place_op(x, j)});
        return space_->induce(terms);
    }
};

struct BatchReport {
    long total = 0;
    std::vector<std::string> failures;
    bool all_pass() const { return failures.empty(); }
    void check(bool pass, const std::function<std::string()>& describe) {
        ++total;
        if (!pass) failures.push_back(describe());
    }
};

/// Right-nested operator bracket
/// [rho_{i_1}(x_1 (x) t^{p_1}), [ ..., rho_{i_c}(x_c (x) t^{p_c})]].
inline RatMatrix nested_bracket_op(const LoopSystem& sys, const std::vector<int>& loops,
                                   const std::vector<RatMatrix>& xs,
                                   const std::vector<long>& ps) {
    if (loops.empty() || loops.size() != xs.size() || loops.size() != ps.size())
        throw std::invalid_argument("nested bracket shape mismatch");
    RatMatrix op = sys.rho(loops.back(), xs.back(), ps.back());
    for (int a = static_cast<int>(loops.size()) - 2; a >= 0; --a)
        op = bracket(sys.rho(loops[a], xs[a], ps[a]), op);
    return op;
}

/// The same nested bracket computed without operator brackets:
/// sum_j (y_{i_1,j}^{p_1} ... y_{i_c,j}^{p_c} on M) (x) ([x_1,[...,x_c]])_j.
inline RatMatrix nested_bracket_direct(const LoopSystem& sys, const std::vector<int>& loops,
                                       const std::vector<RatMatrix>& xs,
                                       const std::vector<long>& ps) {
    const BalancedModule& B = sys.space();
    RatMatrix lie = xs.back();
    for (int a = static_cast<int>(xs.size()) - 2; a >= 0; --a) lie = bracket(xs[a], lie);
    std::vector<InducedTerm> terms;
    for (int j = 1; j <= B.ell(); ++j) {
        RatMatrix mod = RatMatrix::identity(B.source().dim());
        for (std::size_t a = 0; a < loops.size(); ++a)
            mod = mod * mat_pow(B.source().gen_matrix(GenLabel::y(loops[a], j)), ps[a]);
        terms.push_back({mod, B.tensor_space().place_op(lie, j)});
    }
    return B.induce(terms);
}

inline std::string seq_str(const std::vector<int>& loops, const std::vector<long>& ps) {
    std::ostringstream os;
    for (std::size_t a = 0; a < loops.size(); ++a)
        os << (a ? " " : "") << "t" << loops[a] << "^" << ps[a];
    return os.str();
}

/// The gluing preconditions.
///   (i)  loop-independence of the exponent-zero operators, exact on the basis
///   (ii) the nested-bracket certificate (every nested bracket equals its
///        direct coefficient form, so vanishing sums map to vanishing sums)
///        plus seeded antisymmetry and Jacobi syzygy samples
///   (iii) invariance under permuting the loop sequence, sampled
inline BatchReport check_conditions(const LoopSystem& sys, long kmax = 1,
                                    int samples = 25, unsigned long seed = 0) {
    BatchReport rep;
    const int m = sys.loops();
    const auto& basis = sys.basis();
    const int nb = static_cast<int>(basis.size());

    for (int b = 0; b < nb; ++b)
        for (int i = 2; i <= m; ++i)
            rep.check(sys.rho_basis(i, b, 0) == sys.rho_basis(1, b, 0), [&] {
                return "(i) exponent-zero operators differ between loops 1 and " +
                       std::to_string(i) + " on basis element " + std::to_string(b);
            });

    std::mt19937_64 rng(seed);
    auto rnd_loop = [&] { return static_cast<int>(rng() % m) + 1; };
    auto rnd_exp = [&] { return static_cast<long>(rng() % (2 * kmax + 1)) - kmax; };
    auto rnd_basis = [&] { return static_cast<int>(rng() % nb); };

    for (int s = 0; s < samples; ++s) {
        int c = static_cast<int>(rng() % 3) + 1;
        std::vector<int> loops;
        std::vector<long> ps;
        std::vector<RatMatrix> xs;
        for (int a = 0; a < c; ++a) {
            loops.push_back(rnd_loop());
            ps.push_back(rnd_exp());
            xs.push_back(basis[rnd_basis()]);
        }
        bool ok;
        std::string note;
        try {
            ok = nested_bracket_op(sys, loops, xs, ps) ==
                 nested_bracket_direct(sys, loops, xs, ps);
        } catch (const DescentError& e) {
            ok = false;
            note = std::string("; ") + e.what();
        }
        rep.check(ok, [&] {
            return "(ii) nested bracket certificate fails at " + seq_str(loops, ps) + note;
        });

        if (c == 2) {
            // antisymmetry syzygy [x,y] + [y,x] = 0
            RatMatrix lhs = nested_bracket_op(sys, loops, {xs[0], xs[1]}, ps) +
                            nested_bracket_op(sys, loops, {xs[1], xs[0]}, ps);
            rep.check(lhs.is_zero(),
                      [&] { return "(ii) antisymmetry syzygy fails at " + seq_str(loops, ps); });
        }
        if (c == 3) {
            // Jacobi syzygy [x,[y,z]] - [y,[x,z]] + [z,[x,y]] = 0
            RatMatrix lhs = nested_bracket_op(sys, loops, {xs[0], xs[1], xs[2]}, ps) -
                            nested_bracket_op(sys, loops, {xs[1], xs[0], xs[2]}, ps) +
                            nested_bracket_op(sys, loops, {xs[2], xs[0], xs[1]}, ps);
            rep.check(lhs.is_zero(),
                      [&] { return "(ii) Jacobi syzygy fails at " + seq_str(loops, ps); });
        }

        // (iii): reverse the loop sequence (the paired transposition sample),
        // keeping each exponent attached to its loop
        if (c >= 2 && m >= 2) {
            std::vector<int> rloops(loops.rbegin(), loops.rend());
            std::vector<long> rps(ps.rbegin(), ps.rend());
            bool ok3;
            std::string note3;
            try {
                ok3 = nested_bracket_op(sys, loops, xs, ps) ==
                      nested_bracket_op(sys, rloops, xs, rps);
            } catch (const DescentError& e) {
                ok3 = false;
                note3 = std::string("; ") + e.what();
            }
            rep.check(ok3, [&] {
                return "(iii) permuting loops changes the bracket: " + seq_str(loops, ps) +
                       " vs " + seq_str(rloops, rps) + note3;
            });
        }
    }
    return rep;
}

using Decomposition =
    std::function<std::vector<std::pair<RatMatrix, RatMatrix>>(const RatMatrix&)>;

/// The glued homomorphism, built by the recursion
///   rho(x (x) t_1^{p_1}...t_m^{p_m}) =
///     sum_j [rho(x_j' (x) t_1^{p_1}...t_{m-1}^{p_{m-1}}), rho_m(x_j'' (x) t_m^{p_m})]
/// over a fixed bracket decomposition x = sum_j [x_j', x_j''].
class GluedAction {
public:
    explicit GluedAction(std::shared_ptr<const LoopSystem> sys,
                         Decomposition decompose = nullptr)
        : sys_(std::move(sys)),
          decompose_(decompose ? std::move(decompose)
                               : [](const RatMatrix& x) { return chevalley_decompose(x); }) {}

    const LoopSystem& system() const { return *sys_; }
    int loops() const { return sys_->loops(); }

    const RatMatrix& basis_op(int b, const std::vector<long>& exps) const {
        if (static_cast<int>(exps.size()) != loops())
            throw std::invalid_argument("exponent vector has wrong length");
        auto key = std::make_pair(b, exps);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(key, level_op(sys_->basis()[b], exps, loops())).first->second;
    }

    RatMatrix operator_of(const RatMatrix& x, const std::vector<long>& exps) const {
        std::vector<Rational> c = sl_coords(x);
        RatMatrix out(sys_->space().dim(), sys_->space().dim());
        for (std::size_t b = 0; b < c.size(); ++b)
            if (c[b] != 0) out = out + basis_op(static_cast<int>(b), exps) * c[b];
        return out;
    }

private:
    std::shared_ptr<const LoopSystem> sys_;
    Decomposition decompose_;
    mutable std::map<std::pair<int, std::vector<long>>, RatMatrix> memo_;

    RatMatrix level_op(const RatMatrix& x, const std::vector<long>& exps, int level) const {
        if (level == 1) return sys_->rho(1, x, exps[0]);
        std::vector<long> prefix(exps.begin(), exps.begin() + level - 1);
        RatMatrix out(sys_->space().dim(), sys_->space().dim());
        for (const auto& [a, b] : decompose_(x)) {
            RatMatrix left = expand_level(a, prefix, level - 1);
            out = out + bracket(left, sys_->rho(level, b, exps[level - 1]));
        }
        return out;
    }

    /// Linear expansion through the memo when the prefix is full length,
    /// direct recursion otherwise.
    RatMatrix expand_level(const RatMatrix& x, const std::vector<long>& prefix,
                           int level) const {
        if (level == static_cast<int>(prefix.size()) && level == loops()) {
            return operator_of(x, prefix);
        }
        return level_op(x, prefix, level);
    }
};

/// [rho(x (x) t^s), rho(y (x) t^r)] == rho([x,y] (x) t^{s+r}) over the full
/// basis-pair battery with every exponent vector in {-e..e}^m.
inline BatchReport verify_lie_hom(const GluedAction& rho, long e = 1) {
    BatchReport rep;
    const auto& basis = rho.system().basis();
    const int nb = static_cast<int>(basis.size());
    const int m = rho.loops();
    std::vector<std::vector<long>> exps;
    std::vector<long> cur(m, -e);
    for (;;) {
        exps.push_back(cur);
        int i = 0;
        while (i < m && cur[i] == e) cur[i++] = -e;
        if (i == m) break;
        ++cur[i];
    }
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
            RatMatrix xy = bracket(basis[a], basis[b]);
            for (const auto& s : exps)
                for (const auto& r : exps) {
                    std::vector<long> sr(m);
                    for (int i = 0; i < m; ++i) sr[i] = s[i] + r[i];
                    bool ok = bracket(rho.basis_op(a, s), rho.basis_op(b, r)) ==
                              rho.operator_of(xy, sr);
                    rep.check(ok, [&] {
                        std::ostringstream os;
                        os << "homomorphism fails on basis pair (" << a << ", " << b << ") exps";
                        for (long v : s) os << " " << v;
                        os << " |";
                        for (long v : r) os << " " << v;
                        return os.str();
                    });
                }
        }
    return rep;
}

/// For a two-loop system: the glued operator of each labeled generator equals
/// the direct action. Node 0 generators carry the monomial s^k t^{+/-1}.
inline BatchReport compare_with_direct(const GluedAction& rho, const BalancedModule& B,
                                       long kmax) {
    if (rho.loops() != 2)
        throw std::invalid_argument("direct comparison needs a two-loop system");
    BatchReport rep;
    for (long k = -kmax; k <= kmax; ++k)
        for (int i = 0; i <= B.n(); ++i)
            for (GenKind kd : {GenKind::H, GenKind::XPlus, GenKind::XMinus}) {
                TorGen g{kd, i, k};
                long t = 0;
                if (i == 0 && kd == GenKind::XPlus) t = 1;
                if (i == 0 && kd == GenKind::XMinus) t = -1;
                bool ok = rho.operator_of(natural_rep(g, B.n()), {k, t}) ==
                          B.toroidal_operator(g);
                rep.check(ok, [&] { return "glued and direct operators differ at " + g.label(); });
            }
    return rep;
}

/// The module-lifting step for presented systems: glue the single-loop module
/// structures and return the action of the full Laurent ring in m variables.
inline GluedAction lift_module_action(const std::vector<AffModule>& parts, int n,
                                      long kmax = 1, int samples = 25,
                                      unsigned long seed = 0) {
    AffModule glued = glue_modules(parts);
    auto space = std::make_shared<BalancedModule>(std::move(glued), n);
    auto sys = std::make_shared<LoopSystem>(std::move(space));
    BatchReport rep = check_conditions(*sys, kmax, samples, seed);
    if (!rep.all_pass())
        throw GlueError("gluing preconditions fail: " + rep.failures.front());
    return GluedAction(std::move(sys));
}

} // namespace torsw

#endif
