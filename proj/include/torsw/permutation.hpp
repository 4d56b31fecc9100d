#ifndef TORSW_PERMUTATION_HPP
#define TORSW_PERMUTATION_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace torsw {

/// Permutation of [1, ell]. images[i-1] = sigma(i).
/// Composition convention: compose(p, q)(i) = p(q(i)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1])
                throw std::invalid_argument("images are not a bijection of [1, ell]");
            seen[v - 1] = true;
        }
    }

    static Permutation identity(int ell) {
        std::vector<int> im(ell);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    /// Adjacent transposition sigma_k = (k, k+1), 1 <= k <= ell-1.
    static Permutation coxeter(int ell, int k) {
        if (k < 1 || k >= ell) throw std::out_of_range("coxeter index out of range");
        Permutation p = identity(ell);
        std::swap(p.images_[k - 1], p.images_[k]);
        return p;
    }

    static Permutation transposition(int ell, int a, int b) {
        if (a < 1 || a > ell || b < 1 || b > ell)
            throw std::out_of_range("transposition point out of range");
        Permutation p = identity(ell);
        std::swap(p.images_[a - 1], p.images_[b - 1]);
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_.at(i - 1); }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const {
        for (int i = 1; i <= size(); ++i)
            if (images_[i - 1] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (int i = 1; i <= size(); ++i) im[images_[i - 1] - 1] = i;
        return Permutation(std::move(im));
    }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return !(*this == o); }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
    std::vector<int> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("compose length mismatch");
    std::vector<int> im(p.size());
    for (int i = 1; i <= p.size(); ++i) im[i - 1] = p(q(i));
    return Permutation(std::move(im));
}

/// All of S_ell in lexicographic image order. Deterministic basis order for
/// the permutation-basis fixture modules.
inline std::vector<Permutation> all_permutations(int ell) {
    std::vector<int> im(ell);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

/// Word in the Coxeter generators; letters[i] = k denotes sigma_k.
using CoxeterWord = std::vector<int>;

inline Permutation evaluate_word(const CoxeterWord& w, int ell) {
    Permutation p = Permutation::identity(ell);
    for (int k : w) p = compose(p, Permutation::coxeter(ell, k));
    return p;
}

/// The word sigma_1 ... sigma_{j-2} sigma_{j-1} sigma_{j-2} ... sigma_1
/// of length 2j-3 evaluating to the transposition (1 j), 2 <= j <= ell.
inline CoxeterWord transposition_word(int j, int ell) {
    if (j < 2 || j > ell) throw std::out_of_range("transposition_word index out of range");
    CoxeterWord w;
    for (int k = 1; k <= j - 1; ++k) w.push_back(k);
    for (int k = j - 2; k >= 1; --k) w.push_back(k);
    return w;
}

/// Some Coxeter word evaluating to p (insertion sort by adjacent swaps).
inline CoxeterWord coxeter_word_of(const Permutation& p) {
    std::vector<int> im = p.images();
    const int ell = static_cast<int>(im.size());
    CoxeterWord w;
    // Sorting im back to the identity by adjacent swaps records p as a product
    // of sigma_k read right-to-left; reversing gives a word for p itself.
    for (int i = 0; i < ell; ++i) {
        for (int j = static_cast<int>(im.size()) - 1; j > i; --j) {
            if (im[j - 1] > im[j]) {
                std::swap(im[j - 1], im[j]);
                w.push_back(j);
            }
        }
    }
    std::reverse(w.begin(), w.end());
    return w;
}

/// Place-permutation action on an index tuple: out[p(k)] = idx[k].
template <typename T>
std::vector<T> act_on_tuple(const Permutation& p, const std::vector<T>& idx) {
    if (static_cast<int>(idx.size()) != p.size())
        throw std::invalid_argument("act_on_tuple length mismatch");
    std::vector<T> out(idx.size());
    for (int k = 1; k <= p.size(); ++k) out[p(k) - 1] = idx[k - 1];
    return out;
}

} // namespace torsw

#endif
