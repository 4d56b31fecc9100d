#ifndef TORSW_MATRIX_HPP
#define TORSW_MATRIX_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torsw/rational.hpp"

namespace torsw {

using RatVector = std::vector<Rational>;

inline bool is_zero(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline RatVector vec_sub(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVector unit_vector(int dim, int index) {
    RatVector v(dim, Rational(0));
    v.at(index) = 1;
    return v;
}

class RatMatrix;
struct RrefResult;
RrefResult rref(const RatMatrix& a);

/// Sparse matrix of exact rationals. No stored zero entries.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i][i] = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational at(int r, int c) const {
        check_index(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? Rational(0) : it->second;
    }

    void set(int r, int c, const Rational& v) {
        check_index(r, c);
        if (v == 0)
            data_[r].erase(c);
        else
            data_[r][c] = v;
    }

    void add_to(int r, int c, const Rational& v) {
        check_index(r, c);
        auto it = data_[r].find(c);
        if (it == data_[r].end()) {
            if (v != 0) data_[r][c] = v;
        } else {
            it->second += v;
            if (it->second == 0) data_[r].erase(it);
        }
    }

    const std::map<int, Rational>& row(int r) const { return data_[r]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    RatMatrix operator+(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix r = *this;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : o.data_[i]) r.add_to(i, c, v);
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix r = *this;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : o.data_[i]) r.add_to(i, c, -v);
        return r;
    }

    RatMatrix operator-() const {
        RatMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i]) r.data_[i][c] = -v;
        return r;
    }

    RatMatrix operator*(const Rational& s) const {
        RatMatrix r(rows_, cols_);
        if (s == 0) return r;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i]) r.data_[i][c] = v * s;
        return r;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [k, a] : data_[i])
                for (const auto& [j, b] : o.data_[k]) r.add_to(i, j, a * b);
        return r;
    }

    RatVector operator*(const RatVector& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw std::invalid_argument("matrix-vector shape mismatch");
        RatVector out(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, a] : data_[i]) out[i] += a * v[c];
        return out;
    }

    RatMatrix transpose() const {
        RatMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i]) r.data_[c][i] = v;
        return r;
    }

    /// Kronecker product, row-major block convention.
    RatMatrix kron(const RatMatrix& o) const {
        RatMatrix r(rows_ * o.rows_, cols_ * o.cols_);
        for (int i1 = 0; i1 < rows_; ++i1)
            for (const auto& [j1, a] : data_[i1])
                for (int i2 = 0; i2 < o.rows_; ++i2)
                    for (const auto& [j2, b] : o.data_[i2])
                        r.data_[i1 * o.rows_ + i2][j1 * o.cols_ + j2] = a * b;
        return r;
    }

    RatMatrix column(int c) const {
        RatMatrix r(rows_, 1);
        for (int i = 0; i < rows_; ++i) {
            auto it = data_[i].find(c);
            if (it != data_[i].end()) r.data_[i][0] = it->second;
        }
        return r;
    }

    RatVector column_vec(int c) const {
        RatVector v(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
        return v;
    }

    void set_column(int c, const RatVector& v) {
        for (int i = 0; i < rows_; ++i) set(i, c, v[i]);
    }

    static RatMatrix from_columns(const std::vector<RatVector>& cols, int rows) {
        RatMatrix r(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
            if (static_cast<int>(cols[j].size()) != rows)
                throw std::invalid_argument("column length mismatch");
            for (int i = 0; i < rows; ++i) r.set(i, j, cols[j][i]);
        }
        return r;
    }

    /// Vertical stack.
    static RatMatrix vcat(const std::vector<RatMatrix>& parts) {
        if (parts.empty()) return RatMatrix();
        int c = parts[0].cols(), rtot = 0;
        for (const auto& p : parts) {
            if (p.cols() != c) throw std::invalid_argument("vcat column mismatch");
            rtot += p.rows();
        }
        RatMatrix out(rtot, c);
        int off = 0;
        for (const auto& p : parts) {
            for (int i = 0; i < p.rows(); ++i)
                for (const auto& [j, v] : p.data_[i]) out.data_[off + i][j] = v;
            off += p.rows();
        }
        return out;
    }

    /// Flatten column-by-column into a single column (column-major vec).
    RatVector vec() const {
        RatVector v(static_cast<std::size_t>(rows_) * cols_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, a] : data_[i]) v[static_cast<std::size_t>(j) * rows_ + i] = a;
        return v;
    }

    static RatMatrix unvec(const RatVector& v, int rows, int cols) {
        if (static_cast<int>(v.size()) != rows * cols)
            throw std::invalid_argument("unvec size mismatch");
        RatMatrix m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) m.set(i, j, v[static_cast<std::size_t>(j) * rows + i]);
        return m;
    }

private:
    int rows_, cols_;
    std::vector<std::map<int, Rational>> data_;

    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index out of bounds");
    }
    void require_same_shape(const RatMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    friend struct RrefResult;
    friend RrefResult rref(const RatMatrix&);
};

/// Reduced row echelon form plus pivot bookkeeping.
struct RrefResult {
    RatMatrix reduced;
    std::vector<int> pivot_cols; // pivot column of row r, in row order
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

/// Exact Gauss-Jordan elimination. Pivot choice within a column favors the
/// entry with the smallest numerator*denominator bit size; ties break by row.
inline RrefResult rref(const RatMatrix& a) {
    RrefResult res;
    res.reduced = a;
    auto& d = res.reduced.data_;
    const int rows = a.rows(), cols = a.cols();
    int lead = 0;
    for (int col = 0; col < cols && lead < rows; ++col) {
        int pivot = -1;
        std::size_t best = 0;
        for (int r = lead; r < rows; ++r) {
            auto it = d[r].find(col);
            if (it == d[r].end()) continue;
            std::size_t cx = rat_complexity(it->second);
            if (pivot < 0 || cx < best) {
                pivot = r;
                best = cx;
            }
        }
        if (pivot < 0) continue;
        std::swap(d[lead], d[pivot]);
        Rational inv = 1 / d[lead].at(col);
        if (inv != 1)
            for (auto& [c, v] : d[lead]) v *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == lead) continue;
            auto it = d[r].find(col);
            if (it == d[r].end()) continue;
            Rational f = it->second;
            for (const auto& [c, v] : d[lead]) {
                auto jt = d[r].find(c);
                if (jt == d[r].end()) {
                    d[r][c] = -f * v;
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) d[r].erase(jt);
                }
            }
        }
        res.pivot_cols.push_back(col);
        ++lead;
    }
    return res;
}

inline int rank(const RatMatrix& a) { return rref(a).rank(); }

/// Exact basis of the right null space {x : a x = 0}; empty iff full column rank.
inline std::vector<RatVector> mat_kernel(const RatMatrix& a) {
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector x(a.cols(), Rational(0));
        x[f] = 1;
        for (int r = 0; r < rr.rank(); ++r) x[rr.pivot_cols[r]] = -rr.reduced.at(r, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some exact solution of a x = b, or nullopt if unsolvable.
inline std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve shape mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (const auto& [c, v] : a.row(i)) aug.set(i, c, v);
        aug.set(i, a.cols(), b[i]);
    }
    RrefResult rr = rref(aug);
    for (int c : rr.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    RatVector x(a.cols(), Rational(0));
    for (int r = 0; r < rr.rank(); ++r) x[rr.pivot_cols[r]] = rr.reduced.at(r, a.cols());
    return x;
}

inline RatMatrix inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const int n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [c, v] : a.row(i)) aug.set(i, c, v);
        aug.set(i, n + i, 1);
    }
    RrefResult rr = rref(aug);
    if (rr.rank() < n || rr.pivot_cols[n - 1] >= n)
        throw std::domain_error("matrix is singular");
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.set(i, j, rr.reduced.at(i, n + j));
    return inv;
}

/// Integer power; negative exponents go through the inverse.
inline RatMatrix mat_pow(const RatMatrix& a, long k) {
    if (a.rows() != a.cols()) throw std::invalid_argument("power of non-square matrix");
    RatMatrix base = k < 0 ? inverse(a) : a;
    long e = k < 0 ? -k : k;
    RatMatrix r = RatMatrix::identity(a.rows());
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

inline RatMatrix bracket(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("bracket shape mismatch");
    return a * b - b * a;
}

} // namespace torsw

#endif
