#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ufa/bool_matrix.hpp"
#include "ufa/errors.hpp"
#include "ufa/rational.hpp"

namespace ufa {

using RatVector = std::vector<Rational>;

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    static RatMatrix from_rows(const std::vector<RatVector>& rows, int cols) {
        RatMatrix m(int(rows.size()), cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < cols; ++j) m.at(int(i), j) = rows[i][j];
        return m;
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

inline Rational dot(const RatVector& x, const RatVector& y) {
    Rational s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

/// Weight of a 0/1 vector against a rational vector: sum of x over the set.
inline Rational dot(const RatVector& x, const StateSet& s) {
    Rational sum = 0;
    for (int q = 0; q < s.universe(); ++q)
        if (s.test(q)) sum += x[q];
    return sum;
}

inline bool is_zero(const RatVector& v) {
    for (const Rational& x : v)
        if (x != 0) return false;
    return true;
}

/// Row vector times 0/1 matrix: (x M)(j) = sum of x over the support of column j.
inline RatVector mul_row(const RatVector& x, const BoolMatrix& m) {
    int n = m.dim();
    RatVector out(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (m.get(i, j)) out[j] += x[i];
    }
    return out;
}

/// 0/1 matrix times column vector.
inline RatVector mul_col(const BoolMatrix& m, const RatVector& y) {
    int n = m.dim();
    RatVector out(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.get(i, j)) out[i] += y[j];
    return out;
}

struct RrefResult {
    RatMatrix reduced;
    std::vector<int> pivot_cols;
    int rank;
};

/// Exact reduced row echelon form. Pivoting picks the smallest row index with
/// a nonzero entry; magnitude is irrelevant over rationals.
inline RrefResult rref(RatMatrix m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rational inv = m.at(r, c);
        for (int j = c; j < cols; ++j) m.at(r, j) /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (int j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult{std::move(m), std::move(pivots), r};
}

inline int rat_rank(const RatMatrix& m) { return rref(m).rank; }

inline int rat_rank(const BoolMatrix& m) {
    RatMatrix rm(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (m.get(i, j)) rm.at(i, j) = 1;
    return rat_rank(rm);
}

/// One exact solution of mat*y = rhs when consistent (free variables are fixed
/// to 0), std::nullopt otherwise.
inline std::optional<RatVector> solve(const RatMatrix& mat, const RatVector& rhs) {
    if (int(rhs.size()) != mat.rows())
        throw InternalError("solve: dimension mismatch between matrix and right-hand side");
    int rows = mat.rows(), cols = mat.cols();
    RatMatrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = mat.at(i, j);
        aug.at(i, cols) = rhs[i];
    }
    RrefResult rr = rref(std::move(aug));
    for (int c : rr.pivot_cols)
        if (c == cols) return std::nullopt;
    RatVector y(cols, Rational(0));
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) y[rr.pivot_cols[i]] = rr.reduced.at(int(i), cols);
    return y;
}

/// Exact basis of the right null space, ordered by free-variable index.
inline std::vector<RatVector> kernel_basis(const RatMatrix& mat) {
    int cols = mat.cols();
    RrefResult rr = rref(mat);
    std::vector<char> is_pivot(cols, 0);
    for (int c : rr.pivot_cols) is_pivot[c] = 1;
    std::vector<RatVector> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
            v[rr.pivot_cols[i]] = -rr.reduced.at(int(i), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Incrementally maintained basis in reduced echelon form.
class EchelonBasis {
public:
    /// Adds v to the span; returns true iff v was independent of the basis.
    bool insert(RatVector v) {
        reduce(v);
        int p = pivot_of(v);
        if (p < 0) return false;
        Rational inv = v[p];
        for (Rational& x : v) x /= inv;
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i][p] == 0) continue;
            Rational f = rows_[i][p];
            for (size_t j = 0; j < v.size(); ++j) rows_[i][j] -= f * v[j];
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    bool contains(RatVector v) const {
        reduce(v);
        return pivot_of(v) < 0;
    }

    int dim() const { return int(rows_.size()); }
    const std::vector<RatVector>& vectors() const { return rows_; }

private:
    void reduce(RatVector& v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            Rational f = v[pivots_[i]];
            if (f == 0) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows_[i][j];
        }
    }

    static int pivot_of(const RatVector& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) return int(j);
        return -1;
    }

    std::vector<RatVector> rows_;
    std::vector<int> pivots_;
};

enum class Side {
    Right,  ///< row vectors, closed under x -> x * M(a)
    Left,   ///< column vectors, closed under y -> M(a) * y
};

/// Basis of the smallest space containing the seeds and closed under the given
/// one-sided multiplications by the generator matrices. FIFO worklist over an
/// echelon basis; at most dim(space) insertions, so it terminates in <= n rounds.
inline std::vector<RatVector> span_closure(const std::vector<RatVector>& seeds,
                                           const std::vector<BoolMatrix>& generators,
                                           Side side) {
    EchelonBasis basis;
    std::vector<RatVector> work;
    for (const RatVector& s : seeds)
        if (basis.insert(s)) work.push_back(s);
    for (size_t head = 0; head < work.size(); ++head) {
        RatVector v = work[head];
        for (const BoolMatrix& g : generators) {
            RatVector next = side == Side::Right ? mul_row(v, g) : mul_col(g, v);
            if (basis.insert(next)) work.push_back(std::move(next));
        }
    }
    return basis.vectors();
}

}  // namespace ufa
