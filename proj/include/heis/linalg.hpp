#ifndef HEIS_LINALG_HPP
#define HEIS_LINALG_HPP

#include "heis/rational_function.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace heis {

inline size_t pivot_weight(const GaussRational &) { return 1; }
inline size_t pivot_weight(const RationalFunction &f) {
    return f.num().terms().size() + f.den().terms().size();
}

/// Dense matrix over an exact field (GaussRational or RationalFunction).
template <class F> class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, F fill = F()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; ++k) m.at(k, k) = F(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    F &at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const F &at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Matrix operator*(const Matrix &o) const {
        assert(cols_ == o.rows_);
        Matrix m(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const F &a = at(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) {
                    const F &b = o.at(k, j);
                    if (b.is_zero()) continue;
                    m.at(i, j) += a * b;
                }
            }
        return m;
    }

    Matrix operator+(const Matrix &o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix m = *this;
        for (size_t k = 0; k < data_.size(); ++k) m.data_[k] += o.data_[k];
        return m;
    }

    Matrix operator-(const Matrix &o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix m = *this;
        for (size_t k = 0; k < data_.size(); ++k) m.data_[k] -= o.data_[k];
        return m;
    }

    Matrix operator*(const F &c) const {
        Matrix m = *this;
        for (auto &x : m.data_) x *= c;
        return m;
    }

    bool is_zero() const {
        for (const auto &x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix submatrix(const std::vector<size_t> &rowsel, const std::vector<size_t> &colsel) const {
        Matrix m(rowsel.size(), colsel.size());
        for (size_t i = 0; i < rowsel.size(); ++i)
            for (size_t j = 0; j < colsel.size(); ++j) m.at(i, j) = at(rowsel[i], colsel[j]);
        return m;
    }

  private:
    size_t rows_, cols_;
    std::vector<F> data_;
};

template <class F> struct LinearSolution {
    size_t rank = 0;
    size_t nullity = 0;
    bool consistent = true;
    std::vector<std::vector<F>> nullspace; // basis of the homogeneous solution space
    std::vector<F> particular;             // one solution, valid when consistent
};

/// Gaussian elimination over the fraction field; pivots are chosen among
/// nonzero entries with the smallest representation.
template <class F>
LinearSolution<F> solve_linear_system(const Matrix<F> &M, const std::vector<F> &rhs) {
    assert(rhs.empty() || rhs.size() == M.rows());
    size_t m = M.rows(), n = M.cols();
    Matrix<F> A(m, n + 1);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, n) = rhs.empty() ? F() : rhs[i];
    }

    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t best = m;
        size_t best_w = 0;
        for (size_t r = row; r < m; ++r) {
            if (A.at(r, col).is_zero()) continue;
            size_t w = pivot_weight(A.at(r, col));
            if (best == m || w < best_w) {
                best = r;
                best_w = w;
            }
        }
        if (best == m) continue;
        if (best != row)
            for (size_t j = 0; j <= n; ++j) std::swap(A.at(row, j), A.at(best, j));
        F inv = F(1) / A.at(row, col);
        for (size_t j = col; j <= n; ++j)
            if (!A.at(row, j).is_zero()) A.at(row, j) *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || A.at(r, col).is_zero()) continue;
            F factor = A.at(r, col);
            for (size_t j = col; j <= n; ++j) {
                if (A.at(row, j).is_zero()) continue;
                A.at(r, j) -= factor * A.at(row, j);
            }
        }
        pivot_col.push_back(col);
        ++row;
    }

    LinearSolution<F> sol;
    sol.rank = pivot_col.size();
    sol.nullity = n - sol.rank;
    for (size_t r = sol.rank; r < m; ++r)
        if (!A.at(r, n).is_zero()) sol.consistent = false;

    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_col) is_pivot[c] = true;

    if (sol.consistent) {
        sol.particular.assign(n, F());
        for (size_t r = 0; r < pivot_col.size(); ++r) sol.particular[pivot_col[r]] = A.at(r, n);
    }
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(n, F());
        v[free] = F(1);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -A.at(r, free);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

template <class F> size_t matrix_rank(const Matrix<F> &M) {
    return solve_linear_system(M, {}).rank;
}

/// basis of the right kernel {v : Mv = 0}
template <class F> std::vector<std::vector<F>> kernel_basis(const Matrix<F> &M) {
    return solve_linear_system(M, {}).nullspace;
}

template <class F> std::optional<Matrix<F>> inverse(const Matrix<F> &M) {
    assert(M.rows() == M.cols());
    size_t n = M.rows();
    Matrix<F> A(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, n + i) = F(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t best = n;
        size_t best_w = 0;
        for (size_t r = col; r < n; ++r) {
            if (A.at(r, col).is_zero()) continue;
            size_t w = pivot_weight(A.at(r, col));
            if (best == n || w < best_w) {
                best = r;
                best_w = w;
            }
        }
        if (best == n) return std::nullopt;
        if (best != col)
            for (size_t j = 0; j < 2 * n; ++j) std::swap(A.at(col, j), A.at(best, j));
        F inv = F(1) / A.at(col, col);
        for (size_t j = 0; j < 2 * n; ++j)
            if (!A.at(col, j).is_zero()) A.at(col, j) *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A.at(r, col).is_zero()) continue;
            F factor = A.at(r, col);
            for (size_t j = 0; j < 2 * n; ++j) {
                if (A.at(col, j).is_zero()) continue;
                A.at(r, j) -= factor * A.at(col, j);
            }
        }
    }
    Matrix<F> R(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R.at(i, j) = A.at(i, n + j);
    return R;
}

template <class F> F determinant(Matrix<F> A) {
    assert(A.rows() == A.cols());
    size_t n = A.rows();
    F det = F(1);
    for (size_t col = 0; col < n; ++col) {
        size_t best = n;
        size_t best_w = 0;
        for (size_t r = col; r < n; ++r) {
            if (A.at(r, col).is_zero()) continue;
            size_t w = pivot_weight(A.at(r, col));
            if (best == n || w < best_w) {
                best = r;
                best_w = w;
            }
        }
        if (best == n) return F();
        if (best != col) {
            for (size_t j = 0; j < n; ++j) std::swap(A.at(col, j), A.at(best, j));
            det = -det;
        }
        det *= A.at(col, col);
        F inv = F(1) / A.at(col, col);
        for (size_t r = col + 1; r < n; ++r) {
            if (A.at(r, col).is_zero()) continue;
            F factor = A.at(r, col) * inv;
            for (size_t j = col; j < n; ++j) {
                if (A.at(col, j).is_zero()) continue;
                A.at(r, j) -= factor * A.at(col, j);
            }
        }
    }
    return det;
}

using MatQ = Matrix<GaussRational>;
using MatF = Matrix<RationalFunction>;

} // namespace heis

#endif
