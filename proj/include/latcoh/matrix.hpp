#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "latcoh/ints.hpp"

namespace latcoh {

// Dense row-major matrix over an exact integer scalar.
template <class S>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, S(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    S* row_ptr(std::size_t r) { return a_.data() + r * cols_; }
    const S* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const S& v : a_)
            if (!num_is_zero(v)) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? S(1) : S(0))) return false;
        return true;
    }

    bool is_permutation() const {
        if (rows_ != cols_) return false;
        std::vector<int> col_hits(cols_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            int ones = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                const S& v = (*this)(i, j);
                if (num_is_zero(v)) continue;
                if (v != S(1)) return false;
                ++ones;
                ++col_hits[j];
            }
            if (ones != 1) return false;
        }
        for (int h : col_hits)
            if (h != 1) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat mul(const Mat& b) const {
        Mat r(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const S& v = (*this)(i, k);
                if (num_is_zero(v)) continue;
                const S* brow = b.row_ptr(k);
                S* rrow = r.row_ptr(i);
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (!num_is_zero(brow[j])) rrow[j] = num_add(rrow[j], num_mul(v, brow[j]));
            }
        return r;
    }

    std::vector<S> mul_vec(const std::vector<S>& x) const {
        std::vector<S> y(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            S acc(0);
            const S* arow = row_ptr(i);
            for (std::size_t j = 0; j < cols_; ++j)
                if (!num_is_zero(arow[j])) acc = num_add(acc, num_mul(arow[j], x[j]));
            y[i] = acc;
        }
        return y;
    }

    std::vector<S> col(std::size_t j) const {
        std::vector<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_col(std::size_t j, const std::vector<S>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    const std::vector<S>& data() const { return a_; }

  private:
    std::size_t rows_, cols_;
    std::vector<S> a_;
};

using IMat = Mat<i64>;

inline Mat<BigInt> to_big(const IMat& m) {
    Mat<BigInt> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = BigInt(m(i, j));
    return r;
}

inline IMat to_small(const Mat<BigInt>& m) {
    IMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_i64(m(i, j));
    return r;
}

inline std::vector<BigInt> to_big(const std::vector<i64>& v) {
    return std::vector<BigInt>(v.begin(), v.end());
}

inline std::vector<i64> to_small(const std::vector<BigInt>& v) {
    std::vector<i64> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_i64(v[i]);
    return r;
}

// Row-major sparse matrix with sorted (column, value) entries per row.
struct SparseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, i64>>> row;

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : row) n += r.size();
        return n;
    }

    std::vector<i64> mul_vec(const std::vector<i64>& x) const {
        std::vector<i64> y(rows, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            i64 acc = 0;
            for (const auto& [c, v] : row[i]) acc = num_add(acc, num_mul(v, x[c]));
            y[i] = acc;
        }
        return y;
    }

    IMat to_dense() const {
        IMat d(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (const auto& [c, v] : row[i]) d(i, c) = v;
        return d;
    }
};

template <class S>
std::ostream& operator<<(std::ostream& os, const Mat<S>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? " " : "");
        os << (i + 1 < m.rows() ? "\n" : "]");
    }
    return os;
}

} // namespace latcoh
