#pragma once

/*
 * Fraction-free (Bareiss) elimination over the integers.
 *
 * Rational inputs are row-scaled to integer matrices first; every
 * intermediate division is exact.
 */

#include "qconv/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qconv {

template <class MatrixType>
class BareissLU {
public:
    using Index = Eigen::Index;

    BareissLU() = default;
    explicit BareissLU(const MatrixType& A) { compute(A); }

    BareissLU& compute(const MatrixType& A) {
        m_ = A;
        rows_ = m_.rows();
        cols_ = m_.cols();
        sign_ = 1;
        pivots_.clear();
        Integer prev = 1;
        Index r = 0;
        Integer t;
        for (Index c = 0; c < cols_ && r < rows_; ++c) {
            Index p = r;
            while (p < rows_ && m_(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r) {
                m_.row(p).swap(m_.row(r));
                sign_ = -sign_;
            }
            for (Index i = r + 1; i < rows_; ++i) {
                for (Index j = c + 1; j < cols_; ++j) {
                    t = m_(i, j) * m_(r, c);
                    t -= m_(i, c) * m_(r, j);
                    mpz_divexact(m_(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                m_(i, c) = 0;
            }
            prev = m_(r, c);
            pivots_.push_back(c);
            ++r;
        }
        return *this;
    }

    Index rank() const { return static_cast<Index>(pivots_.size()); }

    /// Determinant of a square input (zero when singular).
    Integer determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        if (rows_ == 0) return 1;
        if (rank() < rows_) return 0;
        return sign_ * m_(rows_ - 1, cols_ - 1);
    }

    /// Echelon form reached by the elimination.
    const MatrixType& echelon() const { return m_; }
    const std::vector<Index>& pivot_columns() const { return pivots_; }

private:
    MatrixType m_;
    Index rows_ = 0;
    Index cols_ = 0;
    int sign_ = 1;
    std::vector<Index> pivots_;
};

/// Scale each row by the lcm of its denominators; returns the integer matrix and the row scales.
template <class Derived>
Matrix<Integer> clear_denominators(const Eigen::MatrixBase<Derived>& A, std::vector<Integer>* scales = nullptr) {
    Matrix<Integer> out(A.rows(), A.cols());
    if (scales) scales->assign(A.rows(), Integer(1));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Integer l = 1;
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            Rational x = A(i, j);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        }
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            Rational x = A(i, j);
            x *= l;
            out(i, j) = x.get_num();
        }
        if (scales) (*scales)[i] = l;
    }
    return out;
}

inline Rational determinant(const Matrix<Rational>& A) {
    std::vector<Integer> scales;
    Matrix<Integer> Z = clear_denominators(A, &scales);
    Rational d(BareissLU<Matrix<Integer>>(Z).determinant());
    for (auto& s : scales) d /= s;
    return d;
}

inline Eigen::Index rank(const Matrix<Rational>& A) {
    return BareissLU<Matrix<Integer>>(clear_denominators(A)).rank();
}

/// Unique solution of A x = b for square A, or nullopt when A is singular.
inline std::optional<Vector<Rational>> solve_exact(const Matrix<Rational>& A, const Vector<Rational>& b) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || b.size() != n) throw std::invalid_argument("solve_exact: dimension mismatch");
    Matrix<Rational> aug(n, n + 1);
    aug.leftCols(n) = A;
    aug.col(n) = b;
    BareissLU<Matrix<Integer>> lu(clear_denominators(aug));
    const auto& U = lu.echelon();
    const auto& piv = lu.pivot_columns();
    if (static_cast<Eigen::Index>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    Vector<Rational> x(n);
    for (Eigen::Index i = n; i-- > 0;) {
        Rational s = Rational(U(i, n));
        for (Eigen::Index j = i + 1; j < n; ++j) s -= Rational(U(i, j)) * x(j);
        s /= Rational(U(i, i));
        x(i) = s;
    }
    return x;
}

/**
 * Row space of integer vectors grown one row at a time; add() reports
 * whether the new row raised the rank.
 */
class IncrementalRank {
public:
    explicit IncrementalRank(Eigen::Index width) : width_(width) {}

    bool add(Vector<Integer> v) {
        if (v.size() != width_) throw std::invalid_argument("IncrementalRank: width mismatch");
        Integer a, b;
        for (size_t k = 0; k < rows_.size(); ++k) {
            const Eigen::Index p = pivots_[k];
            if (v(p) == 0) continue;
            a = rows_[k](p);
            b = v(p);
            for (Eigen::Index j = 0; j < width_; ++j) {
                v(j) *= a;
                v(j) -= b * rows_[k](j);
            }
            reduce_content(v);
        }
        Eigen::Index p = 0;
        while (p < width_ && v(p) == 0) ++p;
        if (p == width_) return false;
        // rows stay sorted by pivot so a single pass clears every pivot column
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<long>(pos), p);
        return true;
    }

    Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }

private:
    static void reduce_content(Vector<Integer>& v) {
        Integer g = 0;
        for (Eigen::Index j = 0; j < v.size(); ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v(j).get_mpz_t());
        if (g > 1)
            for (Eigen::Index j = 0; j < v.size(); ++j) mpz_divexact(v(j).get_mpz_t(), v(j).get_mpz_t(), g.get_mpz_t());
    }

    Eigen::Index width_;
    std::vector<Vector<Integer>> rows_;
    std::vector<Eigen::Index> pivots_;
};

}  // namespace qconv
