#pragma once

// Integer matrices with Smith normal form, used to present finitely generated
// abelian groups (torsion in K0 models).

#include <vector>

#include <gmpxx.h>

#include "motivecalc/error.hpp"

namespace motivecalc {

class IntMat {
public:
    IntMat() = default;
    IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static IntMat identity(size_t n) {
        IntMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    mpz_class& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const mpz_class& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    IntMat operator*(const IntMat& o) const {
        if (cols_ != o.rows_) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
        IntMat r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    mpz_class det() const {
        if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
        // Bareiss fraction-free elimination.
        IntMat m = *this;
        size_t n = rows_;
        if (n == 0) return 1;
        mpz_class prev = 1;
        int sign = 1;
        for (size_t k = 0; k + 1 < n; ++k) {
            if (m.at(k, k) == 0) {
                size_t s = k + 1;
                while (s < n && m.at(s, k) == 0) ++s;
                if (s == n) return 0;
                for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
                sign = -sign;
            }
            for (size_t i = k + 1; i < n; ++i)
                for (size_t j = k + 1; j < n; ++j) {
                    mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
            prev = m.at(k, k);
        }
        return sign * m.at(n - 1, n - 1);
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

struct SmithForm {
    IntMat d;               // U * m * V, diagonal with d1 | d2 | ...
    IntMat u, v;            // unimodular transforms
    std::vector<mpz_class> diagonal; // the nonnegative invariant factors (including zeros)
};

inline SmithForm smith_normal_form(const IntMat& input) {
    size_t rows = input.rows(), cols = input.cols();
    SmithForm out;
    out.d = input;
    out.u = IntMat::identity(rows);
    out.v = IntMat::identity(cols);
    IntMat& m = out.d;
    IntMat& u = out.u;
    IntMat& v = out.v;

    auto row_op = [&](size_t i, size_t k, const mpz_class& c) { // row i -= c * row k
        for (size_t j = 0; j < cols; ++j) m.at(i, j) -= c * m.at(k, j);
        for (size_t j = 0; j < rows; ++j) u.at(i, j) -= c * u.at(k, j);
    };
    auto col_op = [&](size_t j, size_t k, const mpz_class& c) { // col j -= c * col k
        for (size_t i = 0; i < rows; ++i) m.at(i, j) -= c * m.at(i, k);
        for (size_t i = 0; i < cols; ++i) v.at(i, j) -= c * v.at(i, k);
    };
    auto row_swap = [&](size_t i, size_t k) {
        for (size_t j = 0; j < cols; ++j) std::swap(m.at(i, j), m.at(k, j));
        for (size_t j = 0; j < rows; ++j) std::swap(u.at(i, j), u.at(k, j));
    };
    auto col_swap = [&](size_t j, size_t k) {
        for (size_t i = 0; i < rows; ++i) std::swap(m.at(i, j), m.at(i, k));
        for (size_t i = 0; i < cols; ++i) std::swap(v.at(i, j), v.at(i, k));
    };
    auto row_negate = [&](size_t i) {
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = -m.at(i, j);
        for (size_t j = 0; j < rows; ++j) u.at(i, j) = -u.at(i, j);
    };

    size_t t = 0;
    size_t nmin = std::min(rows, cols);
    while (t < nmin) {
        // find a nonzero pivot in the remaining block
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows && !found; ++i)
            for (size_t j = t; j < cols && !found; ++j)
                if (m.at(i, j) != 0) { pi = i; pj = j; found = true; }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        // clear row and column t by Euclidean steps
        for (;;) {
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m.at(i, t) == 0) continue;
                mpz_class q = m.at(i, t) / m.at(t, t); // truncated division
                row_op(i, t, q);
                if (m.at(i, t) != 0) { row_swap(t, i); clean = false; }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m.at(t, j) == 0) continue;
                mpz_class q = m.at(t, j) / m.at(t, t);
                col_op(j, t, q);
                if (m.at(t, j) != 0) { col_swap(t, j); clean = false; }
            }
            if (clean) {
                bool col_clean = true;
                for (size_t i = t + 1; i < rows; ++i)
                    if (m.at(i, t) != 0) col_clean = false;
                if (col_clean) break;
            }
        }
        ++t;
    }
    // enforce the divisibility chain
    for (;;) {
        bool changed = false;
        for (size_t i = 0; i + 1 < t; ++i) {
            if (m.at(i + 1, i + 1) % m.at(i, i) != 0) {
                // fold entry (i+1,i+1) into row i and rediagonalize the 2x2 block
                col_op(i, i + 1, mpz_class(-1)); // col i += col i+1
                for (;;) {
                    if (m.at(i + 1, i) == 0) break;
                    mpz_class q = m.at(i + 1, i) / m.at(i, i);
                    row_op(i + 1, i, q);
                    if (m.at(i + 1, i) != 0) row_swap(i, i + 1);
                }
                // clear the upper entry created in row i
                if (m.at(i, i + 1) != 0) {
                    mpz_class q = m.at(i, i + 1) / m.at(i, i);
                    col_op(i + 1, i, q);
                    if (m.at(i, i + 1) != 0)
                        throw Error(ErrorKind::Internal, "SNF divisibility pass failed");
                }
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (size_t i = 0; i < t; ++i)
        if (m.at(i, i) < 0) row_negate(i);
    for (size_t i = 0; i < nmin; ++i) out.diagonal.push_back(m.at(i, i));
    return out;
}

} // namespace motivecalc
