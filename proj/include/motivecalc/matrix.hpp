#pragma once

// Dense exact matrices over a Field, with the shared elimination core used by
// rank / kernel / solve / minimal polynomial.

#include <optional>
#include <utility>
#include <vector>

#include "motivecalc/field.hpp"

namespace motivecalc {

using Vec = std::vector<Scalar>;

class Mat {
public:
    Mat() = default;
    Mat(FieldPtr f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, field_->zero()) {}

    static Mat identity(const FieldPtr& f, size_t n) {
        Mat m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
        return m;
    }

    const FieldPtr& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const Scalar& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    Mat operator+(const Mat& o) const {
        check_shape(o, rows_, cols_);
        Mat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        check_shape(o, rows_, cols_);
        Mat r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    Mat operator*(const Mat& o) const {
        if (!field_->same(*o.field_)) throw Error(ErrorKind::FieldMismatch, "matrix field mismatch");
        if (cols_ != o.rows_) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
        Mat r(field_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Scalar& a = at(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    Mat scaled(const Scalar& c) const {
        Mat r = *this;
        for (auto& x : r.e_) x *= c;
        return r;
    }

    Mat transpose() const {
        Mat r(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Vec apply(const Vec& v) const {
        if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "vector length mismatch");
        Vec r(rows_, field_->zero());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    // Row echelon form in place; returns pivot column indices.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = row;
            while (sel < rows_ && at(sel, col).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
            Scalar inv = at(row, col).inverse();
            for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                Scalar c = at(i, col);
                for (size_t j = col; j < cols_; ++j) at(i, j) -= c * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        Mat m = *this;
        return m.rref().size();
    }

    // Basis of the right kernel, from the reduced echelon form.
    std::vector<Vec> kernel_basis() const {
        Mat m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<Vec> basis;
        for (size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            Vec v(cols_, field_->zero());
            v[free_col] = field_->one();
            for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Any solution of M x = b, or nullopt when b is outside the column space.
    std::optional<Vec> solve(const Vec& b) const {
        if (b.size() != rows_) throw Error(ErrorKind::InvalidInput, "rhs length mismatch");
        Mat aug(field_, rows_, cols_ + 1);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        Vec x(cols_, field_->zero());
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
        return x;
    }

    // Solve M X = B column by column with one elimination; nullopt when any
    // column of B is outside the column space.
    std::optional<Mat> solve_multi(const Mat& b) const {
        if (b.rows() != rows_) throw Error(ErrorKind::InvalidInput, "rhs shape mismatch");
        Mat aug(field_, rows_, cols_ + b.cols());
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            for (size_t j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
        }
        auto pivots = aug.rref();
        size_t nsys = 0;
        while (nsys < pivots.size() && pivots[nsys] < cols_) ++nsys;
        if (nsys < pivots.size()) return std::nullopt; // a pivot fell in the rhs block
        Mat x(field_, cols_, b.cols());
        for (size_t r = 0; r < pivots.size(); ++r)
            for (size_t j = 0; j < b.cols(); ++j) x.at(pivots[r], j) = aug.at(r, cols_ + j);
        return x;
    }

    Scalar det() const {
        if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
        Mat m = *this;
        Scalar d = field_->one();
        size_t n = rows_;
        for (size_t col = 0; col < n; ++col) {
            size_t sel = col;
            while (sel < n && m.at(sel, col).is_zero()) ++sel;
            if (sel == n) return field_->zero();
            if (sel != col) {
                for (size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
                d = -d;
            }
            d *= m.at(col, col);
            Scalar inv = m.at(col, col).inverse();
            for (size_t i = col + 1; i < n; ++i) {
                if (m.at(i, col).is_zero()) continue;
                Scalar c = m.at(i, col) * inv;
                for (size_t j = col; j < n; ++j) m.at(i, j) -= c * m.at(col, j);
            }
        }
        return d;
    }

    // Monic minimal polynomial (coefficients lowest degree first). Incremental:
    // reduce vectorized powers I, M, M^2, ... against the span built so far,
    // carrying the combination that expresses each reduced row.
    std::vector<Scalar> min_poly() const {
        if (rows_ != cols_) throw Error(ErrorKind::InvalidInput, "min_poly of non-square matrix");
        size_t n = rows_;
        if (n == 0) return {field_->one()};
        size_t nn = n * n;
        struct Row {
            Vec v;      // reduced vectorized power, length nn
            size_t piv; // leading index
            Vec combo;  // coordinates in terms of original powers
        };
        std::vector<Row> rows;
        Mat power = identity(field_, n);
        for (size_t k = 0; k <= n; ++k) {
            Vec v(nn, field_->zero());
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) v[i * n + j] = power.at(i, j);
            Vec combo(k + 1, field_->zero());
            combo[k] = field_->one();
            for (const Row& r : rows) {
                const Scalar c = v[r.piv];
                if (c.is_zero()) continue;
                for (size_t j = 0; j < nn; ++j)
                    if (!r.v[j].is_zero()) v[j] -= c * r.v[j];
                for (size_t j = 0; j < r.combo.size(); ++j) combo[j] -= c * r.combo[j];
            }
            size_t piv = 0;
            while (piv < nn && v[piv].is_zero()) ++piv;
            if (piv == nn) {
                // dependence found: combo gives the minimal polynomial
                Scalar lead_inv = combo.back().inverse();
                std::vector<Scalar> p(combo.size());
                for (size_t j = 0; j < combo.size(); ++j) p[j] = combo[j] * lead_inv;
                return p;
            }
            Scalar inv = v[piv].inverse();
            for (auto& x : v) x *= inv;
            for (auto& x : combo) x *= inv;
            // keep stored rows mutually reduced so one pass suffices above
            for (Row& r : rows) {
                const Scalar c = r.v[piv];
                if (c.is_zero()) continue;
                for (size_t j = 0; j < nn; ++j)
                    if (!v[j].is_zero()) r.v[j] -= c * v[j];
                if (r.combo.size() < combo.size()) r.combo.resize(combo.size(), field_->zero());
                for (size_t j = 0; j < combo.size(); ++j) r.combo[j] -= c * combo[j];
            }
            rows.push_back(Row{std::move(v), piv, std::move(combo)});
            power = power * *this;
        }
        throw Error(ErrorKind::Internal, "min_poly did not terminate");
    }

private:
    void check_shape(const Mat& o, size_t r, size_t c) const {
        if (!field_->same(*o.field_)) throw Error(ErrorKind::FieldMismatch, "matrix field mismatch");
        if (o.rows_ != r || o.cols_ != c) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
    }

    FieldPtr field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
};

inline Mat mat_from_rows(const FieldPtr& f, const std::vector<Vec>& rows, size_t cols) {
    Mat m(f, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::InvalidInput, "row length mismatch");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

// Row-reduced basis of the span of the given vectors.
inline std::vector<Vec> reduced_span(const FieldPtr& f, const std::vector<Vec>& vecs, size_t dim) {
    if (vecs.empty()) return {};
    Mat m = mat_from_rows(f, vecs, dim);
    auto pivots = m.rref();
    std::vector<Vec> basis;
    for (size_t r = 0; r < pivots.size(); ++r) {
        Vec v(dim, f->zero());
        for (size_t j = 0; j < dim; ++j) v[j] = m.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Congruence diagonalization of a symmetric matrix (char != 2): returns P with
// P^T G P diagonal; second member is the diagonal.
inline std::pair<Mat, std::vector<Scalar>> congruence_diagonalize(Mat g) {
    if (g.rows() != g.cols()) throw Error(ErrorKind::InvalidInput, "congruence needs a square matrix");
    const FieldPtr& f = g.field();
    if (f->characteristic() == 2)
        throw Error(ErrorKind::UnsupportedCharacteristic, "diagonalization requires characteristic != 2");
    size_t n = g.rows();
    Mat p = Mat::identity(f, n);
    auto col_add = [&](size_t dst, size_t src, const Scalar& c) { // col dst += c * col src, rows too
        for (size_t i = 0; i < n; ++i) g.at(i, dst) += c * g.at(i, src);
        for (size_t j = 0; j < n; ++j) g.at(dst, j) += c * g.at(src, j);
        for (size_t i = 0; i < n; ++i) p.at(i, dst) += c * p.at(i, src);
    };
    auto col_swap = [&](size_t a, size_t b) {
        for (size_t i = 0; i < n; ++i) std::swap(g.at(i, a), g.at(i, b));
        for (size_t j = 0; j < n; ++j) std::swap(g.at(a, j), g.at(b, j));
        for (size_t i = 0; i < n; ++i) std::swap(p.at(i, a), p.at(i, b));
    };
    for (size_t k = 0; k < n; ++k) {
        if (g.at(k, k).is_zero()) {
            size_t s = k + 1;
            while (s < n && g.at(s, s).is_zero()) ++s;
            if (s < n) {
                col_swap(k, s);
            } else {
                // all remaining diagonal zero; pull in an off-diagonal entry if any
                bool found = false;
                for (size_t i = k; i < n && !found; ++i)
                    for (size_t j = i + 1; j < n && !found; ++j)
                        if (!g.at(i, j).is_zero()) {
                            if (i != k) col_swap(k, i);
                            col_add(k, j, f->one()); // makes g(k,k) = 2*g(k,j) != 0
                            found = true;
                        }
                if (!found) break; // remaining block is zero
            }
        }
        Scalar inv = g.at(k, k).inverse();
        for (size_t i = k + 1; i < n; ++i)
            if (!g.at(i, k).is_zero()) col_add(i, k, -(g.at(i, k) * inv));
    }
    std::vector<Scalar> diag;
    diag.reserve(n);
    for (size_t i = 0; i < n; ++i) diag.push_back(g.at(i, i));
    return {std::move(p), std::move(diag)};
}

// Does v lie in the span of a row-reduced basis?
inline bool in_span(const FieldPtr& f, const std::vector<Vec>& reduced_basis, const Vec& v) {
    std::vector<Vec> all = reduced_basis;
    all.push_back(v);
    return reduced_span(f, all, v.size()).size() == reduced_basis.size();
}

} // namespace motivecalc
