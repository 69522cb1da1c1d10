#pragma once

// Non-degenerate quadratic forms in characteristic != 2: diagonalization,
// signed determinant, Clifford / even Clifford construction, and the
// predict-versus-verify harness for the six structure cases.

#include <bit>
#include <string>
#include <utility>
#include <vector>

#include "motivecalc/algebra.hpp"

namespace motivecalc {

struct QuadraticForm {
    FieldPtr field;
    Mat gram;

    size_t n() const { return gram.rows(); }
};

inline QuadraticForm qf_from_gram(const FieldPtr& k, Mat gram) {
    if (k->characteristic() == 2)
        throw Error(ErrorKind::UnsupportedCharacteristic, "quadratic forms require characteristic != 2");
    size_t n = gram.rows();
    if (n < 1 || gram.cols() != n) throw Error(ErrorKind::InvalidInput, "Gram matrix must be square, n >= 1");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw Error(ErrorKind::InvalidInput, "Gram matrix must be symmetric");
    if (gram.det().is_zero()) throw Error(ErrorKind::InvalidInput, "quadratic form is degenerate");
    return QuadraticForm{k, std::move(gram)};
}

inline QuadraticForm qf_from_diag(const FieldPtr& k, const std::vector<Scalar>& diag) {
    Mat g(k, diag.size(), diag.size());
    for (size_t i = 0; i < diag.size(); ++i) g.at(i, i) = diag[i];
    return qf_from_gram(k, std::move(g));
}

struct Diagonalization {
    Mat p;                    // change of basis: p^T * gram * p is diagonal
    std::vector<Scalar> diag; // all nonzero for a valid form
};

inline Diagonalization qf_diagonalize(const QuadraticForm& q) {
    auto [p, diag] = congruence_diagonalize(q.gram);
    for (const Scalar& d : diag)
        if (d.is_zero()) throw Error(ErrorKind::Internal, "zero diagonal entry for a nondegenerate form");
    return Diagonalization{std::move(p), std::move(diag)};
}

struct SignedDeterminant {
    Scalar representative; // canonical square-class representative
    bool square = false;
};

/// delta(q) = (-1)^{n(n-1)/2} * det(gram), as a square class.
inline SignedDeterminant signed_determinant(const QuadraticForm& q) {
    Scalar d = q.gram.det();
    size_t n = q.n();
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;
    return SignedDeterminant{square_class_rep(d), is_square(d)};
}

namespace qfdetail {

// Monomial basis e_S indexed by bitmask; e_S e_T = sign * prod_{i in S&T} d_i * e_{S^T}
// with sign = (-1)^{sum over t in T of #{s in S : s > t}}.
inline Algebra clifford_on_masks(const FieldPtr& k, const std::vector<Scalar>& diag,
                                 const std::vector<unsigned>& masks, const std::string& label) {
    size_t dim = masks.size();
    algdetail::check_cap(dim);
    std::vector<size_t> index(1u << diag.size(), dim);
    for (size_t i = 0; i < dim; ++i) index[masks[i]] = i;
    Algebra a;
    a.field = k;
    a.dim = dim;
    a.table = algdetail::empty_table(k, dim);
    a.unit = Vec(dim, k->zero());
    a.unit[index[0]] = k->one();
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            unsigned s = masks[i], t = masks[j];
            int swaps = 0;
            for (unsigned bt = 0; bt < diag.size(); ++bt)
                if (t & (1u << bt)) swaps += std::popcount(s >> (bt + 1));
            Scalar c = (swaps % 2) ? -k->one() : k->one();
            for (unsigned b = 0; b < diag.size(); ++b)
                if ((s & t) & (1u << b)) c *= diag[b];
            size_t out = index[s ^ t];
            if (out == dim) throw Error(ErrorKind::Internal, "product escapes the monomial basis");
            a.table[i][j][out] = c;
        }
    a.fgd = GlDim::Yes; // semisimple in characteristic != 2
    a.label = label;
    return a;
}

} // namespace qfdetail

inline Algebra clifford(const QuadraticForm& q) {
    if (q.n() > 6) throw Error(ErrorKind::DimensionCap, "clifford supports n <= 6");
    auto d = qf_diagonalize(q);
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << q.n()); ++m) masks.push_back(m);
    return qfdetail::clifford_on_masks(q.field, d.diag, masks, "clifford(n=" + std::to_string(q.n()) + ")");
}

inline Algebra even_clifford(const QuadraticForm& q) {
    if (q.n() > 6) throw Error(ErrorKind::DimensionCap, "even_clifford supports n <= 6");
    auto d = qf_diagonalize(q);
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << q.n()); ++m)
        if (std::popcount(m) % 2 == 0) masks.push_back(m);
    return qfdetail::clifford_on_masks(q.field, d.diag, masks, "even_clifford(n=" + std::to_string(q.n()) + ")");
}

enum class CliffordShape { CentralSimpleK, CentralSimpleExt, ProductTwo };

inline const char* clifford_shape_name(CliffordShape s) {
    switch (s) {
        case CliffordShape::CentralSimpleK: return "central-simple-over-k";
        case CliffordShape::CentralSimpleExt: return "central-simple-over-k(sqrt(delta))";
        default: return "product-of-two-central-simple";
    }
}

struct CliffordStructureReport {
    size_t n = 0;
    bool n_odd = false;
    bool delta_is_square = false;
    Scalar delta;
    CliffordShape full_shape;     // C(q)
    CliffordShape even_shape;     // C_0(q)
    PolyVec center_minpoly;       // x^2 - delta, for the extension-center case
};

inline CliffordStructureReport clifford_predict(const QuadraticForm& q) {
    CliffordStructureReport r;
    r.n = q.n();
    r.n_odd = r.n % 2 == 1;
    auto sd = signed_determinant(q);
    r.delta = sd.representative;
    r.delta_is_square = sd.square;
    CliffordShape split_side = sd.square ? CliffordShape::ProductTwo : CliffordShape::CentralSimpleExt;
    if (r.n_odd) {
        r.even_shape = CliffordShape::CentralSimpleK;
        r.full_shape = split_side;
    } else {
        r.full_shape = CliffordShape::CentralSimpleK;
        r.even_shape = split_side;
    }
    if (!sd.square) {
        const FieldPtr& k = q.field;
        r.center_minpoly = {-r.delta, k->zero(), k->one()};
    }
    return r;
}

namespace qfdetail {

struct ShapeCheck {
    bool ok = false;
    std::string detail;
};

// Verify a predicted shape against the computed structure of the algebra.
inline ShapeCheck check_shape(const Algebra& a, CliffordShape shape, const Scalar& delta) {
    const FieldPtr& k = a.field;
    ShapeCheck r;
    size_t raddim = jacobson_radical(a).basis.size();
    if (raddim != 0) {
        r.detail = "radical has dimension " + std::to_string(raddim);
        return r;
    }
    Subalgebra c = center(a);
    switch (shape) {
        case CliffordShape::CentralSimpleK: {
            if (c.alg.dim != 1) {
                r.detail = "center has dimension " + std::to_string(c.alg.dim);
                return r;
            }
            if (a.dim <= 16 && !is_central_simple(a)) {
                r.detail = "enveloping rank test failed";
                return r;
            }
            break;
        }
        case CliffordShape::CentralSimpleExt: {
            if (c.alg.dim != 2) {
                r.detail = "center has dimension " + std::to_string(c.alg.dim);
                return r;
            }
            // center must be the field k(sqrt(delta)): generator minpoly irreducible
            // with discriminant in the square class of delta
            PolyVec mp;
            for (size_t i = 0; i < 2; ++i) {
                mp = algdetail::element_minpoly(c.alg, c.alg.basis(i));
                if (poly_degree(mp) == 2) break;
            }
            if (poly_degree(mp) != 2) {
                r.detail = "no degree-2 generator of the center";
                return r;
            }
            if (!poly_irreducible(k, mp)) {
                r.detail = "center is not a field";
                return r;
            }
            Scalar disc = mp[1] * mp[1] - k->from_int(4) * mp[0] * mp[2];
            if (!is_square(disc * delta)) {
                r.detail = "center discriminant is in the wrong square class";
                return r;
            }
            break;
        }
        case CliffordShape::ProductTwo: {
            if (c.alg.dim != 2) {
                r.detail = "center has dimension " + std::to_string(c.alg.dim);
                return r;
            }
            std::optional<Vec> e;
            for (size_t i = 0; i < 2 && !e; ++i)
                e = algdetail::split_idempotent(c.alg, c.alg.basis(i), 1);
            if (!e) {
                r.detail = "center does not split";
                return r;
            }
            // lift the idempotent and check the two halves are matching central simples
            Vec e1(a.dim, k->zero());
            for (size_t t = 0; t < 2; ++t)
                for (size_t u = 0; u < a.dim; ++u) e1[u] += (*e)[t] * c.embedding[t][u];
            Vec e2(a.dim, k->zero());
            for (size_t u = 0; u < a.dim; ++u) e2[u] = a.unit[u] - e1[u];
            Algebra h1 = algdetail::corner(a, e1);
            Algebra h2 = algdetail::corner(a, e2);
            if (h1.dim != h2.dim || h1.dim * 2 != a.dim) {
                r.detail = "halves have unequal dimensions";
                return r;
            }
            for (const Algebra* h : {&h1, &h2})
                if (center(*h).alg.dim != 1 || !jacobson_radical(*h).basis.empty()) {
                    r.detail = "a product half is not central simple";
                    return r;
                }
            break;
        }
    }
    r.ok = true;
    return r;
}

} // namespace qfdetail

struct CliffordVerification {
    CliffordStructureReport prediction;
    bool full_ok = false;
    bool even_ok = false;
    bool match = false;
    std::string detail; // evidence on mismatch
};

inline CliffordVerification clifford_verify(const QuadraticForm& q) {
    CliffordVerification v;
    v.prediction = clifford_predict(q);
    Algebra c = clifford(q);
    Algebra c0 = even_clifford(q);
    auto full = qfdetail::check_shape(c, v.prediction.full_shape, v.prediction.delta);
    auto even = qfdetail::check_shape(c0, v.prediction.even_shape, v.prediction.delta);
    v.full_ok = full.ok;
    v.even_ok = even.ok;
    v.match = full.ok && even.ok;
    if (!full.ok) v.detail += "C(q): " + full.detail + "; ";
    if (!even.ok) v.detail += "C0(q): " + even.detail + "; ";
    return v;
}

} // namespace motivecalc
