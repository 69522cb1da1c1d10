#pragma once

// Finite-dimensional unital associative algebras given by structure constants:
// constructors, combinators, radical / center / separability analysis, and
// Wedderburn decomposition reports.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "motivecalc/intmat.hpp"
#include "motivecalc/matrix.hpp"
#include "motivecalc/numth.hpp"
#include "motivecalc/poly.hpp"

namespace motivecalc {

inline constexpr size_t kDefaultDimCap = 64;

enum class GlDim { Yes, No, Unknown };

inline const char* gldim_name(GlDim g) {
    switch (g) {
        case GlDim::Yes: return "yes";
        case GlDim::No: return "no";
        default: return "unknown";
    }
}

struct Algebra {
    FieldPtr field;
    size_t dim = 0;
    std::vector<std::vector<Vec>> table; // table[i][j] = coordinates of b_i * b_j
    Vec unit;
    GlDim fgd = GlDim::Unknown;
    std::string label;

    Vec basis(size_t i) const {
        Vec v(dim, field->zero());
        v[i] = field->one();
        return v;
    }

    Vec mul(const Vec& a, const Vec& b) const {
        Vec r(dim, field->zero());
        for (size_t i = 0; i < dim; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (b[j].is_zero()) continue;
                Scalar c = a[i] * b[j];
                const Vec& t = table[i][j];
                for (size_t l = 0; l < dim; ++l)
                    if (!t[l].is_zero()) r[l] += c * t[l];
            }
        }
        return r;
    }

    // matrix of x -> v * x
    Mat lmat(const Vec& v) const {
        Mat m(field, dim, dim);
        for (size_t i = 0; i < dim; ++i) {
            if (v[i].is_zero()) continue;
            for (size_t j = 0; j < dim; ++j)
                for (size_t u = 0; u < dim; ++u)
                    if (!table[i][j][u].is_zero()) m.at(u, j) += v[i] * table[i][j][u];
        }
        return m;
    }

    // matrix of x -> x * v
    Mat rmat(const Vec& v) const {
        Mat m(field, dim, dim);
        for (size_t i = 0; i < dim; ++i) {
            if (v[i].is_zero()) continue;
            for (size_t j = 0; j < dim; ++j)
                for (size_t u = 0; u < dim; ++u)
                    if (!table[j][i][u].is_zero()) m.at(u, j) += v[i] * table[j][i][u];
        }
        return m;
    }

    Scalar ltrace(const Vec& v) const {
        Scalar t = field->zero();
        for (size_t i = 0; i < dim; ++i) {
            if (v[i].is_zero()) continue;
            for (size_t u = 0; u < dim; ++u) t += v[i] * table[i][u][u];
        }
        return t;
    }
};

struct IdealBasis {
    std::vector<Vec> basis; // row-reduced
};

inline void alg_validate(const Algebra& a, size_t dim_cap = kDefaultDimCap) {
    if (a.dim == 0) throw Error(ErrorKind::InvalidInput, "algebra must have dim >= 1");
    if (a.dim > dim_cap)
        throw Error(ErrorKind::DimensionCap,
                    "algebra dimension " + std::to_string(a.dim) + " exceeds cap " + std::to_string(dim_cap));
    size_t n = a.dim;
    if (a.table.size() != n || a.unit.size() != n)
        throw Error(ErrorKind::InvalidInput, "structure table shape mismatch");
    for (const auto& row : a.table) {
        if (row.size() != n) throw Error(ErrorKind::InvalidInput, "structure table shape mismatch");
        for (const auto& v : row)
            if (v.size() != n) throw Error(ErrorKind::InvalidInput, "structure table shape mismatch");
    }
    for (size_t i = 0; i < n; ++i) {
        Vec bi = a.basis(i);
        if (a.mul(a.unit, bi) != bi || a.mul(bi, a.unit) != bi)
            throw Error(ErrorKind::InvalidInput, "unit axiom fails on basis element " + std::to_string(i));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Vec& ij = a.table[i][j];
            for (size_t k = 0; k < n; ++k) {
                // (b_i b_j) b_k vs b_i (b_j b_k)
                Vec lhs = a.mul(ij, a.basis(k));
                Vec rhs = a.mul(a.basis(i), a.table[j][k]);
                if (lhs != rhs)
                    throw Error(ErrorKind::InvalidInput,
                                "associativity fails at basis triple (" + std::to_string(i) + "," +
                                    std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
}

// ---------------------------------------------------------------------------
// constructors

namespace algdetail {

inline std::vector<std::vector<Vec>> empty_table(const FieldPtr& f, size_t n) {
    return std::vector<std::vector<Vec>>(n, std::vector<Vec>(n, Vec(n, f->zero())));
}

inline void check_cap(size_t n, size_t cap = kDefaultDimCap) {
    if (n == 0 || n > cap)
        throw Error(ErrorKind::DimensionCap, "dimension " + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
}

} // namespace algdetail

inline Algebra alg_matrix(const FieldPtr& k, size_t n) {
    if (n < 1 || n > 8) throw Error(ErrorKind::InvalidInput, "matrix algebra size must be in [1,8]");
    size_t dim = n * n; // basis e_{rc} at index r*n + c
    Algebra a;
    a.field = k;
    a.dim = dim;
    a.table = algdetail::empty_table(k, dim);
    a.unit = Vec(dim, k->zero());
    for (size_t r = 0; r < n; ++r) a.unit[r * n + r] = k->one();
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            for (size_t r2 = 0; r2 < n; ++r2)
                for (size_t c2 = 0; c2 < n; ++c2)
                    if (c == r2) a.table[r * n + c][r2 * n + c2][r * n + c2] = k->one();
    a.fgd = GlDim::Yes;
    a.label = "matrix(" + k->str() + "," + std::to_string(n) + ")";
    return a;
}

inline Algebra alg_quaternion(const FieldPtr& k, const Scalar& qa, const Scalar& qb) {
    if (k->characteristic() == 2)
        throw Error(ErrorKind::UnsupportedCharacteristic, "quaternion algebras need characteristic != 2");
    if (qa.is_zero() || qb.is_zero())
        throw Error(ErrorKind::InvalidInput, "quaternion parameters must be nonzero");
    Algebra a;
    a.field = k;
    a.dim = 4; // basis 1, i, j, ij
    a.table = algdetail::empty_table(k, 4);
    a.unit = {k->one(), k->zero(), k->zero(), k->zero()};
    auto set = [&](size_t i, size_t j, size_t l, const Scalar& c) { a.table[i][j][l] = c; };
    Scalar one = k->one();
    for (size_t i = 0; i < 4; ++i) { set(0, i, i, one); if (i) set(i, 0, i, one); }
    set(1, 1, 0, qa);            // i^2 = a
    set(2, 2, 0, qb);            // j^2 = b
    set(1, 2, 3, one);           // ij = k
    set(2, 1, 3, -one);          // ji = -k
    set(1, 3, 2, qa);            // ik = a j
    set(3, 1, 2, -qa);           // ki = -a j
    set(2, 3, 1, -qb);           // jk = -b i
    set(3, 2, 1, qb);            // kj = b i
    set(3, 3, 0, -(qa * qb));    // k^2 = -ab
    a.fgd = GlDim::Yes;
    a.label = "quaternion(" + k->str() + "," + qa.str() + "," + qb.str() + ")";
    return a;
}

/// Path algebra of an acyclic quiver with composition read left to right:
/// p * q = pq when p ends where q starts.
inline Algebra alg_path(const FieldPtr& k, size_t vertices, const std::vector<std::pair<size_t, size_t>>& arrows) {
    if (vertices < 1 || vertices > 8 || arrows.size() > 8)
        throw Error(ErrorKind::InvalidInput, "quiver must have 1..8 vertices and at most 8 arrows");
    for (auto& [s, t] : arrows)
        if (s >= vertices || t >= vertices)
            throw Error(ErrorKind::InvalidInput, "arrow endpoint out of range");
    // acyclicity: no directed cycle through arrow relation
    {
        std::vector<int> state(vertices, 0);
        std::vector<std::vector<size_t>> out(vertices);
        for (auto& [s, t] : arrows) out[s].push_back(t);
        std::vector<size_t> stack;
        for (size_t v0 = 0; v0 < vertices; ++v0) {
            if (state[v0]) continue;
            stack = {v0};
            std::vector<std::pair<size_t, size_t>> frames{{v0, 0}};
            state[v0] = 1;
            while (!frames.empty()) {
                auto& [v, idx] = frames.back();
                if (idx < out[v].size()) {
                    size_t w = out[v][idx++];
                    if (state[w] == 1) throw Error(ErrorKind::InvalidInput, "quiver has a directed cycle");
                    if (state[w] == 0) { state[w] = 1; frames.push_back({w, 0}); }
                } else {
                    state[v] = 2;
                    frames.pop_back();
                }
            }
        }
    }
    // enumerate paths: (source, target, arrow sequence); trivial paths first
    struct Path { size_t src, dst; std::vector<size_t> seq; };
    std::vector<Path> paths;
    for (size_t v = 0; v < vertices; ++v) paths.push_back({v, v, {}});
    std::vector<Path> frontier;
    for (size_t ai = 0; ai < arrows.size(); ++ai)
        frontier.push_back({arrows[ai].first, arrows[ai].second, {ai}});
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end(), [](const Path& a, const Path& b) { return a.seq < b.seq; });
        for (auto& p : frontier) paths.push_back(p);
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (size_t ai = 0; ai < arrows.size(); ++ai)
                if (arrows[ai].first == p.dst) {
                    Path q = p;
                    q.seq.push_back(ai);
                    q.dst = arrows[ai].second;
                    next.push_back(std::move(q));
                }
        frontier = std::move(next);
        if (paths.size() > kDefaultDimCap)
            throw Error(ErrorKind::DimensionCap, "path algebra dimension exceeds cap");
    }
    size_t n = paths.size();
    algdetail::check_cap(n);
    auto find_path = [&](size_t src, const std::vector<size_t>& seq) -> size_t {
        for (size_t i = 0; i < n; ++i)
            if (paths[i].src == src && paths[i].seq == seq) return i;
        throw Error(ErrorKind::Internal, "path concatenation not found");
    };
    Algebra a;
    a.field = k;
    a.dim = n;
    a.table = algdetail::empty_table(k, n);
    a.unit = Vec(n, k->zero());
    for (size_t v = 0; v < vertices; ++v) a.unit[v] = k->one();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (paths[i].dst == paths[j].src) {
                std::vector<size_t> seq = paths[i].seq;
                seq.insert(seq.end(), paths[j].seq.begin(), paths[j].seq.end());
                a.table[i][j][find_path(paths[i].src, seq)] = k->one();
            }
    a.fgd = GlDim::Yes; // path algebras of acyclic quivers are hereditary
    a.label = "path(" + k->str() + "," + std::to_string(vertices) + "v" + std::to_string(arrows.size()) + "a)";
    return a;
}

inline Algebra alg_upper_triangular(const FieldPtr& k, size_t n) {
    if (n < 1 || n > 8) throw Error(ErrorKind::InvalidInput, "upper triangular size must be in [1,8]");
    // basis e_{rc}, r <= c, ordered by (r, c)
    std::vector<std::pair<size_t, size_t>> pos;
    for (size_t r = 0; r < n; ++r)
        for (size_t c = r; c < n; ++c) pos.push_back({r, c});
    size_t dim = pos.size();
    auto idx = [&](size_t r, size_t c) {
        for (size_t i = 0; i < dim; ++i)
            if (pos[i].first == r && pos[i].second == c) return i;
        throw Error(ErrorKind::Internal, "bad index");
    };
    Algebra a;
    a.field = k;
    a.dim = dim;
    a.table = algdetail::empty_table(k, dim);
    a.unit = Vec(dim, k->zero());
    for (size_t r = 0; r < n; ++r) a.unit[idx(r, r)] = k->one();
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            if (pos[i].second == pos[j].first)
                a.table[i][j][idx(pos[i].first, pos[j].second)] = k->one();
    a.fgd = GlDim::Yes;
    a.label = "upper_triangular(" + k->str() + "," + std::to_string(n) + ")";
    return a;
}

inline Algebra alg_dual_numbers(const FieldPtr& k) {
    Algebra a;
    a.field = k;
    a.dim = 2; // basis 1, eps
    a.table = algdetail::empty_table(k, 2);
    a.unit = {k->one(), k->zero()};
    a.table[0][0][0] = k->one();
    a.table[0][1][1] = k->one();
    a.table[1][0][1] = k->one();
    // eps^2 = 0
    a.fgd = GlDim::No;
    a.label = "dual_numbers(" + k->str() + ")";
    return a;
}

inline Algebra alg_cyclic_group(const FieldPtr& k, size_t n) {
    algdetail::check_cap(n);
    Algebra a;
    a.field = k;
    a.dim = n; // basis x^0 .. x^{n-1}
    a.table = algdetail::empty_table(k, n);
    a.unit = Vec(n, k->zero());
    a.unit[0] = k->one();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a.table[i][j][(i + j) % n] = k->one();
    std::int64_t p = k->characteristic();
    a.fgd = (p != 0 && n % static_cast<size_t>(p) == 0) ? GlDim::No : GlDim::Yes;
    a.label = "cyclic_group_algebra(" + k->str() + "," + std::to_string(n) + ")";
    return a;
}

/// F_p<x,d> / ([d,x] = 1, x^p = a, d^p = b): the fiber of the Weyl algebra in
/// characteristic p, of dimension p^2 with basis x^i d^j.
inline Algebra alg_weyl_fiber(std::int64_t p, std::int64_t pa, std::int64_t pb) {
    if (!detail::is_prime_i64(p)) throw Error(ErrorKind::InvalidInput, "weyl_fiber needs a prime p");
    size_t n = static_cast<size_t>(p);
    algdetail::check_cap(n * n);
    FieldPtr k = Field::prime(p);
    Scalar sa = k->from_int(pa), sb = k->from_int(pb);
    size_t dim = n * n;
    auto idx = [&](size_t xi, size_t dj) { return xi * n + dj; };
    Algebra a;
    a.field = k;
    a.dim = dim;
    a.table = algdetail::empty_table(k, dim);
    a.unit = Vec(dim, k->zero());
    a.unit[0] = k->one();
    // d^j x^kk = sum_t C(j,t) C(kk,t) t! x^{kk-t} d^{j-t}
    auto binom = [&](size_t nn, size_t kk) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), nn, kk);
        return r;
    };
    for (size_t xi = 0; xi < n; ++xi)
        for (size_t dj = 0; dj < n; ++dj)
            for (size_t xk = 0; xk < n; ++xk)
                for (size_t dl = 0; dl < n; ++dl) {
                    Vec& out = a.table[idx(xi, dj)][idx(xk, dl)];
                    for (size_t t = 0; t <= std::min(dj, xk); ++t) {
                        mpz_class fact = 1;
                        for (size_t u = 2; u <= t; ++u) fact *= u;
                        mpz_class cz = binom(dj, t) * binom(xk, t) * fact;
                        Scalar c = k->from_rational(mpq_class(cz));
                        if (c.is_zero()) continue;
                        size_t xe = xi + xk - t, de = dj - t + dl;
                        if (xe >= n) { xe -= n; c *= sa; }
                        if (de >= n) { de -= n; c *= sb; }
                        if (c.is_zero()) continue;
                        out[idx(xe, de)] += c;
                    }
                }
    a.fgd = GlDim::Yes;
    a.label = "weyl_fiber(" + std::to_string(p) + "," + std::to_string(pa) + "," + std::to_string(pb) + ")";
    return a;
}

/// 2x2 upper triangular algebra over A: elements [[a, m], [0, b]] with a, m, b in A.
inline Algebra alg_triangular_T(const Algebra& base) {
    size_t n = base.dim, dim = 3 * n;
    algdetail::check_cap(dim);
    const FieldPtr& k = base.field;
    // blocks: [0,n) = diag top (a), [n,2n) = corner (m), [2n,3n) = diag bottom (b)
    Algebra a;
    a.field = k;
    a.dim = dim;
    a.table = algdetail::empty_table(k, dim);
    a.unit = Vec(dim, k->zero());
    for (size_t i = 0; i < n; ++i) {
        a.unit[i] = base.unit[i];
        a.unit[2 * n + i] = base.unit[i];
    }
    auto put = [&](Vec& dst, size_t block, const Vec& v) {
        for (size_t l = 0; l < n; ++l) dst[block * n + l] += v[l];
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Vec& prod = base.table[i][j];
            put(a.table[i][j], 0, prod);                 // a*a'
            put(a.table[i][n + j], 1, prod);             // a*m'
            put(a.table[n + i][2 * n + j], 1, prod);     // m*b'
            put(a.table[2 * n + i][2 * n + j], 2, prod); // b*b'
        }
    a.fgd = base.fgd;
    a.label = "triangular_T(" + base.label + ")";
    return a;
}

inline Algebra alg_custom(FieldPtr k, std::vector<std::vector<Vec>> table, Vec unit,
                          GlDim fgd = GlDim::Unknown, size_t dim_cap = kDefaultDimCap) {
    Algebra a;
    a.field = std::move(k);
    a.dim = unit.size();
    a.table = std::move(table);
    a.unit = std::move(unit);
    a.fgd = fgd;
    a.label = "custom";
    alg_validate(a, dim_cap);
    return a;
}

// ---------------------------------------------------------------------------
// combinators

inline Algebra alg_opposite(const Algebra& a) {
    Algebra r = a;
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < a.dim; ++j) r.table[i][j] = a.table[j][i];
    r.label = "op(" + a.label + ")";
    return r;
}

inline Algebra alg_tensor(const Algebra& a, const Algebra& b, size_t dim_cap = kDefaultDimCap) {
    if (!a.field->same(b.field)) throw Error(ErrorKind::FieldMismatch, "tensor factors over different fields");
    size_t n = a.dim * b.dim;
    algdetail::check_cap(n, dim_cap);
    const FieldPtr& k = a.field;
    auto idx = [&](size_t i, size_t j) { return i * b.dim + j; };
    Algebra r;
    r.field = k;
    r.dim = n;
    r.table = algdetail::empty_table(k, n);
    r.unit = Vec(n, k->zero());
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < b.dim; ++j) r.unit[idx(i, j)] = a.unit[i] * b.unit[j];
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < b.dim; ++j)
            for (size_t i2 = 0; i2 < a.dim; ++i2)
                for (size_t j2 = 0; j2 < b.dim; ++j2) {
                    Vec& out = r.table[idx(i, j)][idx(i2, j2)];
                    const Vec& pa = a.table[i][i2];
                    const Vec& pb = b.table[j][j2];
                    for (size_t u = 0; u < a.dim; ++u) {
                        if (pa[u].is_zero()) continue;
                        for (size_t v = 0; v < b.dim; ++v)
                            if (!pb[v].is_zero()) out[idx(u, v)] += pa[u] * pb[v];
                    }
                }
    r.fgd = GlDim::Unknown; // refined below when a separable factor is cheap to certify
    r.label = "tensor(" + a.label + "," + b.label + ")";
    return r;
}

inline Algebra alg_product(const Algebra& a, const Algebra& b, size_t dim_cap = kDefaultDimCap) {
    if (!a.field->same(b.field)) throw Error(ErrorKind::FieldMismatch, "product factors over different fields");
    size_t n = a.dim + b.dim;
    algdetail::check_cap(n, dim_cap);
    const FieldPtr& k = a.field;
    Algebra r;
    r.field = k;
    r.dim = n;
    r.table = algdetail::empty_table(k, n);
    r.unit = Vec(n, k->zero());
    for (size_t i = 0; i < a.dim; ++i) r.unit[i] = a.unit[i];
    for (size_t j = 0; j < b.dim; ++j) r.unit[a.dim + j] = b.unit[j];
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < a.dim; ++j)
            for (size_t l = 0; l < a.dim; ++l) r.table[i][j][l] = a.table[i][j][l];
    for (size_t i = 0; i < b.dim; ++i)
        for (size_t j = 0; j < b.dim; ++j)
            for (size_t l = 0; l < b.dim; ++l) r.table[a.dim + i][a.dim + j][a.dim + l] = b.table[i][j][l];
    if (a.fgd == GlDim::No || b.fgd == GlDim::No)
        r.fgd = GlDim::No;
    else if (a.fgd == GlDim::Yes && b.fgd == GlDim::Yes)
        r.fgd = GlDim::Yes;
    r.label = "product(" + a.label + "," + b.label + ")";
    return r;
}

// ---------------------------------------------------------------------------
// ideals, quotients, subalgebras

inline bool is_two_sided_ideal(const Algebra& a, const std::vector<Vec>& reduced_basis) {
    for (const Vec& v : reduced_basis)
        for (size_t i = 0; i < a.dim; ++i) {
            if (!in_span(a.field, reduced_basis, a.mul(a.basis(i), v))) return false;
            if (!in_span(a.field, reduced_basis, a.mul(v, a.basis(i)))) return false;
        }
    return true;
}

inline IdealBasis make_ideal(const Algebra& a, const std::vector<Vec>& vectors) {
    auto reduced = reduced_span(a.field, vectors, a.dim);
    if (!is_two_sided_ideal(a, reduced)) throw Error(ErrorKind::NotAnIdeal, "span is not a two-sided ideal");
    return IdealBasis{std::move(reduced)};
}

/// Is I nilpotent as a subspace? Multiplies the span into itself at most
/// dim(A) times.
inline bool ideal_is_nilpotent(const Algebra& a, const std::vector<Vec>& reduced_basis) {
    std::vector<Vec> cur = reduced_basis;
    for (size_t step = 0; step < a.dim && !cur.empty(); ++step) {
        std::vector<Vec> prods;
        for (const Vec& x : cur)
            for (const Vec& y : reduced_basis) prods.push_back(a.mul(x, y));
        auto next = reduced_span(a.field, prods, a.dim);
        if (next.empty()) return true;
        if (next.size() >= cur.size()) return false; // stabilized nonzero
        cur = std::move(next);
    }
    return cur.empty();
}

inline Algebra alg_quotient(const Algebra& a, const IdealBasis& ideal) {
    const FieldPtr& k = a.field;
    size_t n = a.dim, m = ideal.basis.size();
    if (m >= n) throw Error(ErrorKind::InvalidInput, "quotient by the whole algebra");
    // complete the ideal basis to a basis of A with standard vectors
    std::vector<Vec> full = ideal.basis;
    std::vector<size_t> chosen;
    for (size_t i = 0; i < n && full.size() < n; ++i) {
        std::vector<Vec> trial = full;
        trial.push_back(a.basis(i));
        if (reduced_span(k, trial, n).size() > full.size()) {
            full.push_back(a.basis(i));
            chosen.push_back(i);
        }
    }
    if (full.size() != n) throw Error(ErrorKind::Internal, "failed to complete ideal basis");
    // change of basis: columns = [ideal | complement]; reduction drops the ideal block
    Mat cols(k, n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) cols.at(i, j) = full[j][i];
    auto inv = cols.solve_multi(Mat::identity(k, n));
    if (!inv) throw Error(ErrorKind::Internal, "basis matrix not invertible");
    size_t q = n - m;
    auto reduce = [&](const Vec& v) {
        Vec c = inv->apply(v);
        return Vec(c.begin() + static_cast<long>(m), c.end());
    };
    Algebra r;
    r.field = k;
    r.dim = q;
    r.table = algdetail::empty_table(k, q);
    r.unit = reduce(a.unit);
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) r.table[i][j] = reduce(a.mul(full[m + i], full[m + j]));
    r.fgd = GlDim::Unknown;
    r.label = "quotient(" + a.label + ")";
    return r;
}

struct Subalgebra {
    Algebra alg;
    std::vector<Vec> embedding; // image of each basis vector in the parent
};

/// Build the algebra structure on a multiplicatively closed span containing a
/// unit of its own (usually the parent's unit or an idempotent).
inline Subalgebra subalgebra_from_basis(const Algebra& a, std::vector<Vec> basis, const Vec& sub_unit) {
    const FieldPtr& k = a.field;
    size_t n = a.dim, m = basis.size();
    if (m == 0) throw Error(ErrorKind::InvalidInput, "empty subalgebra basis");
    Mat cols(k, n, m);
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < n; ++i) cols.at(i, j) = basis[j][i];
    Mat rhs(k, n, m * m + 1);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Vec p = a.mul(basis[i], basis[j]);
            for (size_t u = 0; u < n; ++u) rhs.at(u, i * m + j) = p[u];
        }
    for (size_t u = 0; u < n; ++u) rhs.at(u, m * m) = sub_unit[u];
    auto sol = cols.solve_multi(rhs);
    if (!sol) throw Error(ErrorKind::InvalidInput, "span is not multiplicatively closed");
    Subalgebra s;
    s.alg.field = k;
    s.alg.dim = m;
    s.alg.table = algdetail::empty_table(k, m);
    s.alg.unit = Vec(m, k->zero());
    for (size_t l = 0; l < m; ++l) s.alg.unit[l] = sol->at(l, m * m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < m; ++l) s.alg.table[i][j][l] = sol->at(l, i * m + j);
    s.embedding = std::move(basis);
    return s;
}

inline Subalgebra center(const Algebra& a) {
    const FieldPtr& k = a.field;
    size_t n = a.dim;
    Mat sys(k, n * n, n);
    for (size_t i = 0; i < n; ++i) {
        Mat d = a.lmat(a.basis(i)) - a.rmat(a.basis(i));
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) sys.at(i * n + r, c) = d.at(r, c);
    }
    auto ker = sys.kernel_basis();
    auto basis = reduced_span(k, ker, n);
    return subalgebra_from_basis(a, std::move(basis), a.unit);
}

// ---------------------------------------------------------------------------
// radical

namespace algdetail {

// Friedl-Ronyai divided p-trace: Tr(Z^{p^i}) / p^i mod p, Z an integer lift.
inline std::int64_t divided_ptrace(const Algebra& a, const Vec& z, std::int64_t p, int i) {
    size_t n = a.dim;
    Mat l = a.lmat(z);
    IntMat zl(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) zl.at(r, c) = l.at(r, c).residue();
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(i));
    mpz_class mod = pe * p; // the trace is only needed mod p^{i+1}
    auto reduce = [&](IntMat& m) {
        for (size_t r = 0; r < n; ++r)
            for (size_t cc = 0; cc < n; ++cc) m.at(r, cc) %= mod;
    };
    IntMat acc = IntMat::identity(n), base = zl;
    mpz_class e = pe;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) { acc = acc * base; reduce(acc); }
        e >>= 1;
        if (e > 0) { base = base * base; reduce(base); }
    }
    mpz_class tr = 0;
    for (size_t r = 0; r < n; ++r) tr += acc.at(r, r);
    tr %= mod;
    if (tr < 0) tr += mod;
    if (tr % pe != 0) throw Error(ErrorKind::Internal, "divided trace not integral");
    mpz_class res = (tr / pe) % p;
    if (res < 0) res += p;
    return res.get_si();
}

} // namespace algdetail

inline IdealBasis jacobson_radical(const Algebra& a, bool recheck = true) {
    const FieldPtr& k = a.field;
    size_t n = a.dim;
    std::int64_t p = k->characteristic();
    std::vector<Vec> rad;
    if (p == 0 || static_cast<size_t>(p) > n) {
        // trace-form kernel: x with Tr(L_x L_y) = 0 for all y
        Mat gram(k, n, n);
        std::vector<Mat> lm;
        lm.reserve(n);
        for (size_t i = 0; i < n; ++i) lm.push_back(a.lmat(a.basis(i)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                Scalar t = k->zero();
                for (size_t r = 0; r < n; ++r)
                    for (size_t c = 0; c < n; ++c) t += lm[i].at(r, c) * lm[j].at(c, r);
                gram.at(i, j) = t;
                gram.at(j, i) = t;
            }
        rad = reduced_span(k, gram.kernel_basis(), n);
    } else if (k->kind() == FieldKind::Prime) {
        // iterated divided p-traces over the prime field
        int l = 0;
        std::int64_t pl = 1;
        while (static_cast<size_t>(pl) < n) { pl *= p; ++l; }
        std::vector<Vec> cur;
        for (size_t i = 0; i < n; ++i) cur.push_back(a.basis(i));
        for (int i = 0; i <= l && !cur.empty(); ++i) {
            size_t m = cur.size();
            Mat sys(k, m, m);
            for (size_t yi = 0; yi < m; ++yi)
                for (size_t xi = 0; xi < m; ++xi)
                    sys.at(yi, xi) = k->from_int(algdetail::divided_ptrace(a, a.mul(cur[xi], cur[yi]), p, i));
            auto ker = sys.kernel_basis();
            std::vector<Vec> next;
            for (const Vec& co : ker) {
                Vec v(n, k->zero());
                for (size_t t = 0; t < m; ++t)
                    if (!co[t].is_zero())
                        for (size_t u = 0; u < n; ++u) v[u] += co[t] * cur[t][u];
                next.push_back(std::move(v));
            }
            cur = reduced_span(k, next, n);
        }
        rad = cur;
    } else {
        throw Error(ErrorKind::UnsupportedCharacteristic,
                    "radical computation needs char 0, char > dim, or a prime base field");
    }
    if (!rad.empty()) {
        if (!is_two_sided_ideal(a, rad)) throw Error(ErrorKind::Internal, "radical candidate is not an ideal");
        if (!ideal_is_nilpotent(a, rad)) throw Error(ErrorKind::Internal, "radical candidate is not nilpotent");
    }
    if (recheck && !rad.empty() && rad.size() < n) {
        Algebra q = alg_quotient(a, IdealBasis{rad});
        if (!jacobson_radical(q, false).basis.empty())
            throw Error(ErrorKind::Internal, "radical quotient still has a radical");
    }
    return IdealBasis{std::move(rad)};
}

// ---------------------------------------------------------------------------
// separability and central simplicity

struct SeparabilityWitness {
    bool separable = false;
    std::vector<std::vector<Scalar>> idempotent; // e = sum e[i][j] b_i (x) b_j, empty if not separable
};

inline SeparabilityWitness is_separable(const Algebra& a, size_t dim_cap = 32) {
    const FieldPtr& k = a.field;
    size_t n = a.dim;
    if (n > dim_cap) throw Error(ErrorKind::ResourceCap, "separability solve exceeds dimension cap");
    // unknowns e_{ij}; constraints: (b_t (x) 1) e = e (1 (x) b_t) for all t, m(e) = unit
    size_t cols = n * n;
    Mat sys(k, n * n * n + n, cols);
    Vec rhs(n * n * n + n, k->zero());
    for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) {
                size_t row = (t * n + u) * n + v;
                for (size_t i = 0; i < n; ++i)
                    if (!a.table[t][i][u].is_zero()) sys.at(row, i * n + v) += a.table[t][i][u];
                for (size_t j = 0; j < n; ++j)
                    if (!a.table[j][t][v].is_zero()) sys.at(row, u * n + j) -= a.table[j][t][v];
            }
    for (size_t l = 0; l < n; ++l) {
        size_t row = n * n * n + l;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!a.table[i][j][l].is_zero()) sys.at(row, i * n + j) = a.table[i][j][l];
        rhs[row] = a.unit[l];
    }
    auto sol = sys.solve(rhs);
    SeparabilityWitness w;
    if (!sol) return w;
    w.separable = true;
    w.idempotent.assign(n, std::vector<Scalar>(n, k->zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w.idempotent[i][j] = (*sol)[i * n + j];
    return w;
}

inline bool is_central_simple(const Algebra& a, size_t dim_cap = 32) {
    size_t n = a.dim;
    if (n > dim_cap) throw Error(ErrorKind::DimensionCap, "central-simplicity rank test exceeds cap");
    const FieldPtr& k = a.field;
    // map b_i (x) b_j -> (x -> b_i x b_j); bijective iff the n^2 x n^2 matrix has full rank
    Mat m(k, n * n, n * n);
    for (size_t i = 0; i < n; ++i) {
        Mat li = a.lmat(a.basis(i));
        for (size_t j = 0; j < n; ++j) {
            Mat ij = li * a.rmat(a.basis(j));
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) m.at(r * n + c, i * n + j) = ij.at(r, c);
        }
    }
    return m.rank() == n * n;
}

// ---------------------------------------------------------------------------
// Wedderburn decomposition

struct WedderburnComponent {
    size_t n = 0;            // matrix size; 0 when unresolved
    size_t e = 0;            // dim of the division part over its center; 0 when unresolved
    PolyVec center_minpoly;  // irreducible over the base field
    size_t center_degree = 0;
    size_t dim_over_center = 0; // = n^2 * e when resolved
    size_t component_dim = 0;   // over the base field
};

struct WedderburnReport {
    size_t radical_dim = 0;
    std::vector<WedderburnComponent> components;
    std::uint64_t seed = 0;
    bool all_resolved = true;
};

namespace algdetail {

// minimal polynomial of an element of the algebra
inline PolyVec element_minpoly(const Algebra& a, const Vec& v) { return a.lmat(v).min_poly(); }

// idempotent splitting e = g(v) with g = 1 mod f1, 0 mod f2 for a coprime
// factorization f1 * f2 of the minimal polynomial of v
inline std::optional<Vec> split_idempotent(const Algebra& a, const Vec& v, std::uint64_t seed) {
    const FieldPtr& k = a.field;
    PolyVec mp = element_minpoly(a, v);
    auto fac = poly_factor(k, mp, seed);
    if (fac.factors.size() < 2) return std::nullopt;
    PolyVec f1 = fac.factors[0].poly;
    for (int t = 1; t < fac.factors[0].multiplicity; ++t) f1 = polydetail::mul(f1, fac.factors[0].poly, k);
    PolyVec f2 = {k->one()};
    for (size_t s = 1; s < fac.factors.size(); ++s)
        for (int t = 0; t < fac.factors[s].multiplicity; ++t) f2 = polydetail::mul(f2, fac.factors[s].poly, k);
    // g = f2 * (f2^{-1} mod f1); then g = 1 mod f1, 0 mod f2
    PolyVec inv = polydetail::inverse_mod(polydetail::mod(f2, f1, k), f1, k);
    PolyVec g = polydetail::mod(polydetail::mul(f2, inv, k), mp, k);
    // evaluate g at v inside the algebra
    Vec e(a.dim, k->zero());
    Vec pw = a.unit;
    for (size_t d = 0; d < g.size(); ++d) {
        if (!g[d].is_zero())
            for (size_t u = 0; u < a.dim; ++u) e[u] += g[d] * pw[u];
        if (d + 1 < g.size()) pw = a.mul(pw, v);
    }
    if (a.mul(e, e) != e) throw Error(ErrorKind::Internal, "constructed element is not idempotent");
    bool zero = true, one = true;
    for (size_t u = 0; u < a.dim; ++u) {
        if (!e[u].is_zero()) zero = false;
        if (e[u] != a.unit[u]) one = false;
    }
    if (zero || one) return std::nullopt;
    return e;
}

inline size_t isqrt_exact(size_t v) {
    size_t r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v ? r : 0;
}

// corner algebra e A e with unit e
inline Algebra corner(const Algebra& a, const Vec& e) {
    std::vector<Vec> gen;
    for (size_t i = 0; i < a.dim; ++i) gen.push_back(a.mul(a.mul(e, a.basis(i)), e));
    auto basis = reduced_span(a.field, gen, a.dim);
    return subalgebra_from_basis(a, std::move(basis), e).alg;
}

// (n, e) for a semisimple algebra with center = base field Q; nullopt when the
// division part stays unresolved
inline std::optional<std::pair<size_t, size_t>> resolve_central_q(const Algebra& b, std::uint64_t seed) {
    const FieldPtr& k = b.field;
    size_t d = b.dim;
    if (d == 1) return std::make_pair<size_t, size_t>(1, 1);
    if (d == 4) {
        // quaternion recognition: trace-zero part V has dim 3 and x^2 = Q(x) * 1 on V;
        // diagonalize Q and read off the symbol (d1, d2)
        Mat tr(k, 1, b.dim);
        for (size_t i = 0; i < b.dim; ++i) tr.at(0, i) = b.ltrace(b.basis(i));
        auto v = tr.kernel_basis();
        if (v.size() != 3) throw Error(ErrorKind::Internal, "pure part of dim-4 component has wrong dimension");
        Mat gram(k, 3, 3);
        Scalar half = k->from_rational(mpq_class(1, 2));
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i; j < 3; ++j) {
                Vec s = b.mul(v[i], v[j]);
                Vec t = b.mul(v[j], v[i]);
                for (size_t u = 0; u < b.dim; ++u) s[u] = (s[u] + t[u]) * half;
                // s must be a scalar multiple of the unit
                Scalar c = k->zero();
                for (size_t u = 0; u < b.dim; ++u)
                    if (!b.unit[u].is_zero()) { c = s[u] / b.unit[u]; break; }
                for (size_t u = 0; u < b.dim; ++u)
                    if (s[u] != c * b.unit[u])
                        throw Error(ErrorKind::Internal, "pure products are not scalar");
                gram.at(i, j) = c;
                gram.at(j, i) = c;
            }
        auto [p, diag] = congruence_diagonalize(gram);
        if (diag[0].is_zero() || diag[1].is_zero() || diag[2].is_zero())
            throw Error(ErrorKind::Internal, "degenerate norm form on a dim-4 component");
        bool division = !quaternion_is_split_q(diag[0].rational(), diag[1].rational());
        if (division) return std::make_pair<size_t, size_t>(1, 4);
        return std::make_pair<size_t, size_t>(2, 1);
    }
    // look for a proper idempotent and recurse on the corner
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    auto attempt = [&](const Vec& cand) -> std::optional<std::pair<size_t, size_t>> {
        auto e = split_idempotent(b, cand, seed);
        if (!e) return std::nullopt;
        Algebra c = corner(b, *e);
        auto sub = resolve_central_q(c, seed + 1);
        if (!sub) return std::nullopt;
        auto [nj, ej] = *sub;
        // dim b = n^2 e, dim c = j^2 e with n = j * sqrt(dim b / dim c)
        if (c.dim == 0 || b.dim % c.dim != 0) return std::nullopt;
        size_t ratio = isqrt_exact(b.dim / c.dim);
        if (ratio == 0) return std::nullopt;
        return std::make_pair(nj * ratio, ej);
    };
    size_t trials = 0;
    for (size_t i = 0; i < b.dim && trials < 200; ++i, ++trials)
        if (auto r = attempt(b.basis(i))) return r;
    for (size_t i = 0; i < b.dim && trials < 200; ++i)
        for (size_t j = i + 1; j < b.dim && trials < 200; ++j, ++trials) {
            Vec s = b.basis(i);
            for (size_t u = 0; u < b.dim; ++u) s[u] += b.basis(j)[u];
            if (auto r = attempt(s)) return r;
        }
    while (trials < 200) {
        ++trials;
        Vec s(b.dim, k->zero());
        for (size_t u = 0; u < b.dim; ++u)
            s[u] = k->from_int(static_cast<long>(rng() % 7) - 3);
        if (auto r = attempt(s)) return r;
    }
    return std::nullopt;
}

struct CentralFactor {
    Vec idempotent;      // in the coordinates of the ambient semisimple algebra
    PolyVec minpoly;     // irreducible: the field structure of this center factor
};

// split a commutative semisimple algebra (given inside its parent via an
// embedding) into field factors
inline void split_commutative(const Algebra& parent, const Subalgebra& c, std::uint64_t seed,
                              std::vector<CentralFactor>& out) {
    const FieldPtr& k = c.alg.field;
    size_t m = c.alg.dim;
    auto embed = [&](const Vec& v) {
        Vec r(parent.dim, k->zero());
        for (size_t t = 0; t < m; ++t)
            if (!v[t].is_zero())
                for (size_t u = 0; u < parent.dim; ++u) r[u] += v[t] * c.embedding[t][u];
        return r;
    };
    // try basis elements for a splitting idempotent; complete for products of fields
    for (size_t i = 0; i < m; ++i) {
        auto e = split_idempotent(c.alg, c.alg.basis(i), seed);
        if (!e) continue;
        Vec e2(m, k->zero());
        for (size_t u = 0; u < m; ++u) e2[u] = c.alg.unit[u] - (*e)[u];
        for (const Vec& part : {*e, e2}) {
            std::vector<Vec> gen;
            for (size_t t = 0; t < m; ++t) gen.push_back(c.alg.mul(part, c.alg.basis(t)));
            auto basis = reduced_span(k, gen, m);
            Subalgebra sub = subalgebra_from_basis(c.alg, std::move(basis), part);
            // re-embed into the parent
            Subalgebra lifted;
            lifted.alg = sub.alg;
            for (const Vec& v : sub.embedding) lifted.embedding.push_back(embed(v));
            split_commutative(parent, lifted, seed, out);
        }
        return;
    }
    // no basis element splits: this factor is a field; find a primitive element
    auto try_primitive = [&](const Vec& v) -> bool {
        PolyVec mp = element_minpoly(c.alg, v);
        if (poly_degree(mp) != static_cast<int>(m)) return false;
        out.push_back(CentralFactor{embed(c.alg.unit), mp});
        // the minpoly of a primitive element of a field factor is irreducible
        return true;
    };
    for (size_t i = 0; i < m; ++i)
        if (try_primitive(c.alg.basis(i))) return;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            Vec s = c.alg.basis(i);
            for (size_t u = 0; u < m; ++u) s[u] += c.alg.basis(j)[u];
            if (try_primitive(s)) return;
        }
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
    for (int t = 0; t < 200; ++t) {
        Vec s(m, k->zero());
        for (size_t u = 0; u < m; ++u) s[u] = k->from_int(static_cast<long>(rng() % 11) - 5);
        if (try_primitive(s)) return;
    }
    throw Error(ErrorKind::Internal, "no primitive element found for a center factor");
}

} // namespace algdetail

inline WedderburnReport wedderburn(const Algebra& a, std::uint64_t seed = 1) {
    const FieldPtr& k = a.field;
    WedderburnReport rep;
    rep.seed = seed;
    IdealBasis j = jacobson_radical(a);
    rep.radical_dim = j.basis.size();
    Algebra s = j.basis.empty() ? a : alg_quotient(a, j);
    Subalgebra c = center(s);
    std::vector<algdetail::CentralFactor> factors;
    algdetail::split_commutative(s, c, seed, factors);
    // deterministic order: by component dimension, then center degree, then idempotent coords
    for (const auto& f : factors) {
        WedderburnComponent comp;
        comp.center_minpoly = f.minpoly;
        comp.center_degree = static_cast<size_t>(poly_degree(f.minpoly));
        Algebra b = factors.size() == 1 ? s : algdetail::corner(s, f.idempotent);
        comp.component_dim = b.dim;
        if (b.dim % comp.center_degree != 0)
            throw Error(ErrorKind::Internal, "component dim not divisible by center degree");
        comp.dim_over_center = b.dim / comp.center_degree;
        if (k->is_finite()) {
            comp.e = 1;
            comp.n = algdetail::isqrt_exact(comp.dim_over_center);
            if (comp.n == 0) throw Error(ErrorKind::Internal, "finite-field component dim is not a square");
        } else if (comp.dim_over_center == 1) {
            comp.n = 1;
            comp.e = 1;
        } else if (comp.center_degree == 1 && k->kind() == FieldKind::Rationals) {
            if (auto r = algdetail::resolve_central_q(b, seed)) {
                comp.n = r->first;
                comp.e = r->second;
            }
        }
        if (comp.n == 0) rep.all_resolved = false;
        rep.components.push_back(std::move(comp));
    }
    std::sort(rep.components.begin(), rep.components.end(),
              [](const WedderburnComponent& x, const WedderburnComponent& y) {
                  if (x.component_dim != y.component_dim) return x.component_dim < y.component_dim;
                  return x.center_degree < y.center_degree;
              });
    return rep;
}

// ---------------------------------------------------------------------------
// unit group counting

inline std::vector<Scalar> field_elements(const FieldPtr& k, size_t cap) {
    if (!k->is_finite()) throw Error(ErrorKind::InvalidInput, "cannot enumerate an infinite field");
    if (k->order() > cap) throw Error(ErrorKind::ResourceCap, "field too large to enumerate");
    std::vector<Scalar> out;
    if (k->kind() == FieldKind::Prime) {
        for (std::int64_t i = 0; i < k->p(); ++i) out.push_back(k->from_int(i));
        return out;
    }
    auto base = field_elements(k->base(), cap);
    int d = k->ext_degree();
    std::vector<size_t> digits(static_cast<size_t>(d), 0);
    for (;;) {
        std::vector<Scalar> coeffs;
        for (int i = 0; i < d; ++i) coeffs.push_back(base[digits[static_cast<size_t>(i)]]);
        out.push_back(k->from_coeffs(coeffs));
        int pos = 0;
        while (pos < d && ++digits[static_cast<size_t>(pos)] == base.size()) {
            digits[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == d) break;
    }
    return out;
}

inline mpz_class unit_group_order(const Algebra& a) {
    const FieldPtr& k = a.field;
    if (!k->is_finite()) throw Error(ErrorKind::InvalidInput, "unit group enumeration needs a finite field");
    mpz_class size;
    mpz_pow_ui(size.get_mpz_t(), k->order().get_mpz_t(), a.dim);
    if (size > 1048576) throw Error(ErrorKind::ResourceCap, "algebra too large to enumerate (over 2^20 elements)");
    auto elems = field_elements(k, 1048576);
    std::vector<size_t> digits(a.dim, 0);
    mpz_class count = 0;
    for (;;) {
        Vec v(a.dim, k->zero());
        for (size_t i = 0; i < a.dim; ++i) v[i] = elems[digits[i]];
        if (a.lmat(v).rank() == a.dim) ++count;
        size_t pos = 0;
        while (pos < a.dim && ++digits[pos] == elems.size()) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos == a.dim) break;
    }
    return count;
}

/// Refine the global-dimension flag of a tensor product once a separable factor
/// is known (kept separate so alg_tensor stays cheap).
inline void refine_tensor_fgd(Algebra& t, const Algebra& a, const Algebra& b) {
    if (a.fgd != GlDim::Yes || b.fgd != GlDim::Yes) return;
    for (const Algebra* f : {&a, &b})
        if (f->dim <= 12 && is_separable(*f).separable) {
            t.fgd = GlDim::Yes;
            return;
        }
}

} // namespace motivecalc
