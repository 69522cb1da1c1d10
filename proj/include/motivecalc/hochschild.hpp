#pragma once

// Hochschild homology dimensions via the normalized bar complex
// C_d = A (x) Abar^{(x)d}.  Small cases run exact elimination over the base
// field; large rational cases use a multi-modular rank mode (three primes must
// agree) with sparse mod-p elimination.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "motivecalc/algebra.hpp"

namespace motivecalc {

inline constexpr size_t kDefaultMaxCells = 20000;

inline size_t hh_max_cells() {
    if (const char* env = std::getenv("MOTIVECALC_MAX_CELLS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
        throw Error(ErrorKind::InvalidInput, "MOTIVECALC_MAX_CELLS must be a positive integer");
    }
    return kDefaultMaxCells;
}

struct HHDims {
    size_t max_degree = 0;
    std::vector<size_t> dims;       // [dim HH_0, ..., dim HH_max]
    std::vector<size_t> chain_dims; // [C_0, ..., C_{max+1}]
};

/// dim A - dim span{ab - ba}
inline size_t hh0_dim(const Algebra& a) {
    std::vector<Vec> comms;
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = i + 1; j < a.dim; ++j) {
            Vec c = a.mul(a.basis(i), a.basis(j));
            Vec d = a.mul(a.basis(j), a.basis(i));
            for (size_t u = 0; u < a.dim; ++u) c[u] -= d[u];
            comms.push_back(std::move(c));
        }
    return a.dim - reduced_span(a.field, comms, a.dim).size();
}

namespace hhdetail {

template <typename T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

// Rank by sparse elimination with a dense accumulator; rows are consumed.
inline size_t rank_rows_modp(size_t width, const std::vector<SparseRow<std::int64_t>>& rows, std::int64_t p) {
    std::vector<std::int32_t> pivot_of_col(width, -1);
    std::vector<SparseRow<std::int64_t>> pivots;
    std::vector<std::int64_t> acc(width, 0);
    std::vector<std::uint32_t> touched;
    auto inv_mod = [&](std::int64_t v) {
        std::int64_t r = 1, b = v % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (const auto& row : rows) {
        std::uint32_t start = width;
        for (const auto& [c, v] : row) {
            acc[c] = (acc[c] + v) % p;
            touched.push_back(c);
            if (c < start) start = c;
        }
        for (std::uint32_t col = start; col < width; ++col) {
            std::int64_t v = acc[col] % p;
            if (v < 0) v += p;
            if (v == 0) continue;
            std::int32_t pi = pivot_of_col[col];
            if (pi < 0) {
                // new pivot: collect the remaining support, normalized to lead 1
                std::int64_t inv = inv_mod(v);
                SparseRow<std::int64_t> pr;
                for (std::uint32_t c2 = col; c2 < width; ++c2) {
                    std::int64_t w = acc[c2] % p;
                    if (w < 0) w += p;
                    if (w) pr.push_back({c2, w * inv % p});
                }
                pivot_of_col[col] = static_cast<std::int32_t>(pivots.size());
                pivots.push_back(std::move(pr));
                break;
            }
            for (const auto& [c2, w] : pivots[static_cast<size_t>(pi)]) {
                acc[c2] = (acc[c2] - v * w) % p;
                touched.push_back(c2);
            }
        }
        for (std::uint32_t c : touched) acc[c] = 0;
        touched.clear();
    }
    return pivots.size();
}

inline size_t rank_rows_scalar(const FieldPtr& f, size_t width, const std::vector<SparseRow<Scalar>>& rows) {
    std::vector<std::int32_t> pivot_of_col(width, -1);
    std::vector<SparseRow<Scalar>> pivots;
    std::vector<Scalar> acc(width, f->zero());
    std::vector<std::uint32_t> touched;
    for (const auto& row : rows) {
        std::uint32_t start = width;
        for (const auto& [c, v] : row) {
            acc[c] += v;
            touched.push_back(c);
            if (c < start) start = c;
        }
        for (std::uint32_t col = start; col < width; ++col) {
            if (acc[col].is_zero()) continue;
            std::int32_t pi = pivot_of_col[col];
            if (pi < 0) {
                Scalar inv = acc[col].inverse();
                SparseRow<Scalar> pr;
                for (std::uint32_t c2 = col; c2 < width; ++c2)
                    if (!acc[c2].is_zero()) pr.push_back({c2, acc[c2] * inv});
                pivot_of_col[col] = static_cast<std::int32_t>(pivots.size());
                pivots.push_back(std::move(pr));
                break;
            }
            Scalar v = acc[col];
            for (const auto& [c2, w] : pivots[static_cast<size_t>(pi)]) {
                acc[c2] -= v * w;
                touched.push_back(c2);
            }
        }
        for (std::uint32_t c : touched) acc[c] = f->zero();
        touched.clear();
    }
    return pivots.size();
}

// Tuple indexing for C_d: (a0, j_1..j_d) with a0 in [0,n) and j in [0, n-1).
struct ChainIndex {
    size_t n, d;
    size_t dim() const {
        size_t r = n;
        for (size_t i = 0; i < d; ++i) r *= n - 1;
        return r;
    }
    size_t encode(size_t a0, const std::vector<size_t>& bars) const {
        size_t r = a0;
        for (size_t i = 0; i < d; ++i) r = r * (n - 1) + bars[i];
        return r;
    }
};

// The structure data the boundary needs, with products pre-projected to Abar.
template <typename T>
struct BarTables {
    size_t n, i0;                       // i0: coordinate spanning the unit line
    std::vector<std::vector<std::vector<T>>> prod;      // full products in A
    std::vector<std::vector<std::vector<T>>> prod_bar;  // products projected to Abar (length n-1)
    std::vector<size_t> bar_to_full;    // Abar slot -> original basis index
};

inline BarTables<Scalar> bar_tables_scalar(const Algebra& a) {
    BarTables<Scalar> t;
    t.n = a.dim;
    t.i0 = 0;
    while (t.i0 < a.dim && a.unit[t.i0].is_zero()) ++t.i0;
    for (size_t i = 0; i < a.dim; ++i)
        if (i != t.i0) t.bar_to_full.push_back(i);
    Scalar u0inv = a.unit[t.i0].inverse();
    t.prod.assign(a.dim, std::vector<std::vector<Scalar>>(a.dim));
    t.prod_bar.assign(a.dim, std::vector<std::vector<Scalar>>(a.dim));
    for (size_t i = 0; i < a.dim; ++i)
        for (size_t j = 0; j < a.dim; ++j) {
            const Vec& p = a.table[i][j];
            t.prod[i][j] = p;
            Scalar lead = p[t.i0] * u0inv;
            std::vector<Scalar> bar;
            for (size_t u = 0; u < a.dim; ++u)
                if (u != t.i0) bar.push_back(p[u] - lead * a.unit[u]);
            t.prod_bar[i][j] = std::move(bar);
        }
    return t;
}

inline BarTables<std::int64_t> bar_tables_modp(const BarTables<Scalar>& s, std::int64_t p) {
    auto to_res = [&](const Scalar& x) -> std::int64_t {
        if (x.field()->kind() == FieldKind::Prime) return x.residue() % p;
        const mpq_class& q = x.rational();
        mpz_class den = q.get_den() % p;
        if (den == 0) throw Error(ErrorKind::Internal, "prime divides a denominator");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
        mpz_class r = (q.get_num() % p) * inv % p;
        if (r < 0) r += p;
        return r.get_si();
    };
    BarTables<std::int64_t> t;
    t.n = s.n;
    t.i0 = s.i0;
    t.bar_to_full = s.bar_to_full;
    t.prod.assign(t.n, std::vector<std::vector<std::int64_t>>(t.n));
    t.prod_bar.assign(t.n, std::vector<std::vector<std::int64_t>>(t.n));
    for (size_t i = 0; i < t.n; ++i)
        for (size_t j = 0; j < t.n; ++j) {
            for (const Scalar& x : s.prod[i][j]) t.prod[i][j].push_back(to_res(x));
            for (const Scalar& x : s.prod_bar[i][j]) t.prod_bar[i][j].push_back(to_res(x));
        }
    return t;
}

template <typename T>
inline bool entry_is_zero(const T& v);
template <>
inline bool entry_is_zero(const std::int64_t& v) { return v == 0; }
template <>
inline bool entry_is_zero(const Scalar& v) { return v.is_zero(); }

// Column of b_d at the basis tensor (a0, bars): a sparse vector in C_{d-1}.
template <typename T>
inline SparseRow<T> boundary_column(const BarTables<T>& t, size_t d, size_t a0,
                                    const std::vector<size_t>& bars, const T& one, const T& neg_one) {
    size_t n = t.n;
    ChainIndex lower{n, d - 1};
    SparseRow<T> out;
    std::vector<size_t> rest(d - 1);
    T sign = one;
    // term 0: (a0 * a_1) (x) bars[1..]
    {
        for (size_t i = 1; i < d; ++i) rest[i - 1] = bars[i];
        const auto& p = t.prod[a0][t.bar_to_full[bars[0]]];
        for (size_t u = 0; u < n; ++u)
            if (!entry_is_zero(p[u])) out.push_back({static_cast<std::uint32_t>(lower.encode(u, rest)), p[u]});
    }
    // inner terms i = 1..d-1: a0 (x) ... (a_i a_{i+1})bar ..., slot i dropped
    for (size_t i = 1; i < d; ++i) {
        sign = (i % 2) ? neg_one : one;
        size_t ri = 0;
        for (size_t s = 0; s < d; ++s) {
            if (s == i) continue;
            rest[ri++] = bars[s];
        }
        const auto& pb = t.prod_bar[t.bar_to_full[bars[i - 1]]][t.bar_to_full[bars[i]]];
        for (size_t u = 0; u < pb.size(); ++u) {
            if (entry_is_zero(pb[u])) continue;
            rest[i - 1] = u;
            T c = sign * pb[u];
            out.push_back({static_cast<std::uint32_t>(lower.encode(a0, rest)), c});
        }
    }
    // wrap term: (-1)^d (a_d * a0) (x) bars[0..d-2]
    {
        sign = (d % 2) ? neg_one : one;
        for (size_t i = 0; i + 1 < d; ++i) rest[i] = bars[i];
        const auto& p = t.prod[t.bar_to_full[bars[d - 1]]][a0];
        for (size_t u = 0; u < n; ++u)
            if (!entry_is_zero(p[u])) {
                T c = sign * p[u];
                out.push_back({static_cast<std::uint32_t>(lower.encode(u, rest)), c});
            }
    }
    return out;
}

template <typename T>
inline std::vector<SparseRow<T>> assemble_boundary(const BarTables<T>& t, size_t d, const T& one, const T& neg_one) {
    size_t n = t.n;
    ChainIndex upper{n, d};
    std::vector<SparseRow<T>> cols;
    cols.reserve(upper.dim());
    std::vector<size_t> bars(d, 0);
    for (size_t a0 = 0; a0 < n; ++a0) {
        std::fill(bars.begin(), bars.end(), 0);
        for (;;) {
            cols.push_back(boundary_column(t, d, a0, bars, one, neg_one));
            size_t pos = d;
            while (pos > 0) {
                if (++bars[pos - 1] < n - 1) break;
                bars[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return cols;
}

// b(d) composed with b(d+1) must vanish on every basis column.
template <typename T, typename IsZero>
inline void assert_square_zero(size_t d, const std::vector<SparseRow<T>>& upper_cols,
                               const std::vector<SparseRow<T>>& lower_cols, size_t lower_dim, const T& zero,
                               IsZero is_zero) {
    std::vector<T> acc(lower_dim, zero);
    std::vector<std::uint32_t> touched;
    for (const auto& col : upper_cols) {
        for (const auto& [mid, c] : col)
            for (const auto& [low, w] : lower_cols[mid]) {
                acc[low] = acc[low] + c * w;
                touched.push_back(low);
            }
        for (std::uint32_t low : touched) {
            if (!is_zero(acc[low]))
                throw Error(ErrorKind::Internal, "bar boundary does not square to zero at degree " + std::to_string(d));
            acc[low] = zero;
        }
        touched.clear();
    }
}

} // namespace hhdetail

inline HHDims hh_dims(const Algebra& a, size_t max_degree, size_t max_cells = 0) {
    if (max_degree > 4) throw Error(ErrorKind::InvalidInput, "max_degree must be at most 4");
    if (max_cells == 0) max_cells = hh_max_cells();
    size_t n = a.dim;
    HHDims out;
    out.max_degree = max_degree;
    for (size_t d = 0; d <= max_degree + 1; ++d) out.chain_dims.push_back(hhdetail::ChainIndex{n, d}.dim());
    if (out.chain_dims.back() > max_cells)
        throw Error(ErrorKind::ResourceCap,
                    "top chain dimension " + std::to_string(out.chain_dims.back()) + " exceeds cell cap " +
                        std::to_string(max_cells) + " (raise MOTIVECALC_MAX_CELLS)");
    if (n == 1) {
        out.dims.assign(max_degree + 1, 0);
        out.dims[0] = 1;
        return out;
    }
    auto tables = hhdetail::bar_tables_scalar(a);
    const FieldPtr& k = a.field;
    bool big = out.chain_dims.back() > 4000;
    std::vector<size_t> ranks(max_degree + 2, 0); // ranks[d] = rank b_d, b_0 = 0
    if (!big) {
        std::vector<std::vector<hhdetail::SparseRow<Scalar>>> bds(max_degree + 2);
        for (size_t d = 1; d <= max_degree + 1; ++d) {
            bds[d] = hhdetail::assemble_boundary(tables, d, k->one(), -k->one());
            ranks[d] = hhdetail::rank_rows_scalar(k, out.chain_dims[d - 1], bds[d]);
        }
        for (size_t d = 1; d <= max_degree; ++d)
            hhdetail::assert_square_zero(d, bds[d + 1], bds[d], out.chain_dims[d - 1], k->zero(),
                                         [](const Scalar& v) { return v.is_zero(); });
    } else {
        if (k->kind() == FieldKind::Extension)
            throw Error(ErrorKind::ResourceCap, "large Hochschild instances need a rational or prime base field");
        std::vector<std::int64_t> primes;
        if (k->kind() == FieldKind::Prime)
            primes = {k->p()};
        else
            primes = {999983, 1000003, 1000033};
        std::vector<std::vector<size_t>> per_prime;
        for (std::int64_t p : primes) {
            auto tp = hhdetail::bar_tables_modp(tables, p);
            std::vector<size_t> r(max_degree + 2, 0);
            std::vector<std::vector<hhdetail::SparseRow<std::int64_t>>> bds(max_degree + 2);
            for (size_t d = 1; d <= max_degree + 1; ++d) {
                bds[d] = hhdetail::assemble_boundary(tp, d, static_cast<std::int64_t>(1),
                                                     static_cast<std::int64_t>(p - 1));
                for (auto& col : bds[d])
                    for (auto& [c, v] : col) v %= p;
                r[d] = hhdetail::rank_rows_modp(out.chain_dims[d - 1], bds[d], p);
            }
            for (size_t d = 1; d <= max_degree; ++d)
                hhdetail::assert_square_zero(d, bds[d + 1], bds[d], out.chain_dims[d - 1],
                                             static_cast<std::int64_t>(0),
                                             [p](const std::int64_t& v) { return v % p == 0; });
            per_prime.push_back(std::move(r));
        }
        ranks = per_prime[0];
        for (const auto& r : per_prime)
            if (r != ranks)
                throw Error(ErrorKind::ResourceCap,
                            "multi-modular ranks disagree; exact verification of this size is not supported");
    }
    for (size_t d = 0; d <= max_degree; ++d) {
        size_t nullity = out.chain_dims[d] - ranks[d];
        if (ranks[d + 1] > nullity)
            throw Error(ErrorKind::Internal, "negative homology dimension at degree " + std::to_string(d));
        out.dims.push_back(nullity - ranks[d + 1]);
    }
    return out;
}

} // namespace motivecalc
