#pragma once

// Polynomial factorization: Cantor-Zassenhaus over finite fields, and
// Zassenhaus (modular factorization + Hensel lifting + recombination) over Q.
// Degrees are capped at 64.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "motivecalc/field.hpp"

namespace motivecalc {

using PolyVec = std::vector<Scalar>; // coefficients, lowest degree first

struct PolyFactor {
    PolyVec poly; // monic
    int multiplicity = 1;
};

struct Factorization {
    Scalar unit;                    // leading/content unit: input = unit * prod(factors^mult)
    std::vector<PolyFactor> factors;
};

inline int poly_degree(const PolyVec& p) { return static_cast<int>(p.size()) - 1; }

inline PolyVec poly_derivative(const PolyVec& p, const FieldPtr& f) {
    PolyVec d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * f->from_int(static_cast<long>(i)));
    polydetail::strip(d);
    return d;
}

inline Scalar poly_eval(const PolyVec& p, const Scalar& x) {
    Scalar r = x.field()->zero();
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

namespace facdetail {

using polydetail::gcd;
using polydetail::mod;
using polydetail::monic;
using polydetail::mul;
using polydetail::powmod;
using polydetail::strip;
using polydetail::sub;

inline PolyVec divexact(const PolyVec& a, const PolyVec& b, const FieldPtr& f) {
    PolyVec q, r;
    polydetail::divmod(a, b, q, r, f);
    if (!r.empty()) throw Error(ErrorKind::Internal, "expected exact polynomial division");
    return q;
}

// ---- squarefree decomposition -------------------------------------------

inline std::vector<std::pair<PolyVec, int>> squarefree_decomp(PolyVec f, const FieldPtr& k) {
    std::vector<std::pair<PolyVec, int>> out;
    f = monic(std::move(f));
    std::int64_t p = k->characteristic();
    int mult_base = 1;
    for (;;) {
        if (poly_degree(f) <= 0) return out;
        PolyVec fp = poly_derivative(f, k);
        if (fp.empty()) {
            // f = g(x^p); take the p-th root and scale multiplicities by p
            if (p == 0) throw Error(ErrorKind::Internal, "zero derivative in characteristic 0");
            PolyVec g;
            mpz_class q = k->order();
            for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p))
                g.push_back(f[i].pow(q / p)); // p-th root via Frobenius inverse
            f = std::move(g);
            mult_base *= static_cast<int>(p);
            continue;
        }
        PolyVec c = gcd(f, fp, k);
        PolyVec w = divexact(f, c, k);
        int i = 1;
        while (poly_degree(w) > 0) {
            PolyVec y = gcd(w, c, k);
            PolyVec z = divexact(w, y, k);
            if (poly_degree(z) > 0) out.emplace_back(monic(z), i * mult_base);
            c = divexact(c, y, k);
            w = std::move(y);
            ++i;
        }
        if (poly_degree(c) <= 0) return out;
        f = std::move(c); // remaining part is a p-th power
        // loop again: its derivative is zero
    }
}

// ---- finite field factorization -----------------------------------------

inline PolyVec random_poly(const FieldPtr& k, int max_deg, std::mt19937_64& rng) {
    PolyVec r;
    std::int64_t p = k->characteristic();
    int ext = k->kind() == FieldKind::Extension ? k->ext_degree() : 1;
    for (int i = 0; i <= max_deg; ++i) {
        if (k->kind() == FieldKind::Extension) {
            std::vector<Scalar> c;
            for (int j = 0; j < ext; ++j)
                c.push_back(k->base()->from_int(static_cast<long>(rng() % static_cast<std::uint64_t>(p))));
            r.push_back(k->from_coeffs(std::move(c)));
        } else {
            r.push_back(k->from_int(static_cast<long>(rng() % static_cast<std::uint64_t>(p))));
        }
    }
    strip(r);
    return r;
}

// equal-degree splitting of a product of irreducibles all of degree d
inline void equal_degree(const PolyVec& f, int d, const FieldPtr& k, std::mt19937_64& rng,
                         std::vector<PolyVec>& out) {
    int n = poly_degree(f);
    if (n == d) { out.push_back(monic(f)); return; }
    mpz_class q = k->order();
    for (int attempt = 0; attempt < 256; ++attempt) {
        PolyVec r = random_poly(k, n - 1, rng);
        if (poly_degree(r) < 1) continue;
        PolyVec g = gcd(r, f, k);
        if (poly_degree(g) > 0 && poly_degree(g) < n) {
            equal_degree(g, d, k, rng, out);
            equal_degree(divexact(f, g, k), d, k, rng, out);
            return;
        }
        PolyVec s;
        if (k->characteristic() == 2) {
            // trace map sum r^{2^i}, i < d*m where q = 2^m
            unsigned long m = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
            PolyVec t = mod(r, f, k);
            s = t;
            for (unsigned long i = 1; i < static_cast<unsigned long>(d) * m; ++i) {
                t = mod(mul(t, t, k), f, k);
                s = polydetail::add(s, t);
            }
            s = mod(s, f, k);
        } else {
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            s = powmod(r, (qd - 1) / 2, f, k);
            s = sub(s, PolyVec{k->one()});
        }
        g = gcd(s, f, k);
        if (poly_degree(g) > 0 && poly_degree(g) < n) {
            equal_degree(g, d, k, rng, out);
            equal_degree(divexact(f, g, k), d, k, rng, out);
            return;
        }
    }
    throw Error(ErrorKind::Internal, "equal-degree splitting failed to converge");
}

// monic squarefree f over a finite field -> monic irreducible factors
inline std::vector<PolyVec> factor_squarefree_finite(PolyVec f, const FieldPtr& k,
                                                     std::mt19937_64& rng) {
    std::vector<PolyVec> out;
    mpz_class q = k->order();
    PolyVec x = {k->zero(), k->one()};
    PolyVec h = mod(x, f, k);
    int d = 0;
    while (poly_degree(f) > 0) {
        ++d;
        if (2 * d > poly_degree(f)) { out.push_back(monic(f)); break; }
        h = powmod(h, q, f, k);
        PolyVec g = gcd(sub(h, mod(x, f, k)), f, k);
        if (poly_degree(g) > 0) {
            equal_degree(g, d, k, rng, out);
            f = divexact(f, g, k);
            h = mod(h, f, k);
        }
    }
    return out;
}

// ---- integer polynomial helpers (for Zassenhaus over Q) ------------------

using ZPoly = std::vector<mpz_class>; // lowest degree first

inline void zstrip(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline ZPoly zmod_coeffs(ZPoly a, const mpz_class& m) {
    for (auto& c : a) { c %= m; if (c < 0) c += m; }
    zstrip(a);
    return a;
}

inline ZPoly zsym(ZPoly a, const mpz_class& m) { // symmetric representative
    for (auto& c : a) { c %= m; if (c < 0) c += m; if (2 * c > m) c -= m; }
    zstrip(a);
    return a;
}

// division by a monic polynomial with coefficients mod m
inline void zdivmod_monic(ZPoly a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
    q.clear();
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        mpz_class c = a.back() % m;
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= c * b[i];
            a[shift + i] %= m;
            if (a[shift + i] < 0) a[shift + i] += m;
        }
        a.pop_back();
        zstrip(a);
    }
    zstrip(q);
    r = zmod_coeffs(std::move(a), m);
}

// exact division in Z[x]; returns empty optional-style flag via bool
inline bool zdivide_exact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    q.clear();
    ZPoly r = a;
    zstrip(r);
    if (b.empty()) return false;
    if (r.size() < b.size()) { zstrip(r); return r.empty(); }
    q.assign(r.size() - b.size() + 1, 0);
    while (r.size() >= b.size()) {
        if (r.back() % b.back() != 0) return false;
        mpz_class c = r.back() / b.back();
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        if (r.back() != 0) return false;
        r.pop_back();
        zstrip(r);
        if (!r.empty() && r.size() >= b.size() + shift) return false;
    }
    return r.empty();
}

inline mpz_class zcontent(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Scalar poly over F_p <-> ZPoly
inline PolyVec zpoly_to_fp(const ZPoly& a, const FieldPtr& fp) {
    PolyVec r;
    for (const auto& c : a) r.push_back(fp->from_rational(mpq_class(c)));
    strip(r);
    return r;
}

inline ZPoly fp_to_zpoly(const PolyVec& a) {
    ZPoly r;
    for (const auto& c : a) r.push_back(mpz_class(c.residue()));
    zstrip(r);
    return r;
}

// Linear Hensel step: f = g*h mod p^k -> mod p^{k+1}. g, h monic; s*g + t*h = 1 mod p.
// All of f, g, h monic over Z. Updates g, h in place.
struct HenselPair {
    ZPoly g, h;   // current lifts, coefficients in [0, p^k)
    PolyVec s, t; // Bezout cofactors over F_p
};

inline void hensel_lift_once(const ZPoly& f, HenselPair& pr, const mpz_class& pk,
                             const mpz_class& p, const FieldPtr& fp) {
    mpz_class pk1 = pk * p;
    // e = (f - g*h)/p^k mod p
    ZPoly gh = zmul(pr.g, pr.h);
    ZPoly e;
    size_t n = std::max(f.size(), gh.size());
    e.resize(n, 0);
    for (size_t i = 0; i < n; ++i) {
        mpz_class d = (i < f.size() ? f[i] : mpz_class(0)) - (i < gh.size() ? gh[i] : mpz_class(0));
        d %= pk1;
        if (d % pk != 0) throw Error(ErrorKind::Internal, "Hensel invariant violated");
        e[i] = d / pk;
    }
    PolyVec ep = zpoly_to_fp(e, fp);
    // u = t*e mod g ; v = (e - u*h)/g over F_p
    PolyVec gp = zpoly_to_fp(pr.g, fp), hp = zpoly_to_fp(pr.h, fp);
    PolyVec u = mod(mul(pr.t, ep, fp), gp, fp);
    PolyVec v = divexact(sub(ep, mul(u, hp, fp)), gp, fp);
    auto add_scaled = [&](ZPoly& dst, const PolyVec& corr) {
        if (dst.size() < corr.size()) dst.resize(corr.size(), 0);
        for (size_t i = 0; i < corr.size(); ++i) {
            dst[i] += pk * corr[i].residue();
            dst[i] %= pk1;
            if (dst[i] < 0) dst[i] += pk1;
        }
    };
    for (auto& c : pr.g) { c %= pk1; if (c < 0) c += pk1; }
    for (auto& c : pr.h) { c %= pk1; if (c < 0) c += pk1; }
    add_scaled(pr.g, u);
    add_scaled(pr.h, v);
}

// Lift the factorization f = prod(factors) mod p (all monic, coprime) to mod p^K.
inline std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, std::vector<PolyVec> factors,
                                           const mpz_class& p, int K, const FieldPtr& fp) {
    if (factors.size() == 1) {
        mpz_class pK;
        mpz_pow_ui(pK.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(K));
        return {zmod_coeffs(f, pK)};
    }
    size_t half = factors.size() / 2;
    PolyVec gp = {fp->one()}, hp = {fp->one()};
    for (size_t i = 0; i < half; ++i) gp = mul(gp, factors[i], fp);
    for (size_t i = half; i < factors.size(); ++i) hp = mul(hp, factors[i], fp);
    // Bezout over F_p
    PolyVec s = polydetail::inverse_mod(gp, hp, fp);            // s*g = 1 mod h
    PolyVec t = divexact(sub(PolyVec{fp->one()}, mul(s, gp, fp)), hp, fp); // t = (1 - s*g)/h
    HenselPair pr;
    pr.g = fp_to_zpoly(gp);
    pr.h = fp_to_zpoly(hp);
    pr.s = s;
    pr.t = t;
    mpz_class pk = p;
    for (int k = 1; k < K; ++k) {
        hensel_lift_once(f, pr, pk, p, fp);
        pk *= p;
    }
    std::vector<PolyVec> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<PolyVec> right(factors.begin() + static_cast<long>(half), factors.end());
    auto lg = hensel_lift_tree(pr.g, std::move(left), p, K, fp);
    auto lh = hensel_lift_tree(pr.h, std::move(right), p, K, fp);
    lg.insert(lg.end(), lh.begin(), lh.end());
    return lg;
}

// Factor a monic squarefree integer polynomial into monic irreducible integer polynomials.
inline std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly& f, std::mt19937_64& rng) {
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};

    // choose a prime keeping f squarefree with as few modular factors as possible
    static const int candidate_primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,
                                           37,  41,  43,  47,  53,  59,  61,  67,  71,  73,
                                           79,  83,  89,  97,  101, 103, 107, 109, 113, 127};
    FieldPtr best_fp;
    std::vector<PolyVec> best_factors;
    mpz_class best_p = 0;
    int tried = 0;
    for (int p : candidate_primes) {
        FieldPtr fp = Field::prime(p);
        PolyVec fm = zpoly_to_fp(f, fp);
        if (poly_degree(fm) != n) continue; // cannot happen for monic f, kept for safety
        PolyVec d = poly_derivative(fm, fp);
        if (poly_degree(gcd(fm, d, fp)) != 0) continue; // not squarefree mod p
        auto facs = factor_squarefree_finite(fm, fp, rng);
        if (best_factors.empty() || facs.size() < best_factors.size()) {
            best_fp = fp;
            best_factors = std::move(facs);
            best_p = p;
        }
        if (++tried >= 4 || best_factors.size() == 1) break;
    }
    if (best_factors.empty())
        throw Error(ErrorKind::ResourceCap, "no suitable prime found for modular factorization");
    if (best_factors.size() == 1) return {f};

    // Landau-Mignotte style coefficient bound for monic factors of f
    mpz_class norm = 0;
    for (const auto& c : f) norm += c * c;
    mpz_class bound = 1;
    mpz_sqrt(bound.get_mpz_t(), norm.get_mpz_t());
    bound += 1;
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
    bound *= two_n;
    int K = 1;
    mpz_class pK = best_p;
    while (pK < 2 * bound + 1) { pK *= best_p; ++K; }

    std::sort(best_factors.begin(), best_factors.end(),
              [](const PolyVec& a, const PolyVec& b) { return a.size() < b.size(); });
    std::vector<ZPoly> lifted = hensel_lift_tree(zmod_coeffs(f, pK), best_factors, best_p, K, best_fp);

    // recombination
    std::vector<ZPoly> result;
    ZPoly rem = f; // remaining cofactor, monic
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
    long long work = 0;
    const long long work_cap = 2000000;

    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        ZPoly cand = {mpz_class(1)};
        for (int idx : subset) {
            cand = zmul(cand, lifted[static_cast<size_t>(idx)]);
            cand = zmod_coeffs(std::move(cand), pK);
        }
        cand = zsym(std::move(cand), pK);
        // quick test: constant term must divide rem(0)
        if (!rem.empty() && rem[0] != 0 && !cand.empty() && cand[0] != 0 && rem[0] % cand[0] != 0)
            return false;
        ZPoly q;
        if (!zdivide_exact(rem, cand, q)) return false;
        result.push_back(cand);
        rem = std::move(q);
        return true;
    };

    size_t card = 1;
    while (!alive.empty() && 2 * card <= alive.size()) {
        // iterate subsets of the alive list of size `card`
        std::vector<size_t> pos(card);
        for (size_t i = 0; i < card; ++i) pos[i] = i;
        bool restarted = false;
        for (;;) {
            if (++work > work_cap)
                throw Error(ErrorKind::ResourceCap, "factor recombination exceeded its work cap");
            std::vector<int> subset;
            for (size_t i = 0; i < card; ++i) subset.push_back(alive[pos[i]]);
            if (try_subset(subset)) {
                std::vector<int> next;
                for (int idx : alive)
                    if (std::find(subset.begin(), subset.end(), idx) == subset.end())
                        next.push_back(idx);
                alive = std::move(next);
                restarted = true;
                break;
            }
            // advance combination
            size_t i = card;
            while (i-- > 0) {
                if (pos[i] + (card - i) < alive.size()) {
                    ++pos[i];
                    for (size_t j = i + 1; j < card; ++j) pos[j] = pos[j - 1] + 1;
                    break;
                }
                if (i == 0) { i = card + 1; break; }
            }
            if (i == card + 1) break; // exhausted this cardinality
        }
        if (!restarted) ++card;
    }
    zstrip(rem);
    if (!(rem.size() == 1 && rem[0] == 1)) result.push_back(rem); // leftover is irreducible
    return result;
}

// ---- factorization over Q ------------------------------------------------

inline ZPoly rational_to_monic_z(const PolyVec& f, mpz_class& lc_out) {
    // clear denominators, then substitute x -> x/lc and scale to stay monic/integer
    mpz_class den = 1;
    for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den().get_mpz_t());
    ZPoly zf;
    for (const auto& c : f) {
        mpq_class v = c.rational() * den;
        zf.push_back(mpz_class(v.get_num()));
    }
    mpz_class lc = zf.back();
    lc_out = lc;
    if (lc == 1) return zf;
    // g(x) = lc^{n-1} f(x/lc): coefficient i scales by lc^{n-1-i}
    int n = static_cast<int>(zf.size()) - 1;
    ZPoly g(zf.size());
    for (int i = 0; i <= n; ++i) {
        mpz_class s;
        mpz_pow_ui(s.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(n - 1 - i >= 0 ? n - 1 - i : 0));
        g[static_cast<size_t>(i)] = zf[static_cast<size_t>(i)] * s;
    }
    // g is monic: leading coeff lc * lc^{-1}... by construction g_n = lc^{... }
    g[static_cast<size_t>(n)] = 1;
    return g;
}

inline PolyVec monic_z_to_rational(const ZPoly& g, const mpz_class& lc, const FieldPtr& q) {
    // invert the substitution: factor h(x) of g corresponds to monic h(lc*x)/lc^{deg h} of f
    int d = static_cast<int>(g.size()) - 1;
    PolyVec r;
    for (int i = 0; i <= d; ++i) {
        mpz_class s;
        mpz_pow_ui(s.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(d - i));
        r.push_back(q->from_rational(mpq_class(g[static_cast<size_t>(i)], s)));
    }
    polydetail::strip(r);
    return r;
}

} // namespace facdetail

/// Factor a polynomial into monic irreducible factors over Q or a finite field.
/// input = unit * prod(factor_i ^ mult_i). Degree cap 64.
inline Factorization poly_factor(const FieldPtr& k, PolyVec poly, std::uint64_t seed = 0x5eed) {
    polydetail::strip(poly);
    if (poly.empty()) throw Error(ErrorKind::InvalidInput, "cannot factor the zero polynomial");
    if (poly_degree(poly) > 64) throw Error(ErrorKind::ResourceCap, "factorization degree cap is 64");
    if (k->kind() == FieldKind::Extension && !k->is_finite())
        throw Error(ErrorKind::UnsupportedField, "factorization over infinite extensions unsupported");
    Factorization out;
    out.unit = poly.back();
    PolyVec f = polydetail::monic(poly);
    if (poly_degree(f) == 0) return out;

    std::mt19937_64 rng(seed);
    if (k->is_finite()) {
        for (auto& [part, mult] : facdetail::squarefree_decomp(f, k)) {
            for (auto& irr : facdetail::factor_squarefree_finite(part, k, rng))
                out.factors.push_back({std::move(irr), mult});
        }
    } else {
        for (auto& [part, mult] : facdetail::squarefree_decomp(f, k)) {
            mpz_class lc;
            facdetail::ZPoly zf = facdetail::rational_to_monic_z(part, lc);
            mpz_class cont = facdetail::zcontent(zf);
            // keep monic: content of a monic poly is 1, but be safe
            for (auto& irr : facdetail::factor_monic_squarefree_z(zf, rng)) {
                PolyVec back = facdetail::monic_z_to_rational(irr, lc, k);
                out.factors.push_back({polydetail::monic(back), mult});
            }
            (void)cont;
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
        return a.poly.size() < b.poly.size();
    });
    return out;
}

inline bool poly_irreducible(const FieldPtr& k, const PolyVec& poly, std::uint64_t seed = 0x5eed) {
    PolyVec p = poly;
    polydetail::strip(p);
    if (poly_degree(p) < 1) return false;
    if (poly_degree(p) == 1) return true;
    auto fac = poly_factor(k, p, seed);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

/// Build k[x]/(f) with a full irreducibility check (including over Q).
inline FieldPtr make_extension(const FieldPtr& base, const std::vector<Scalar>& minpoly) {
    if (!base->is_finite() && !poly_irreducible(base, minpoly))
        throw Error(ErrorKind::InvalidInput, "extension minpoly is reducible over Q");
    return Field::extension(base, minpoly);
}

} // namespace motivecalc
