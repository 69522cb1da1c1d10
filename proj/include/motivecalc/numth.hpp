#pragma once

// Integer factorization at desk scale, Legendre/Hilbert symbols over Q, and
// square-class canonicalization. Used by quaternion recognition and by the
// signed-determinant reports.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "motivecalc/field.hpp"

namespace motivecalc {

inline std::map<mpz_class, int> factor_integer(mpz_class n) {
    if (n < 0) n = -n;
    std::map<mpz_class, int> out;
    if (n <= 1) return out;
    for (std::int64_t d : {2, 3, 5, 7, 11, 13}) {
        while (n % d == 0) { ++out[d]; n /= d; }
    }
    std::int64_t d = 17;
    while (n > 1 && d * d <= n && d < 1000000) {
        while (n % d == 0) { ++out[d]; n /= d; }
        d += 2;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30)) { ++out[n]; return out; }
        // Pollard rho for the rare large composite
        std::vector<mpz_class> stack = {n};
        gmp_randclass rnd(gmp_randinit_default);
        rnd.seed(0x5eedul);
        while (!stack.empty()) {
            mpz_class m = stack.back();
            stack.pop_back();
            if (m == 1) continue;
            if (mpz_probab_prime_p(m.get_mpz_t(), 30)) { ++out[m]; continue; }
            mpz_class f = m;
            while (f == m || f == 1) {
                mpz_class x = rnd.get_z_range(m - 2) + 2, y = x, c = rnd.get_z_range(m - 1) + 1;
                f = 1;
                while (f == 1) {
                    x = (x * x + c) % m;
                    y = (y * y + c) % m;
                    y = (y * y + c) % m;
                    mpz_class diff = x - y;
                    if (diff < 0) diff = -diff;
                    if (diff == 0) { f = m; break; }
                    mpz_gcd(f.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
                }
            }
            stack.push_back(f);
            stack.push_back(m / f);
        }
    }
    return out;
}

/// Squarefree part (with sign) of a nonzero rational: the canonical square-class
/// representative in Q* / (Q*)^2 as an integer.
inline mpz_class square_class_rep_q(const mpq_class& q) {
    if (q == 0) throw Error(ErrorKind::InvalidInput, "square class of zero");
    mpz_class n = q.get_num() * q.get_den(); // same class as num/den
    int sign = n < 0 ? -1 : 1;
    auto f = factor_integer(n);
    mpz_class r = sign;
    for (auto& [p, e] : f)
        if (e % 2) r *= p;
    return r;
}

inline int legendre(const mpz_class& a, const mpz_class& p) {
    mpz_class b = a % p;
    if (b < 0) b += p;
    if (b == 0) return 0;
    int r = mpz_legendre(b.get_mpz_t(), p.get_mpz_t());
    return r;
}

namespace numdetail {

// write q = p^v * u with u a p-adic unit; returns v and sets u
inline int padic_split(const mpq_class& q, const mpz_class& p, mpq_class& u) {
    mpz_class num = q.get_num(), den = q.get_den();
    int v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    u = mpq_class(num, den);
    u.canonicalize();
    return v;
}

inline int eps_mod2(const mpz_class& u) { // (u-1)/2 mod 2, u odd
    mpz_class t = ((u - 1) / 2) % 2;
    if (t < 0) t += 2;
    return static_cast<int>(t.get_si());
}

inline int omega_mod2(const mpz_class& u) { // (u^2-1)/8 mod 2, u odd
    mpz_class t = ((u * u - 1) / 8) % 2;
    if (t < 0) t += 2;
    return static_cast<int>(t.get_si());
}

// odd integer representative of a p-adic unit u mod p^3 (enough for the 2-adic symbols)
inline mpz_class unit_rep(const mpq_class& u, const mpz_class& pk) {
    mpz_class num = u.get_num() % pk, den = u.get_den() % pk;
    if (num < 0) num += pk;
    if (den < 0) den += pk;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw Error(ErrorKind::Internal, "unit_rep: denominator not a unit");
    return (num * inv) % pk;
}

} // namespace numdetail

/// Hilbert symbol (a,b)_v over Q_v; place = 0 means the real place, otherwise a prime.
inline int hilbert_symbol(const mpq_class& a, const mpq_class& b, const mpz_class& place) {
    if (a == 0 || b == 0) throw Error(ErrorKind::InvalidInput, "Hilbert symbol needs nonzero arguments");
    if (place == 0) return (a < 0 && b < 0) ? -1 : 1;
    const mpz_class& p = place;
    mpq_class u, w;
    int alpha = numdetail::padic_split(a, p, u);
    int beta = numdetail::padic_split(b, p, w);
    if (p == 2) {
        mpz_class ur = numdetail::unit_rep(u, mpz_class(8));
        mpz_class wr = numdetail::unit_rep(w, mpz_class(8));
        int e = numdetail::eps_mod2(ur) * numdetail::eps_mod2(wr) +
                alpha * numdetail::omega_mod2(wr) + beta * numdetail::omega_mod2(ur);
        return e % 2 ? -1 : 1;
    }
    // odd p: (-1)^{alpha*beta*eps(p)} (u|p)^beta (w|p)^alpha
    int e = (alpha % 2) * (beta % 2) * numdetail::eps_mod2(p);
    int s = e % 2 ? -1 : 1;
    if (beta % 2) {
        mpz_class ur = numdetail::unit_rep(u, p);
        s *= legendre(ur, p);
    }
    if (alpha % 2) {
        mpz_class wr = numdetail::unit_rep(w, p);
        s *= legendre(wr, p);
    }
    return s;
}

/// Is the quaternion algebra (a,b)_Q split (isomorphic to M_2(Q))?
/// Checks the Hilbert symbol at the real place, at 2, and at every odd prime
/// dividing the squarefree parts of a and b.
inline bool quaternion_is_split_q(const mpq_class& a, const mpq_class& b) {
    if (hilbert_symbol(a, b, 0) == -1) return false;
    if (hilbert_symbol(a, b, 2) == -1) return false;
    auto collect = [](const mpq_class& x, std::map<mpz_class, int>& into) {
        mpz_class n = x.get_num() * x.get_den();
        for (auto& [p, e] : factor_integer(n))
            if (p != 2) into[p] += e;
    };
    std::map<mpz_class, int> primes;
    collect(a, primes);
    collect(b, primes);
    for (auto& [p, e] : primes)
        if (hilbert_symbol(a, b, p) == -1) return false;
    return true;
}

/// Least quadratic nonresidue mod p (p odd prime).
inline std::int64_t least_nonresidue(std::int64_t p) {
    for (std::int64_t a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw Error(ErrorKind::Internal, "no nonresidue found");
}

/// Canonical square-class representative of a nonzero scalar.
/// Over Q: signed squarefree integer. Over F_p: 1 or the least nonresidue.
/// Over other fields: 1 if square, else the element itself.
inline Scalar square_class_rep(const Scalar& a) {
    if (a.is_zero()) throw Error(ErrorKind::InvalidInput, "square class of zero");
    const FieldPtr& f = a.field();
    switch (f->kind()) {
        case FieldKind::Rationals:
            return f->from_rational(mpq_class(square_class_rep_q(a.rational())));
        case FieldKind::Prime:
            if (f->p() == 2) return f->one();
            return is_square(a) ? f->one() : f->from_int(least_nonresidue(f->p()));
        case FieldKind::Extension:
            return is_square(a) ? f->one() : a;
    }
    return a;
}

} // namespace motivecalc
