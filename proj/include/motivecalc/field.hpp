#pragma once

// Exact base fields: Q, F_p (p prime, p < 2^31), and one simple extension layer
// k[x]/(f) over Q or F_p. All arithmetic is arbitrary precision / exact.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "motivecalc/error.hpp"

namespace motivecalc {

enum class FieldKind { Rationals, Prime, Extension };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Scalar {
public:
    Scalar() = default;

    const FieldPtr& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;
    Scalar pow(const mpz_class& e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Rational value (field must be Q).
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    // Residue in [0, p) (field must be F_p).
    std::int64_t residue() const { return std::get<std::int64_t>(v_); }
    // Coefficient vector over the base (field must be an extension); length = deg(minpoly).
    const std::vector<Scalar>& coeffs() const { return std::get<std::vector<Scalar>>(v_); }

    std::string str() const;

private:
    friend class Field;
    FieldPtr field_;
    std::variant<mpq_class, std::int64_t, std::vector<Scalar>> v_;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr rationals();
    static FieldPtr prime(std::int64_t p);
    // minpoly is monic of degree >= 2 with coefficients over base; irreducibility is
    // verified here for finite base fields (Rabin test). Over Q the caller is expected
    // to pass an irreducible polynomial; make_extension() in poly.hpp verifies it.
    static FieldPtr extension(FieldPtr base, std::vector<Scalar> minpoly);

    FieldKind kind() const { return kind_; }
    std::int64_t p() const { return p_; }
    const FieldPtr& base() const { return base_; }
    const std::vector<Scalar>& minpoly() const { return minpoly_; }
    int ext_degree() const { return static_cast<int>(minpoly_.size()) - 1; }

    std::int64_t characteristic() const {
        if (kind_ == FieldKind::Rationals) return 0;
        if (kind_ == FieldKind::Prime) return p_;
        return base_->characteristic();
    }

    bool is_finite() const { return characteristic() != 0; }

    // Number of elements; only valid for finite fields (throws otherwise).
    mpz_class order() const {
        if (!is_finite()) throw Error(ErrorKind::UnsupportedField, "field is infinite");
        if (kind_ == FieldKind::Prime) return mpz_class(p_);
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), mpz_class(base_->p()).get_mpz_t(),
                   static_cast<unsigned long>(ext_degree()));
        return q;
    }

    bool same(const Field& o) const;
    bool same(const FieldPtr& o) const { return same(*o); }

    Scalar zero() const { return from_int(0); }
    Scalar one() const { return from_int(1); }
    Scalar from_int(long n) const { return from_rational(mpq_class(n)); }
    Scalar from_rational(const mpq_class& q) const;
    // Element from a coefficient vector over the base (Extension fields only).
    Scalar from_coeffs(std::vector<Scalar> c) const;
    // The generator x of k[x]/(f) (Extension fields only).
    Scalar generator() const;

    std::string str() const;

private:
    Field() = default;
    FieldKind kind_ = FieldKind::Rationals;
    std::int64_t p_ = 0;
    FieldPtr base_;
    std::vector<Scalar> minpoly_;
};

// ---------------------------------------------------------------------------
// Small dense polynomial arithmetic over Scalar, used for extension-field
// element arithmetic and the finite-field irreducibility test. Polynomials are
// coefficient vectors, lowest degree first, with no trailing zeros.

namespace polydetail {

inline void strip(std::vector<Scalar>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::vector<Scalar> add(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> r = a.size() >= b.size() ? a : b;
    const std::vector<Scalar>& s = a.size() >= b.size() ? b : a;
    for (size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    strip(r);
    return r;
}

inline std::vector<Scalar> sub(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> r = a;
    if (r.size() < b.size()) r.resize(b.size(), b[0].field()->zero());
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    strip(r);
    return r;
}

inline std::vector<Scalar> mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                               const FieldPtr& f) {
    if (a.empty() || b.empty()) return {};
    std::vector<Scalar> r(a.size() + b.size() - 1, f->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    strip(r);
    return r;
}

inline std::vector<Scalar> scale(const std::vector<Scalar>& a, const Scalar& c) {
    std::vector<Scalar> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    strip(r);
    return r;
}

// Division with remainder; divisor need not be monic but must be nonzero.
inline void divmod(std::vector<Scalar> a, const std::vector<Scalar>& b,
                   std::vector<Scalar>& q, std::vector<Scalar>& r, const FieldPtr& f) {
    if (b.empty()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    q.clear();
    Scalar lead_inv = b.back().inverse();
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, f->zero());
    while (a.size() >= b.size()) {
        Scalar c = a.back() * lead_inv;
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        strip(a);
        if (a.size() > shift + b.size() - 1) // no progress guard
            throw Error(ErrorKind::Internal, "polynomial division failed to reduce degree");
    }
    strip(q);
    r = std::move(a);
}

inline std::vector<Scalar> mod(std::vector<Scalar> a, const std::vector<Scalar>& b,
                               const FieldPtr& f) {
    std::vector<Scalar> q, r;
    divmod(std::move(a), b, q, r, f);
    return r;
}

inline std::vector<Scalar> monic(std::vector<Scalar> a) {
    if (a.empty() || a.back().is_one()) return a;
    return scale(a, a.back().inverse());
}

inline std::vector<Scalar> gcd(std::vector<Scalar> a, std::vector<Scalar> b, const FieldPtr& f) {
    while (!b.empty()) {
        auto r = mod(std::move(a), b, f);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

// g = gcd(a,b) together with s such that s*a = g (mod b). Used for inverses mod b.
inline std::vector<Scalar> inverse_mod(const std::vector<Scalar>& a, const std::vector<Scalar>& m,
                                       const FieldPtr& f) {
    std::vector<Scalar> r0 = m, r1 = mod(a, m, f);
    std::vector<Scalar> s0 = {}, s1 = {f->one()};
    while (!r1.empty()) {
        std::vector<Scalar> q, r2;
        divmod(r0, r1, q, r2, f);
        auto s2 = sub(s0, mul(q, s1, f));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw Error(ErrorKind::InvalidInput, "element not invertible modulo the given polynomial");
    return mod(scale(s0, r0[0].inverse()), m, f);
}

inline std::vector<Scalar> powmod(std::vector<Scalar> base, mpz_class e,
                                  const std::vector<Scalar>& m, const FieldPtr& f) {
    std::vector<Scalar> r = {f->one()};
    base = mod(std::move(base), m, f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base, f), m, f);
        e >>= 1;
        if (e > 0) base = mod(mul(base, base, f), m, f);
    }
    return r;
}

} // namespace polydetail

// ---------------------------------------------------------------------------
// Field implementation

namespace detail {

inline bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % d == 0) return n == d;
    }
    // deterministic Miller-Rabin for 64-bit range
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>((__uint128_t)a * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == (std::uint64_t)n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == (std::uint64_t)n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Rabin irreducibility test over a finite field.
inline bool irreducible_over_finite(const FieldPtr& base, const std::vector<Scalar>& f) {
    int d = static_cast<int>(f.size()) - 1;
    mpz_class q = base->order();
    // x^{q^d} == x mod f
    std::vector<Scalar> x = {base->zero(), base->one()};
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
    auto xqd = polydetail::powmod(x, qd, f, base);
    if (polydetail::sub(xqd, x).size() != 0) return false;
    // gcd(x^{q^{d/l}} - x, f) == 1 for every prime l | d
    for (int l = 2; l <= d; ++l) {
        if (d % l != 0 || !is_prime_i64(l)) continue;
        mpz_class qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d / l));
        auto xe = polydetail::powmod(x, qe, f, base);
        auto g = polydetail::gcd(polydetail::sub(xe, x), f, base);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace detail

inline FieldPtr Field::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = FieldKind::Rationals;
        return FieldPtr(f);
    }();
    return q;
}

inline FieldPtr Field::prime(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t(1) << 31) || !detail::is_prime_i64(p))
        throw Error(ErrorKind::InvalidInput, "F_p requires a prime p < 2^31");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Prime;
    f->p_ = p;
    return f;
}

inline FieldPtr Field::extension(FieldPtr base, std::vector<Scalar> minpoly) {
    if (!base) throw Error(ErrorKind::InvalidInput, "extension needs a base field");
    if (base->kind() == FieldKind::Extension)
        throw Error(ErrorKind::UnsupportedField, "only one simple extension layer is supported");
    polydetail::strip(minpoly);
    if (minpoly.size() < 3)
        throw Error(ErrorKind::InvalidInput, "extension minpoly must have degree >= 2");
    if (!minpoly.back().is_one())
        throw Error(ErrorKind::InvalidInput, "extension minpoly must be monic");
    for (const auto& c : minpoly)
        if (!c.field()->same(*base))
            throw Error(ErrorKind::FieldMismatch, "minpoly coefficients must lie in the base field");
    if (base->is_finite() && !detail::irreducible_over_finite(base, minpoly))
        throw Error(ErrorKind::InvalidInput, "extension minpoly is reducible over its base");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Extension;
    f->base_ = std::move(base);
    f->minpoly_ = std::move(minpoly);
    return f;
}

inline bool Field::same(const Field& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case FieldKind::Rationals: return true;
        case FieldKind::Prime: return p_ == o.p_;
        case FieldKind::Extension: {
            if (!base_->same(*o.base_)) return false;
            if (minpoly_.size() != o.minpoly_.size()) return false;
            for (size_t i = 0; i < minpoly_.size(); ++i)
                if (minpoly_[i] != o.minpoly_[i]) return false;
            return true;
        }
    }
    return false;
}

inline Scalar Field::from_rational(const mpq_class& q) const {
    Scalar s;
    s.field_ = shared_from_this();
    switch (kind_) {
        case FieldKind::Rationals: {
            mpq_class v = q;
            v.canonicalize();
            s.v_ = std::move(v);
            break;
        }
        case FieldKind::Prime: {
            mpz_class num = q.get_num() % p_;
            mpz_class den = q.get_den() % p_;
            if (den == 0) throw Error(ErrorKind::InvalidInput, "denominator divisible by p");
            std::int64_t n = num.get_si();
            std::int64_t d = den.get_si();
            if (n < 0) n += p_;
            if (d < 0) d += p_;
            // d^{-1} mod p
            std::int64_t inv = 1, b = d, e = p_ - 2;
            while (e) {
                if (e & 1) inv = static_cast<std::int64_t>((__int128)inv * b % p_);
                b = static_cast<std::int64_t>((__int128)b * b % p_);
                e >>= 1;
            }
            s.v_ = static_cast<std::int64_t>((__int128)n * inv % p_);
            break;
        }
        case FieldKind::Extension: {
            std::vector<Scalar> c(static_cast<size_t>(ext_degree()), base_->zero());
            c[0] = base_->from_rational(q);
            s.v_ = std::move(c);
            break;
        }
    }
    return s;
}

inline Scalar Field::from_coeffs(std::vector<Scalar> c) const {
    if (kind_ != FieldKind::Extension)
        throw Error(ErrorKind::InvalidInput, "from_coeffs requires an extension field");
    c.resize(static_cast<size_t>(ext_degree()), base_->zero());
    for (auto& x : c)
        if (!x.field()->same(*base_))
            throw Error(ErrorKind::FieldMismatch, "coefficients must lie in the base field");
    Scalar s;
    s.field_ = shared_from_this();
    s.v_ = std::move(c);
    return s;
}

inline Scalar Field::generator() const {
    if (kind_ != FieldKind::Extension)
        throw Error(ErrorKind::InvalidInput, "generator requires an extension field");
    std::vector<Scalar> c(static_cast<size_t>(ext_degree()), base_->zero());
    c[1] = base_->one();
    return from_coeffs(std::move(c));
}

inline std::string Field::str() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "F" + std::to_string(p_);
        case FieldKind::Extension: {
            std::string s = base_->str() + "[t]/(";
            for (size_t i = minpoly_.size(); i-- > 0;) {
                s += minpoly_[i].str();
                if (i > 0) s += "*t^" + std::to_string(i) + " + ";
            }
            return s + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scalar implementation

inline bool Scalar::is_zero() const {
    switch (field_->kind()) {
        case FieldKind::Rationals: return rational() == 0;
        case FieldKind::Prime: return residue() == 0;
        case FieldKind::Extension:
            for (const auto& c : coeffs())
                if (!c.is_zero()) return false;
            return true;
    }
    return false;
}

inline bool Scalar::is_one() const { return *this == field_->one(); }

inline bool Scalar::operator==(const Scalar& o) const {
    if (!field_->same(*o.field_)) return false;
    return v_ == o.v_;
}

inline Scalar Scalar::operator-() const {
    Scalar r;
    r.field_ = field_;
    switch (field_->kind()) {
        case FieldKind::Rationals: r.v_ = mpq_class(-rational()); break;
        case FieldKind::Prime: r.v_ = residue() == 0 ? 0 : field_->p() - residue(); break;
        case FieldKind::Extension: {
            std::vector<Scalar> c;
            c.reserve(coeffs().size());
            for (const auto& x : coeffs()) c.push_back(-x);
            r.v_ = std::move(c);
            break;
        }
    }
    return r;
}

inline Scalar Scalar::operator+(const Scalar& o) const {
    if (!field_->same(*o.field_)) throw Error(ErrorKind::FieldMismatch, "scalar field mismatch");
    Scalar r;
    r.field_ = field_;
    switch (field_->kind()) {
        case FieldKind::Rationals: r.v_ = mpq_class(rational() + o.rational()); break;
        case FieldKind::Prime: {
            std::int64_t s = residue() + o.residue();
            if (s >= field_->p()) s -= field_->p();
            r.v_ = s;
            break;
        }
        case FieldKind::Extension: {
            std::vector<Scalar> c = coeffs();
            for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs()[i];
            r.v_ = std::move(c);
            break;
        }
    }
    return r;
}

inline Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

inline Scalar Scalar::operator*(const Scalar& o) const {
    if (!field_->same(*o.field_)) throw Error(ErrorKind::FieldMismatch, "scalar field mismatch");
    Scalar r;
    r.field_ = field_;
    switch (field_->kind()) {
        case FieldKind::Rationals: r.v_ = mpq_class(rational() * o.rational()); break;
        case FieldKind::Prime:
            r.v_ = static_cast<std::int64_t>((__int128)residue() * o.residue() % field_->p());
            break;
        case FieldKind::Extension: {
            const FieldPtr& base = field_->base();
            auto prod = polydetail::mod(polydetail::mul(coeffs(), o.coeffs(), base),
                                        field_->minpoly(), base);
            prod.resize(coeffs().size(), base->zero());
            r.v_ = std::move(prod);
            break;
        }
    }
    return r;
}

inline Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
    Scalar r;
    r.field_ = field_;
    switch (field_->kind()) {
        case FieldKind::Rationals: r.v_ = mpq_class(1 / rational()); break;
        case FieldKind::Prime: {
            std::int64_t p = field_->p();
            std::int64_t inv = 1, b = residue(), e = p - 2;
            while (e) {
                if (e & 1) inv = static_cast<std::int64_t>((__int128)inv * b % p);
                b = static_cast<std::int64_t>((__int128)b * b % p);
                e >>= 1;
            }
            r.v_ = inv;
            break;
        }
        case FieldKind::Extension: {
            const FieldPtr& base = field_->base();
            auto inv = polydetail::inverse_mod(coeffs(), field_->minpoly(), base);
            inv.resize(coeffs().size(), base->zero());
            r.v_ = std::move(inv);
            break;
        }
    }
    return r;
}

inline Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

inline Scalar Scalar::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = field_->one();
    Scalar b = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r *= b;
        k >>= 1;
        if (k > 0) b *= b;
    }
    return r;
}

inline std::string Scalar::str() const {
    switch (field_->kind()) {
        case FieldKind::Rationals: return rational().get_str();
        case FieldKind::Prime: return std::to_string(residue());
        case FieldKind::Extension: {
            std::string s = "[";
            for (size_t i = 0; i < coeffs().size(); ++i) {
                if (i) s += ",";
                s += coeffs()[i].str();
            }
            return s + "]";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------

/// Square test: a = b^2 for some b in the field? Supports Q and finite fields.
inline bool is_square(const Scalar& a) {
    const FieldPtr& f = a.field();
    if (a.is_zero()) return true;
    switch (f->kind()) {
        case FieldKind::Rationals: {
            const mpq_class& q = a.rational();
            if (q < 0) return false;
            return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
                   mpz_perfect_square_p(q.get_den().get_mpz_t());
        }
        case FieldKind::Prime:
        case FieldKind::Extension: {
            if (!f->is_finite())
                throw Error(ErrorKind::UnsupportedField,
                            "square test supported only over Q and finite fields");
            mpz_class q = f->order();
            if (q > 1000000)
                throw Error(ErrorKind::ResourceCap, "finite field too large for square test");
            if (f->characteristic() == 2) return true; // Frobenius is onto
            Scalar t = a.pow((q - 1) / 2);
            return t.is_one();
        }
    }
    return false;
}

} // namespace motivecalc
