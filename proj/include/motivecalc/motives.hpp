#pragma once

// Formal rewrite calculus on motive atoms U(-): Wedderburn/Morita expansion,
// product splitting, the Azumaya reduction under inverted primes, tensor-power
// handling, and the nilinvariance reduction with its hypothesis guards.

#include <algorithm>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "motivecalc/hochschild.hpp"
#include "motivecalc/quadform.hpp"

namespace motivecalc {

struct CoefficientRing {
    std::vector<std::int64_t> inverted; // sorted, deduplicated primes

    static CoefficientRing integers() { return {}; }

    static CoefficientRing inverting(std::vector<std::int64_t> primes) {
        for (std::int64_t p : primes)
            if (p < 2 || !detail::is_prime_i64(p))
                throw Error(ErrorKind::InvalidInput, "inverted entries must be primes");
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        return {std::move(primes)};
    }

    bool has(std::int64_t p) const {
        return std::binary_search(inverted.begin(), inverted.end(), p);
    }

    bool licenses(const mpz_class& r) const {
        auto fac = factor_integer(r);
        for (auto& [p, e] : fac)
            if (!p.fits_slong_p() || !has(p.get_si())) return false;
        return true;
    }

    bool denominator_ok(const mpq_class& c) const { return licenses(c.get_den()); }

    std::string str() const {
        if (inverted.empty()) return "Z";
        std::string s = "Z[1/";
        for (size_t i = 0; i < inverted.size(); ++i) {
            if (i) s += ",1/";
            s += std::to_string(inverted[i]);
        }
        return s + "]";
    }
};

struct MotiveAtom {
    enum class Kind { Field, Algebra, TensorPower };
    Kind kind = Kind::Field;
    FieldPtr base;                       // ambient field k
    PolyVec minpoly;                     // Field: the extension Z = k[t]/(minpoly)
    std::shared_ptr<const Algebra> alg;  // Algebra / TensorPower
    size_t power = 1;                    // TensorPower exponent >= 2
    std::string note;

    static MotiveAtom field_unit(const FieldPtr& k) {
        MotiveAtom a;
        a.kind = Kind::Field;
        a.base = k;
        a.minpoly = {k->zero(), k->one()};
        return a;
    }

    static MotiveAtom field(const FieldPtr& k, PolyVec mp) {
        if (poly_degree(mp) < 1) throw Error(ErrorKind::InvalidInput, "field atom needs a nonconstant minpoly");
        mp = polydetail::monic(std::move(mp));
        if (poly_degree(mp) == 1) return field_unit(k); // any degree-1 quotient is k itself
        MotiveAtom a;
        a.kind = Kind::Field;
        a.base = k;
        a.minpoly = std::move(mp);
        return a;
    }

    static MotiveAtom algebra(std::shared_ptr<const Algebra> al) {
        MotiveAtom a;
        a.kind = Kind::Algebra;
        a.base = al->field;
        a.alg = std::move(al);
        return a;
    }

    static MotiveAtom tensor_power(std::shared_ptr<const Algebra> al, size_t m) {
        if (m < 2) throw Error(ErrorKind::InvalidInput, "tensor power exponent must be >= 2");
        MotiveAtom a;
        a.kind = Kind::TensorPower;
        a.base = al->field;
        a.alg = std::move(al);
        a.power = m;
        return a;
    }

    std::string key() const {
        std::ostringstream os;
        os << static_cast<int>(kind) << '|' << base->str() << '|';
        if (kind == Kind::Field) {
            os << minpoly.size();
            for (const Scalar& c : minpoly) os << ',' << c.str();
        } else {
            os << alg->dim << '|' << power << '|';
            for (const Scalar& u : alg->unit) os << u.str() << ',';
            os << '|';
            for (const auto& row : alg->table)
                for (const auto& v : row)
                    for (const Scalar& c : v) os << c.str() << ',';
        }
        return os.str();
    }

    std::string str() const {
        switch (kind) {
            case Kind::Field:
                if (poly_degree(minpoly) == 1) return "U(" + base->str() + ")";
                else {
                    std::string s = "U(" + base->str() + "[t]/(";
                    for (int d = poly_degree(minpoly); d >= 0; --d) {
                        const Scalar& c = minpoly[static_cast<size_t>(d)];
                        if (c.is_zero()) continue;
                        if (d < poly_degree(minpoly)) s += "+";
                        if (d == 0 || !c.is_one()) s += c.str();
                        if (d > 0) s += "t";
                        if (d > 1) s += "^" + std::to_string(d);
                    }
                    return s + "))";
                }
            case Kind::Algebra:
                return "U(" + (alg->label.empty() ? "A(dim " + std::to_string(alg->dim) + ")" : alg->label) + ")";
            default:
                return "U(" + (alg->label.empty() ? "A" : alg->label) + ")^(x)" + std::to_string(power);
        }
    }
};

struct MotiveTerm {
    MotiveAtom atom;
    mpq_class coeff;
};

struct MotiveExpr {
    std::vector<MotiveTerm> terms; // canonical: sorted by atom key, coefficients nonzero

    void canonicalize() {
        std::sort(terms.begin(), terms.end(),
                  [](const MotiveTerm& a, const MotiveTerm& b) { return a.atom.key() < b.atom.key(); });
        std::vector<MotiveTerm> merged;
        for (auto& t : terms) {
            if (!merged.empty() && merged.back().atom.key() == t.atom.key())
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        terms.clear();
        for (auto& t : merged)
            if (t.coeff != 0) terms.push_back(std::move(t));
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) s += " (+) ";
            if (terms[i].coeff != 1) s += terms[i].coeff.get_str() + "*";
            s += terms[i].atom.str();
        }
        return s;
    }
};

inline MotiveExpr motive_atom(std::shared_ptr<const Algebra> a) {
    MotiveExpr e;
    e.terms.push_back({MotiveAtom::algebra(std::move(a)), 1});
    return e;
}

inline MotiveExpr motive_atom(const Algebra& a) {
    return motive_atom(std::make_shared<const Algebra>(a));
}

inline MotiveExpr expr_add(const MotiveExpr& a, const MotiveExpr& b) {
    MotiveExpr r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    r.canonicalize();
    return r;
}

inline MotiveExpr expr_scale(const MotiveExpr& a, const mpq_class& c, const CoefficientRing& ring) {
    if (!ring.denominator_ok(c))
        throw Error(ErrorKind::CoefficientNotInvertible,
                    "coefficient denominator " + c.get_den().get_str() + " is not invertible in " + ring.str());
    MotiveExpr r = a;
    for (auto& t : r.terms) {
        t.coeff *= c;
        if (!ring.denominator_ok(t.coeff))
            throw Error(ErrorKind::CoefficientNotInvertible, "scaled coefficient leaves " + ring.str());
    }
    r.canonicalize();
    return r;
}

inline bool expr_equal(const MotiveExpr& a, const MotiveExpr& b) {
    MotiveExpr x = a, y = b;
    x.canonicalize();
    y.canonicalize();
    if (x.terms.size() != y.terms.size()) return false;
    for (size_t i = 0; i < x.terms.size(); ++i)
        if (x.terms[i].coeff != y.terms[i].coeff || x.terms[i].atom.key() != y.terms[i].atom.key()) return false;
    return true;
}

struct RuleStep {
    std::string rule;       // WEDD | PROD | AZU | TPOW | NIL
    std::string from;
    std::string to;
    std::string hypothesis;
};

namespace motdetail {

// Orthogonal central idempotents of A summing to 1 (possibly just {1}); found
// by splitting the center through coprime minpoly factorizations, with Newton
// tightening along any nilpotents.
inline std::vector<Vec> central_idempotents(const Algebra& a, std::uint64_t seed) {
    Subalgebra c = center(a);
    const FieldPtr& k = a.field;
    std::vector<Vec> done;      // idempotents (in A coordinates) that no longer split
    std::vector<Subalgebra> work{std::move(c)};
    auto embed = [&](const Subalgebra& s, const Vec& v) {
        Vec r(a.dim, k->zero());
        for (size_t t = 0; t < s.alg.dim; ++t)
            if (!v[t].is_zero())
                for (size_t u = 0; u < a.dim; ++u) r[u] += v[t] * s.embedding[t][u];
        return r;
    };
    std::mt19937_64 rng(seed ^ 0x7f4a7c15ull);
    while (!work.empty()) {
        Subalgebra cur = std::move(work.back());
        work.pop_back();
        std::optional<Vec> split;
        size_t m = cur.alg.dim;
        for (size_t i = 0; i < m && !split; ++i)
            split = algdetail::split_idempotent(cur.alg, cur.alg.basis(i), seed);
        for (size_t i = 0; i < m && !split; ++i)
            for (size_t j = i + 1; j < m && !split; ++j) {
                Vec s = cur.alg.basis(i);
                for (size_t u = 0; u < m; ++u) s[u] += cur.alg.basis(j)[u];
                split = algdetail::split_idempotent(cur.alg, s, seed);
            }
        for (int t = 0; t < 40 && !split; ++t) {
            Vec s(m, k->zero());
            for (size_t u = 0; u < m; ++u) s[u] = k->from_int(static_cast<long>(rng() % 9) - 4);
            split = algdetail::split_idempotent(cur.alg, s, seed);
        }
        if (!split) {
            done.push_back(embed(cur, cur.alg.unit));
            continue;
        }
        Vec e1 = *split;
        Vec e2(m, k->zero());
        for (size_t u = 0; u < m; ++u) e2[u] = cur.alg.unit[u] - e1[u];
        for (const Vec& part : {e1, e2}) {
            std::vector<Vec> gen;
            for (size_t t = 0; t < m; ++t) gen.push_back(cur.alg.mul(part, cur.alg.basis(t)));
            auto basis = reduced_span(k, gen, m);
            Subalgebra sub = subalgebra_from_basis(cur.alg, std::move(basis), part);
            Subalgebra lifted;
            lifted.alg = sub.alg;
            for (const Vec& v : sub.embedding) lifted.embedding.push_back(embed(cur, v));
            work.push_back(std::move(lifted));
        }
    }
    return done;
}

inline std::string primes_str(const mpz_class& r) {
    auto f = factor_integer(r);
    std::string s;
    for (auto& [p, e] : f) {
        if (!s.empty()) s += ",";
        s += p.get_str();
    }
    return s.empty() ? "1" : s;
}

} // namespace motdetail

struct MotiveReduction {
    MotiveExpr expr;
    std::vector<RuleStep> trace;
};

inline MotiveReduction motive_reduce(const MotiveExpr& input, const CoefficientRing& ring,
                                     std::uint64_t seed = 1) {
    MotiveReduction out;
    MotiveExpr cur = input;
    cur.canonicalize();
    for (const auto& t : cur.terms)
        if (!ring.denominator_ok(t.coeff))
            throw Error(ErrorKind::CoefficientNotInvertible,
                        "coefficient " + t.coeff.get_str() + " is not defined over " + ring.str());
    bool changed = true;
    size_t guard = 0;
    while (changed) {
        if (++guard > 1000) throw Error(ErrorKind::Internal, "motive reduction did not stabilize");
        changed = false;
        MotiveExpr next;
        for (const MotiveTerm& term : cur.terms) {
            const MotiveAtom& atom = term.atom;
            if (atom.kind == MotiveAtom::Kind::Field) {
                next.terms.push_back(term);
                continue;
            }
            if (atom.kind == MotiveAtom::Kind::TensorPower) {
                const Algebra& b = *atom.alg;
                WedderburnReport wb = wedderburn(b, seed);
                bool csa = wb.radical_dim == 0 && wb.components.size() == 1 &&
                           wb.components[0].center_degree == 1;
                if (!csa) {
                    MotiveAtom stuck = atom;
                    stuck.note = "base is not central simple over k";
                    next.terms.push_back({stuck, term.coeff});
                    continue;
                }
                const auto& comp = wb.components[0];
                bool split = comp.n != 0 && comp.e == 1;
                bool licensed = comp.e != 0 ? ring.licenses(mpz_class(static_cast<long>(comp.e)))
                                            : ring.licenses(mpz_class(static_cast<long>(comp.dim_over_center)));
                if (split || licensed) {
                    MotiveAtom to = MotiveAtom::field_unit(atom.base);
                    out.trace.push_back({"TPOW", atom.str(), to.str(),
                                         split ? "base splits as a matrix algebra"
                                               : "base Azumaya rank invertible in " + ring.str()});
                    next.terms.push_back({to, term.coeff});
                    changed = true;
                    continue;
                }
                // expand concretely when the tensor power stays inside the dim cap
                size_t dim = 1;
                bool fits = true;
                for (size_t i = 0; i < atom.power; ++i) {
                    dim *= b.dim;
                    if (dim > kDefaultDimCap) { fits = false; break; }
                }
                if (fits) {
                    Algebra t2 = b;
                    for (size_t i = 1; i < atom.power; ++i) t2 = alg_tensor(t2, b);
                    MotiveAtom to = MotiveAtom::algebra(std::make_shared<const Algebra>(std::move(t2)));
                    out.trace.push_back({"TPOW", atom.str(), to.str(), "concrete expansion"});
                    next.terms.push_back({to, term.coeff});
                    changed = true;
                } else {
                    MotiveAtom stuck = atom;
                    stuck.note = "tensor power not expanded: dimension exceeds cap and rank not invertible";
                    next.terms.push_back({stuck, term.coeff});
                }
                continue;
            }
            // AlgebraAtom
            const Algebra& a = *atom.alg;
            if (a.dim == 1) {
                MotiveAtom to = MotiveAtom::field_unit(atom.base);
                out.trace.push_back({"WEDD", atom.str(), to.str(), "one-dimensional algebra"});
                next.terms.push_back({to, term.coeff});
                changed = true;
                continue;
            }
            auto idems = motdetail::central_idempotents(a, seed);
            if (idems.size() > 1) {
                std::string tos;
                for (const Vec& e : idems) {
                    Algebra half = algdetail::corner(a, e);
                    MotiveAtom to = MotiveAtom::algebra(std::make_shared<const Algebra>(std::move(half)));
                    if (!tos.empty()) tos += " (+) ";
                    tos += to.str();
                    next.terms.push_back({to, term.coeff});
                }
                out.trace.push_back({"PROD", atom.str(), tos, "central idempotent decomposition"});
                changed = true;
                continue;
            }
            IdealBasis rad = jacobson_radical(a);
            if (!rad.basis.empty()) {
                // no unconditional rule applies to a non-semisimple, non-split algebra
                next.terms.push_back(term);
                continue;
            }
            WedderburnReport wb = wedderburn(a, seed);
            if (wb.components.size() != 1)
                throw Error(ErrorKind::Internal, "unsplit semisimple algebra with several components");
            const auto& comp = wb.components[0];
            if (comp.n != 0 && comp.e == 1) {
                MotiveAtom to = MotiveAtom::field(atom.base, comp.center_minpoly);
                out.trace.push_back({"WEDD", atom.str(), to.str(),
                                     "Morita: matrix algebra of size " + std::to_string(comp.n) +
                                         " over its center"});
                next.terms.push_back({to, term.coeff});
                changed = true;
                continue;
            }
            mpz_class rank = comp.e != 0 ? mpz_class(static_cast<long>(comp.e))
                                         : mpz_class(static_cast<long>(comp.dim_over_center));
            if (ring.licenses(rank)) {
                MotiveAtom to = MotiveAtom::field(atom.base, comp.center_minpoly);
                out.trace.push_back({"AZU", atom.str(), to.str(),
                                     "1/r in " + ring.str() + " for r with prime support {" +
                                         motdetail::primes_str(rank) + "}"});
                next.terms.push_back({to, term.coeff});
                changed = true;
                continue;
            }
            next.terms.push_back(term); // guarded: stuck atom is a normal result
        }
        next.canonicalize();
        cur = std::move(next);
    }
    out.expr = std::move(cur);
    return out;
}

struct NilReduction {
    MotiveExpr expr;
    std::string licensed_by;
    std::vector<RuleStep> trace;
};

inline NilReduction nil_reduce(const Algebra& s, const IdealBasis& ideal, const CoefficientRing& ring,
                               std::optional<GlDim> quotient_fgd = std::nullopt, std::uint64_t seed = 1) {
    if (!is_two_sided_ideal(s, ideal.basis))
        throw Error(ErrorKind::HypothesisUnsatisfied, "hypothesis failed: I is not a two-sided ideal");
    if (!ideal_is_nilpotent(s, ideal.basis))
        throw Error(ErrorKind::HypothesisUnsatisfied, "hypothesis failed: I is not nilpotent");
    if (s.fgd != GlDim::Yes)
        throw Error(ErrorKind::HypothesisUnsatisfied,
                    std::string("hypothesis failed: finite_global_dimension = ") + gldim_name(s.fgd) +
                        " for S");
    IdealBasis rad = jacobson_radical(s);
    bool is_radical = rad.basis.size() == ideal.basis.size();
    if (is_radical)
        for (size_t i = 0; i < rad.basis.size() && is_radical; ++i)
            is_radical = in_span(s.field, rad.basis, ideal.basis[i]);
    if (!is_radical && quotient_fgd.value_or(GlDim::Unknown) != GlDim::Yes)
        throw Error(ErrorKind::HypothesisUnsatisfied,
                    "hypothesis failed: S/I is not certified to have finite global dimension "
                    "(automatic only for I = J(S))");
    NilReduction out;
    // separability of the semisimple quotient, or the characteristic inverted
    Algebra ss = rad.basis.empty() ? s : alg_quotient(s, rad);
    std::int64_t p = s.field->characteristic();
    if (is_separable(ss).separable)
        out.licensed_by = "S/J(S) is separable";
    else if (p != 0 && ring.has(p))
        out.licensed_by = "1/" + std::to_string(p) + " in " + ring.str();
    else
        throw Error(ErrorKind::HypothesisUnsatisfied,
                    "hypothesis failed: S/J(S) is not separable and char(k) is not inverted");
    Algebra q = ideal.basis.empty() ? s : alg_quotient(s, ideal);
    auto red = motive_reduce(motive_atom(q), ring, seed);
    out.trace.push_back({"NIL", "U(" + (s.label.empty() ? "S" : s.label) + ")",
                         red.expr.str(), out.licensed_by});
    for (auto& step : red.trace) out.trace.push_back(step);
    out.expr = std::move(red.expr);
    return out;
}

inline MotiveReduction severi_brauer_motive(const Algebra& a, const CoefficientRing& ring,
                                            std::uint64_t seed = 1) {
    size_t d = algdetail::isqrt_exact(a.dim);
    if (d == 0 || d > 4)
        throw Error(ErrorKind::InvalidInput, "central simple algebra of degree at most 4 required");
    if (!is_central_simple(a))
        throw Error(ErrorKind::InvalidInput, "algebra is not central simple");
    auto shared = std::make_shared<const Algebra>(a);
    MotiveExpr e;
    e.terms.push_back({MotiveAtom::field_unit(a.field), 1});
    if (d >= 2) e.terms.push_back({MotiveAtom::algebra(shared), 1});
    for (size_t i = 2; i < d; ++i) e.terms.push_back({MotiveAtom::tensor_power(shared, i), 1});
    return motive_reduce(e, ring, seed);
}

inline MotiveReduction quadric_motive(const QuadraticForm& q, const CoefficientRing& ring,
                                      std::uint64_t seed = 1) {
    if (q.n() < 3) throw Error(ErrorKind::InvalidInput, "quadric decomposition requires n >= 3");
    MotiveExpr e;
    e.terms.push_back({MotiveAtom::algebra(std::make_shared<const Algebra>(even_clifford(q))), 1});
    // closed-form count: n-1 unit copies when n is even with nonsquare signed
    // determinant, n-2 otherwise
    size_t copies = q.n() - 2;
    auto sd = signed_determinant(q);
    if (q.n() % 2 == 0 && !sd.square) copies = q.n() - 1;
    e.terms.push_back({MotiveAtom::field_unit(q.field), static_cast<long>(copies)});
    return motive_reduce(e, ring, seed);
}

} // namespace motivecalc
