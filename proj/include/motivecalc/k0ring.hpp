#pragma once

// Finite-rank commutative ring models of K_0 with a rank homomorphism to Z^m:
// validation of the ring axioms, nilpotence witnesses for rank-zero elements,
// and geometric-series inversion after localizing the coefficient ring.

#include <optional>
#include <string>
#include <vector>

#include "motivecalc/motives.hpp"

namespace motivecalc {

struct K0RingModel {
    size_t free_rank = 0;
    std::vector<mpz_class> torsion;                       // moduli, each >= 2
    std::vector<std::vector<std::vector<mpz_class>>> mult; // mult[i][j] = coords of g_i * g_j
    std::vector<mpz_class> unit;
    std::vector<std::vector<mpz_class>> rank_map;          // m rows, one per component
    std::string label;

    size_t gens() const { return free_rank + torsion.size(); }
    size_t components() const { return rank_map.size(); }
};

struct K0Element {
    std::vector<mpq_class> coords; // length model.gens(); torsion coords reduced
};

namespace k0detail {

// localized torsion modulus: strip every inverted prime from c
inline mpz_class local_modulus(const mpz_class& c, const CoefficientRing& ring) {
    mpz_class m = c;
    for (std::int64_t p : ring.inverted)
        while (m % p == 0) m /= p;
    return m;
}

inline void reduce_coords(const K0RingModel& model, std::vector<mpq_class>& coords,
                          const CoefficientRing& ring) {
    for (auto& c : coords)
        if (!ring.denominator_ok(c))
            throw Error(ErrorKind::CoefficientNotInvertible,
                        "coordinate denominator " + c.get_den().get_str() + " is not invertible in " + ring.str());
    for (size_t t = 0; t < model.torsion.size(); ++t) {
        mpq_class& c = coords[model.free_rank + t];
        mpz_class m = local_modulus(model.torsion[t], ring);
        if (m == 1) {
            c = 0;
            continue;
        }
        // c = a/d with gcd(d, m) = 1; canonical residue (a * d^{-1}) mod m
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), c.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
            throw Error(ErrorKind::CoefficientNotInvertible,
                        "denominator " + c.get_den().get_str() + " not invertible mod " + m.get_str());
        mpz_class r = (c.get_num() * dinv) % m;
        if (r < 0) r += m;
        c = mpq_class(r);
    }
}

} // namespace k0detail

inline K0Element k0_element(const K0RingModel& model, std::vector<mpq_class> coords,
                            const CoefficientRing& ring = CoefficientRing::integers()) {
    if (coords.size() != model.gens())
        throw Error(ErrorKind::InvalidInput, "element needs " + std::to_string(model.gens()) + " coordinates");
    k0detail::reduce_coords(model, coords, ring);
    return K0Element{std::move(coords)};
}

inline K0Element k0_mul(const K0RingModel& model, const K0Element& a, const K0Element& b,
                        const CoefficientRing& ring = CoefficientRing::integers()) {
    size_t n = model.gens();
    std::vector<mpq_class> out(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a.coords[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (b.coords[j] == 0) continue;
            mpq_class c = a.coords[i] * b.coords[j];
            for (size_t t = 0; t < n; ++t) out[t] += c * mpq_class(model.mult[i][j][t]);
        }
    }
    k0detail::reduce_coords(model, out, ring);
    return K0Element{std::move(out)};
}

inline K0Element k0_add(const K0RingModel& model, const K0Element& a, const K0Element& b,
                        const CoefficientRing& ring = CoefficientRing::integers()) {
    std::vector<mpq_class> out(model.gens());
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coords[i] + b.coords[i];
    k0detail::reduce_coords(model, out, ring);
    return K0Element{std::move(out)};
}

inline bool k0_is_zero(const K0Element& e) {
    for (const auto& c : e.coords)
        if (c != 0) return false;
    return true;
}

inline std::vector<mpq_class> k0_rank(const K0RingModel& model, const K0Element& e) {
    std::vector<mpq_class> r(model.components(), 0);
    for (size_t i = 0; i < model.components(); ++i)
        for (size_t j = 0; j < model.gens(); ++j)
            r[i] += mpq_class(model.rank_map[i][j]) * e.coords[j];
    return r;
}

inline K0RingModel k0_make(K0RingModel model) {
    size_t n = model.gens();
    if (model.components() < 1) throw Error(ErrorKind::InvalidInput, "rank map needs at least one component");
    for (const auto& c : model.torsion)
        if (c < 2) throw Error(ErrorKind::InvalidInput, "torsion moduli must be >= 2");
    if (model.unit.size() != n || model.mult.size() != n)
        throw Error(ErrorKind::InvalidInput, "unit / mult dimensions do not match the generators");
    for (const auto& row : model.mult) {
        if (row.size() != n) throw Error(ErrorKind::InvalidInput, "mult table is not square");
        for (const auto& v : row)
            if (v.size() != n) throw Error(ErrorKind::InvalidInput, "mult entries must have one coordinate per generator");
    }
    for (const auto& row : model.rank_map)
        if (row.size() != n) throw Error(ErrorKind::InvalidInput, "rank map rows need one entry per generator");
    auto Z = CoefficientRing::integers();
    auto gen = [&](size_t i) {
        std::vector<mpq_class> c(n, 0);
        c[i] = 1;
        return k0_element(model, std::move(c));
    };
    auto eq = [&](const K0Element& a, const K0Element& b) {
        for (size_t t = 0; t < n; ++t)
            if (a.coords[t] != b.coords[t]) return false;
        return true;
    };
    std::vector<mpq_class> uq(model.unit.begin(), model.unit.end());
    K0Element unit = k0_element(model, std::move(uq));
    for (size_t i = 0; i < n; ++i) {
        if (!eq(k0_mul(model, unit, gen(i)), gen(i)))
            throw Error(ErrorKind::InvalidInput, "unit law fails at generator " + std::to_string(i));
        for (size_t j = i + 1; j < n; ++j)
            if (!eq(k0_mul(model, gen(i), gen(j)), k0_mul(model, gen(j), gen(i))))
                throw Error(ErrorKind::InvalidInput,
                            "commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l)
                if (!eq(k0_mul(model, k0_mul(model, gen(i), gen(j), Z), gen(l)),
                        k0_mul(model, gen(i), k0_mul(model, gen(j), gen(l), Z))))
                    throw Error(ErrorKind::InvalidInput, "associativity fails at (" + std::to_string(i) + "," +
                                                             std::to_string(j) + "," + std::to_string(l) + ")");
    }
    // rank must be a ring homomorphism onto Z^m, killing torsion
    for (size_t i = 0; i < model.components(); ++i) {
        for (size_t t = 0; t < model.torsion.size(); ++t)
            if (model.rank_map[i][model.free_rank + t] != 0)
                throw Error(ErrorKind::InvalidInput, "rank map must vanish on torsion generators");
        if (k0_rank(model, unit)[i] != 1)
            throw Error(ErrorKind::InvalidInput, "rank(unit) must be (1,...,1)");
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto lhs = k0_rank(model, k0_mul(model, gen(i), gen(j)));
            auto ri = k0_rank(model, gen(i)), rj = k0_rank(model, gen(j));
            for (size_t c = 0; c < model.components(); ++c)
                if (lhs[c] != ri[c] * rj[c])
                    throw Error(ErrorKind::InvalidInput, "rank map is not multiplicative at (" + std::to_string(i) +
                                                             "," + std::to_string(j) + ")");
        }
    return model;
}

inline K0RingModel k0_builtin(const std::string& name) {
    if (name == "point") {
        K0RingModel m;
        m.free_rank = 1;
        m.mult = {{{mpz_class(1)}}};
        m.unit = {mpz_class(1)};
        m.rank_map = {{mpz_class(1)}};
        m.label = "point";
        return k0_make(std::move(m));
    }
    if (name.size() == 2 && name[0] == 'P' && name[1] >= '1' && name[1] <= '4') {
        size_t deg = static_cast<size_t>(name[1] - '0'); // basis 1, x, ..., x^deg with x^{deg+1} = 0
        size_t n = deg + 1;
        K0RingModel m;
        m.free_rank = n;
        m.mult.assign(n, std::vector<std::vector<mpz_class>>(n, std::vector<mpz_class>(n, 0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (i + j < n) m.mult[i][j][i + j] = 1;
        m.unit.assign(n, 0);
        m.unit[0] = 1;
        m.rank_map = {std::vector<mpz_class>(n, 0)};
        m.rank_map[0][0] = 1;
        m.label = name;
        return k0_make(std::move(m));
    }
    if (name.rfind("dedekind-", 0) == 0) {
        long c = 0;
        try {
            c = std::stol(name.substr(9));
        } catch (...) {
            throw Error(ErrorKind::InvalidInput, "bad modulus in '" + name + "'");
        }
        if (c < 2 || c > 1000) throw Error(ErrorKind::InvalidInput, "dedekind modulus must be in [2,1000]");
        K0RingModel m;
        m.free_rank = 1;
        m.torsion = {mpz_class(c)};
        // (r,a)(r',a') = (r r', r a' + r' a)
        m.mult.assign(2, std::vector<std::vector<mpz_class>>(2, std::vector<mpz_class>(2, 0)));
        m.mult[0][0] = {1, 0};
        m.mult[0][1] = {0, 1};
        m.mult[1][0] = {0, 1};
        m.mult[1][1] = {0, 0};
        m.unit = {1, 0};
        m.rank_map = {{1, 0}};
        m.label = name;
        return k0_make(std::move(m));
    }
    throw Error(ErrorKind::InvalidInput, "unknown builtin model '" + name + "'");
}

struct NilpotenceReport {
    std::optional<size_t> exponent; // least N with e^N = 0, if found within the bound
    size_t bound = 0;
    std::string note;
};

inline NilpotenceReport nilpotence_witness(const K0RingModel& model, const K0Element& e, size_t max_exp,
                                           const CoefficientRing& ring = CoefficientRing::integers()) {
    if (max_exp < 1) throw Error(ErrorKind::InvalidInput, "max_exp must be >= 1");
    for (const auto& r : k0_rank(model, e))
        if (r != 0)
            throw Error(ErrorKind::RankNonzero, "element has nonzero rank; nilpotence applies to rank-zero elements");
    NilpotenceReport rep;
    rep.bound = max_exp;
    K0Element pw = e; // pw = e^n at the top of iteration n
    for (size_t n = 1; n <= max_exp; ++n) {
        if (k0_is_zero(pw)) {
            rep.exponent = n;
            break;
        }
        pw = k0_mul(model, pw, e, ring);
    }
    if (!rep.exponent)
        rep.note = "no vanishing power found within the bound; the model may not be a genuine K0 ring, "
                   "or the bound is too small";
    return rep;
}

struct LocalizedInverse {
    K0Element result;
    K0Element beta;       // the rank-correcting factor
    size_t nu_vanishing;  // least N with nu^{N+1} = 0
};

inline LocalizedInverse localize_invert(const K0RingModel& model, const K0Element& a,
                                        const CoefficientRing& ring, size_t max_exp) {
    if (max_exp < 1) throw Error(ErrorKind::InvalidInput, "max_exp must be >= 1");
    auto rank = k0_rank(model, a);
    for (const auto& r : rank) {
        if (r == 0)
            throw Error(ErrorKind::RankNotInvertible, "rank component is zero");
        mpz_class num = abs(mpq_class(r).get_num());
        if (!ring.licenses(num) || !ring.licenses(mpq_class(r).get_den()))
            throw Error(ErrorKind::RankNotInvertible,
                        "rank component " + mpq_class(r).get_str() + " is not invertible in " + ring.str());
    }
    // beta: any solution of rank_map * beta = (1/r_1, ..., 1/r_m) over the free part
    auto Q = Field::rationals();
    Mat sys(Q, model.components(), model.free_rank);
    for (size_t i = 0; i < model.components(); ++i)
        for (size_t j = 0; j < model.free_rank; ++j)
            sys.at(i, j) = Q->from_rational(mpq_class(model.rank_map[i][j]));
    Vec rhs;
    for (const auto& r : rank) rhs.push_back(Q->from_rational(1 / mpq_class(r)));
    auto sol = sys.solve(rhs);
    if (!sol)
        throw Error(ErrorKind::RankNotInvertible, "rank map is not surjective enough to correct the rank");
    std::vector<mpq_class> bc(model.gens(), 0);
    for (size_t j = 0; j < model.free_rank; ++j) bc[j] = (*sol)[j].rational();
    K0Element beta = k0_element(model, std::move(bc), ring);
    std::vector<mpq_class> uq(model.unit.begin(), model.unit.end());
    K0Element unit = k0_element(model, uq, ring);
    // nu = unit - a*beta has rank zero; sum the geometric series once it dies
    K0Element ab = k0_mul(model, a, beta, ring);
    std::vector<mpq_class> nc(model.gens());
    for (size_t t = 0; t < nc.size(); ++t) nc[t] = unit.coords[t] - ab.coords[t];
    K0Element nu = k0_element(model, std::move(nc), ring);
    K0Element sum = unit, pw = unit;
    std::optional<size_t> vanish;
    for (size_t n = 1; n <= max_exp; ++n) {
        pw = k0_mul(model, pw, nu, ring);
        if (k0_is_zero(pw)) {
            vanish = n - 1; // nu^{(n-1)+1} = 0
            break;
        }
        sum = k0_add(model, sum, pw, ring);
    }
    if (!vanish)
        throw Error(ErrorKind::NoNilpotenceWithinBound,
                    "nu = 1 - a*beta has no vanishing power within the bound; the model may not be a "
                    "genuine K0 ring, or the bound is too small");
    LocalizedInverse out{k0_mul(model, beta, sum, ring), std::move(beta), *vanish};
    K0Element check = k0_mul(model, a, out.result, ring);
    for (size_t t = 0; t < model.gens(); ++t)
        if (check.coords[t] != unit.coords[t])
            throw Error(ErrorKind::Internal, "inverse verification failed");
    return out;
}

} // namespace motivecalc
