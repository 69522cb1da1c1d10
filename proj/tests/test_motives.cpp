#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivecalc/hochschild.hpp"
#include "motivecalc/motives.hpp"

#include <random>

using namespace motivecalc;

namespace {
const FieldPtr& Q() {
    static FieldPtr q = Field::rationals();
    return q;
}

Algebra quat() { return alg_quaternion(Q(), Q()->from_int(-1), Q()->from_int(-1)); }

QuadraticForm diag_q(std::vector<long> entries) {
    std::vector<Scalar> d;
    for (long e : entries) d.push_back(Q()->from_int(e));
    return qf_from_diag(Q(), d);
}

// sum of coeff * [Z:Q] over field atoms; fingerprint for the HH0 check
mpq_class field_mass(const MotiveExpr& e) {
    mpq_class m = 0;
    for (const auto& t : e.terms)
        if (t.atom.kind == MotiveAtom::Kind::Field)
            m += t.coeff * poly_degree(t.atom.minpoly);
    return m;
}

bool is_unit_expr(const MotiveExpr& e, long copies) {
    if (e.terms.size() != 1) return false;
    const auto& t = e.terms[0];
    return t.atom.kind == MotiveAtom::Kind::Field && poly_degree(t.atom.minpoly) == 1 &&
           t.coeff == copies;
}
} // namespace

TEST_CASE("coefficient rings") {
    CHECK(CoefficientRing::integers().str() == "Z");
    CHECK(CoefficientRing::inverting({3, 2, 2}).str() == "Z[1/2,1/3]");
    CHECK(CoefficientRing::inverting({2}).licenses(mpz_class(8)));
    CHECK_FALSE(CoefficientRing::inverting({2}).licenses(mpz_class(6)));
    CHECK(CoefficientRing::inverting({2, 3}).denominator_ok(mpq_class(5, 12)));
    CHECK_THROWS_AS((void)CoefficientRing::inverting({4}), Error);
}

TEST_CASE("quaternion atom: stuck over Z, unit over Z[1/2]") {
    auto stuck = motive_reduce(motive_atom(quat()), CoefficientRing::integers());
    REQUIRE(stuck.expr.terms.size() == 1);
    CHECK(stuck.expr.terms[0].atom.kind == MotiveAtom::Kind::Algebra);
    CHECK(stuck.trace.empty());

    auto red = motive_reduce(motive_atom(quat()), CoefficientRing::inverting({2}));
    CHECK(is_unit_expr(red.expr, 1));
    REQUIRE(red.trace.size() == 1);
    CHECK(red.trace[0].rule == "AZU");
}

TEST_CASE("matrix algebra reduces by Morita with no inversion") {
    auto red = motive_reduce(motive_atom(alg_matrix(Q(), 2)), CoefficientRing::integers());
    CHECK(is_unit_expr(red.expr, 1));
    REQUIRE(red.trace.size() == 1);
    CHECK(red.trace[0].rule == "WEDD");
}

TEST_CASE("even clifford displays: <1,-1> and <1,1>") {
    auto red = motive_reduce(motive_atom(even_clifford(diag_q({1, -1}))), CoefficientRing::integers());
    CHECK(is_unit_expr(red.expr, 2));

    red = motive_reduce(motive_atom(even_clifford(diag_q({1, 1}))), CoefficientRing::inverting({2}));
    REQUIRE(red.expr.terms.size() == 1);
    const auto& a = red.expr.terms[0].atom;
    CHECK(a.kind == MotiveAtom::Kind::Field);
    REQUIRE(poly_degree(a.minpoly) == 2);
    // center is Q(i): minpoly discriminant in the class of -1
    Scalar disc = a.minpoly[1] * a.minpoly[1] - Q()->from_int(4) * a.minpoly[0] * a.minpoly[2];
    CHECK(is_square(disc * Q()->from_int(-1)));
}

TEST_CASE("severi-brauer decompositions") {
    auto red = severi_brauer_motive(quat(), CoefficientRing::integers());
    REQUIRE(red.expr.terms.size() == 2); // U(Q) + U(H)
    CHECK(field_mass(red.expr) == 1);

    red = severi_brauer_motive(quat(), CoefficientRing::inverting({2}));
    CHECK(is_unit_expr(red.expr, 2));

    red = severi_brauer_motive(alg_matrix(Q(), 2), CoefficientRing::integers());
    CHECK(is_unit_expr(red.expr, 2));

    CHECK_THROWS_AS((void)severi_brauer_motive(alg_upper_triangular(Q(), 2), CoefficientRing::integers()),
                    Error);
}

TEST_CASE("degree-3 severi-brauer uses tensor powers") {
    Algebra m3 = alg_matrix(Q(), 3);
    auto red = severi_brauer_motive(m3, CoefficientRing::integers());
    CHECK(is_unit_expr(red.expr, 3));
    bool saw_tpow = false;
    for (const auto& s : red.trace) saw_tpow = saw_tpow || s.rule == "TPOW";
    CHECK(saw_tpow);
}

TEST_CASE("quadric closed forms (golden values)") {
    auto Z2 = CoefficientRing::inverting({2});
    CHECK(is_unit_expr(quadric_motive(diag_q({1, 1, 1}), Z2).expr, 2));
    CHECK(is_unit_expr(quadric_motive(diag_q({1, 1, 1, 1}), Z2).expr, 4));
    auto red = quadric_motive(diag_q({1, 1, 1, -1}), Z2);
    REQUIRE(red.expr.terms.size() == 2);
    mpq_class unit_copies = 0;
    int quadratic_fields = 0;
    for (const auto& t : red.expr.terms) {
        REQUIRE(t.atom.kind == MotiveAtom::Kind::Field);
        if (poly_degree(t.atom.minpoly) == 1) unit_copies = t.coeff;
        if (poly_degree(t.atom.minpoly) == 2) ++quadratic_fields;
    }
    CHECK(unit_copies == 3);
    CHECK(quadratic_fields == 1);
    CHECK_THROWS_AS((void)quadric_motive(diag_q({1, 1}), Z2), Error);
}

TEST_CASE("nilinvariance golden examples") {
    auto Z = CoefficientRing::integers();
    Algebra t2 = alg_upper_triangular(Q(), 2);
    auto r = nil_reduce(t2, jacobson_radical(t2), Z);
    CHECK(is_unit_expr(r.expr, 2));
    CHECK(r.licensed_by == "S/J(S) is separable");

    Algebra kr = alg_path(Q(), 2, {{0, 1}, {0, 1}});
    r = nil_reduce(kr, jacobson_radical(kr), Z);
    CHECK(is_unit_expr(r.expr, 2));

    auto F2 = Field::prime(2);
    Algebra dn = alg_dual_numbers(F2);
    IdealBasis eps{{Vec{F2->zero(), F2->one()}}};
    try {
        (void)nil_reduce(dn, eps, Z);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisUnsatisfied);
        CHECK(e.exit_code() == 2);
        CHECK(std::string(e.what()).find("finite_global_dimension = no") != std::string::npos);
    }
}

TEST_CASE("nil guards: non-ideal, non-nilpotent, non-radical ideals") {
    auto Z = CoefficientRing::integers();
    Algebra t2 = alg_upper_triangular(Q(), 2);
    Vec e11(t2.dim, Q()->zero());
    e11[0] = Q()->one();
    CHECK_THROWS_AS((void)nil_reduce(t2, IdealBasis{{e11}}, Z), Error); // not two-sided
    // zero ideal of matrix algebra: fine, reduces like the algebra itself
    auto r = nil_reduce(alg_matrix(Q(), 2), IdealBasis{}, Z);
    CHECK(is_unit_expr(r.expr, 1));
    // I = 0 is not J(S) for ut2... it is not the radical, and no quotient certificate given
    CHECK_THROWS_AS((void)nil_reduce(t2, IdealBasis{}, Z), Error);
    // an explicit finite-gldim assertion on S/I licenses the rule; the quotient is S
    // itself, which stays a stuck (non-semisimple) atom - a normal result
    r = nil_reduce(t2, IdealBasis{}, Z, GlDim::Yes);
    REQUIRE(r.expr.terms.size() == 1);
    CHECK(r.expr.terms[0].atom.kind == MotiveAtom::Kind::Algebra);
}

TEST_CASE("nil licensed by inverted characteristic") {
    // F_2[C_2] mod its radical: S/J separable fails? no - F_2 is separable; use a
    // group algebra whose semisimple quotient is separable but check the p branch via
    // a restricted field: actually every semisimple algebra over F_p is separable
    // (perfect field), so exercise the branch by the license string only
    auto F2 = Field::prime(2);
    Algebra g = alg_cyclic_group(F2, 2);
    g.fgd = GlDim::Yes; // hypothetical certificate; guards should then pass
    auto r = nil_reduce(g, jacobson_radical(g), CoefficientRing::integers());
    CHECK(is_unit_expr(r.expr, 1));
}

TEST_CASE("reduction is idempotent") {
    auto Z2 = CoefficientRing::inverting({2});
    std::vector<MotiveExpr> cases;
    cases.push_back(motive_atom(quat()));
    cases.push_back(motive_atom(even_clifford(diag_q({1, 1, 1, -1}))));
    cases.push_back(motive_atom(alg_cyclic_group(Q(), 4)));
    cases.push_back(severi_brauer_motive(quat(), CoefficientRing::integers()).expr);
    for (const auto& e : cases)
        for (const auto& ring : {CoefficientRing::integers(), Z2}) {
            auto once = motive_reduce(e, ring);
            auto twice = motive_reduce(once.expr, ring);
            CHECK(expr_equal(once.expr, twice.expr));
            CHECK(twice.trace.empty());
        }
}

TEST_CASE("monotone under enlarging the coefficient ring") {
    auto small = motive_reduce(motive_atom(quat()), CoefficientRing::integers());
    auto big = motive_reduce(small.expr, CoefficientRing::inverting({2, 3}));
    CHECK(is_unit_expr(big.expr, 1));
    // fully reduced expressions are stable under enlarging R
    auto red = motive_reduce(motive_atom(alg_cyclic_group(Q(), 4)), CoefficientRing::integers());
    auto red2 = motive_reduce(red.expr, CoefficientRing::inverting({2, 3, 5}));
    CHECK(expr_equal(red.expr, red2.expr));
}

TEST_CASE("HH0 fingerprint conservation on random semisimple algebras") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        // random product of matrix and commutative semisimple factors
        Algebra a = alg_matrix(Q(), 1 + rng() % 3);
        int extra = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < extra && a.dim <= 24; ++i) {
            if (rng() & 1)
                a = alg_product(a, alg_matrix(Q(), 1 + rng() % 3));
            else
                a = alg_product(a, alg_cyclic_group(Q(), 2 + rng() % 5));
        }
        auto red = motive_reduce(motive_atom(a), CoefficientRing::integers(), 7);
        for (const auto& t : red.expr.terms) CHECK(t.atom.kind == MotiveAtom::Kind::Field);
        CHECK(field_mass(red.expr) == hh0_dim(a));
    }
}

TEST_CASE("guard soundness: no AZU step without the primes") {
    // inspect rule traces: any AZU rewrite must quote a ring containing its rank primes
    auto Z3 = CoefficientRing::inverting({3});
    auto red = motive_reduce(motive_atom(quat()), Z3);
    for (const auto& s : red.trace) CHECK(s.rule != "AZU");
    REQUIRE(red.expr.terms.size() == 1);
    CHECK(red.expr.terms[0].atom.kind == MotiveAtom::Kind::Algebra);
    // sb over Z must leave U(H) untouched as well
    auto sb = severi_brauer_motive(quat(), CoefficientRing::integers());
    for (const auto& s : sb.trace) CHECK(s.rule != "AZU");
}

TEST_CASE("coefficient denominators are policed") {
    MotiveExpr e;
    e.terms.push_back({MotiveAtom::field_unit(Q()), mpq_class(1, 3)});
    CHECK_THROWS_AS((void)motive_reduce(e, CoefficientRing::inverting({2})), Error);
    CHECK_NOTHROW((void)motive_reduce(e, CoefficientRing::inverting({3})));
    CHECK_THROWS_AS((void)expr_scale(e, mpq_class(1, 5), CoefficientRing::inverting({3})), Error);
}

TEST_CASE("expression algebra: add, scale, canonical order") {
    MotiveExpr a = motive_atom(quat());
    MotiveExpr b;
    b.terms.push_back({MotiveAtom::field_unit(Q()), 2});
    MotiveExpr sum = expr_add(a, b);
    CHECK(sum.terms.size() == 2);
    MotiveExpr cancel = expr_add(sum, expr_scale(a, mpq_class(-1), CoefficientRing::integers()));
    CHECK(cancel.terms.size() == 1);
    CHECK(cancel.terms[0].coeff == 2);
}
