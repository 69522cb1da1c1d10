#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivecalc/intmat.hpp"
#include "motivecalc/matrix.hpp"
#include "motivecalc/numth.hpp"
#include "motivecalc/poly.hpp"

#include <random>

using namespace motivecalc;

TEST_CASE("rational scalars stay in lowest terms") {
    auto Q = Field::rationals();
    Scalar a = Q->from_rational(mpq_class(4, 6));
    CHECK(a.rational().get_num() == 2);
    CHECK(a.rational().get_den() == 3);
    Scalar b = a + Q->from_rational(mpq_class(1, 3));
    CHECK(b == Q->one());
    CHECK((a * a.inverse()) == Q->one());
}

TEST_CASE("prime field arithmetic and inverses") {
    auto F7 = Field::prime(7);
    for (long i = 1; i < 7; ++i) {
        Scalar x = F7->from_int(i);
        CHECK((x * x.inverse()) == F7->one());
    }
    CHECK(F7->from_int(3) + F7->from_int(5) == F7->from_int(1));
    CHECK_THROWS_AS((void)Field::prime(6), Error);
}

TEST_CASE("extension field arithmetic: Q(sqrt(2))") {
    auto Q = Field::rationals();
    auto K = make_extension(Q, {Q->from_int(-2), Q->zero(), Q->one()});
    Scalar r = K->generator();
    CHECK(r * r == K->from_int(2));
    Scalar x = r + K->one();
    CHECK((x * x.inverse()) == K->one());
    // x^2 - 2x - 1 = 0 for x = 1 + sqrt(2)
    CHECK(x * x - K->from_int(2) * x - K->one() == K->zero());
}

TEST_CASE("extension construction rejects reducible minpoly") {
    auto Q = Field::rationals();
    CHECK_THROWS_AS((void)make_extension(Q, {Q->from_int(-1), Q->zero(), Q->one()}), Error);
}

TEST_CASE("is_square over the supported fields") {
    auto Q = Field::rationals();
    CHECK(is_square(Q->from_rational(mpq_class(4, 9))));
    CHECK_FALSE(is_square(Q->from_int(-1)));
    CHECK_FALSE(is_square(Q->from_int(2)));
    auto F7 = Field::prime(7);
    CHECK_FALSE(is_square(F7->from_int(3)));
    CHECK(is_square(F7->from_int(2)));
    auto F9 = make_extension(Field::prime(3), {Field::prime(3)->from_int(1), Field::prime(3)->from_int(0),
                                               Field::prime(3)->one()});
    CHECK(is_square(F9->from_int(-1))); // every element of F_9 coming from F_3^x of even order...
}

TEST_CASE("matrix rank, kernel, solve") {
    auto Q = Field::rationals();
    Mat id(Q, 3, 3);
    for (size_t i = 0; i < 3; ++i) id.at(i, i) = Q->one();
    CHECK(id.rank() == 3);

    Mat m(Q, 2, 2);
    m.at(0, 0) = Q->from_int(1);
    m.at(0, 1) = Q->from_int(2);
    m.at(1, 0) = Q->from_int(2);
    m.at(1, 1) = Q->from_int(4);
    CHECK(m.rank() == 1);
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] * m.at(0, 0) + ker[0][1] * m.at(0, 1) == Q->zero());

    auto sol = m.solve({Q->from_int(3), Q->from_int(6)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] + Q->from_int(2) * (*sol)[1] == Q->from_int(3));
    CHECK_FALSE(m.solve({Q->from_int(1), Q->from_int(0)}).has_value());
}

TEST_CASE("determinant and minimal polynomial") {
    auto Q = Field::rationals();
    Mat m(Q, 2, 2);
    m.at(0, 0) = Q->from_int(0);
    m.at(0, 1) = Q->from_int(1);
    m.at(1, 0) = Q->from_int(-2);
    m.at(1, 1) = Q->from_int(0);
    CHECK(m.det() == Q->from_int(2));
    auto mp = m.min_poly(); // x^2 + 2
    REQUIRE(mp.size() == 3);
    CHECK(mp[0] == Q->from_int(2));
    CHECK(mp[1] == Q->zero());
    CHECK(mp[2] == Q->one());
}

TEST_CASE("congruence diagonalization") {
    auto Q = Field::rationals();
    Mat g(Q, 2, 2);
    g.at(0, 1) = Q->one();
    g.at(1, 0) = Q->one(); // hyperbolic plane
    auto [p, diag] = congruence_diagonalize(g);
    REQUIRE(diag.size() == 2);
    CHECK(!diag[0].is_zero());
    CHECK(!diag[1].is_zero());
    // P^T G P must be the claimed diagonal
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            Scalar s = Q->zero();
            for (size_t a = 0; a < 2; ++a)
                for (size_t b = 0; b < 2; ++b) s += p.at(a, i) * g.at(a, b) * p.at(b, j);
            CHECK(s == (i == j ? diag[i] : Q->zero()));
        }
}

TEST_CASE("polynomial factorization over F_p") {
    auto F5 = Field::prime(5);
    // x^4 - 1 = (x-1)(x+1)(x-2)(x+2) over F_5
    PolyVec f = {F5->from_int(-1), F5->zero(), F5->zero(), F5->zero(), F5->one()};
    auto fac = poly_factor(F5, f);
    CHECK(fac.factors.size() == 4);
    for (const auto& pf : fac.factors) {
        CHECK(poly_degree(pf.poly) == 1);
        CHECK(pf.multiplicity == 1);
    }
}

TEST_CASE("polynomial factorization over Q with multiplicities") {
    auto Q = Field::rationals();
    // (x^2+1)(x-3)^2
    PolyVec a = {Q->one(), Q->zero(), Q->one()};
    PolyVec b = {Q->from_int(-3), Q->one()};
    PolyVec f = polydetail::mul(a, polydetail::mul(b, b, Q), Q);
    auto fac = poly_factor(Q, f);
    REQUIRE(fac.factors.size() == 2);
    int quad = 0, lin = 0;
    for (const auto& pf : fac.factors) {
        if (poly_degree(pf.poly) == 2) {
            ++quad;
            CHECK(pf.multiplicity == 1);
        }
        if (poly_degree(pf.poly) == 1) {
            ++lin;
            CHECK(pf.multiplicity == 2);
        }
    }
    CHECK(quad == 1);
    CHECK(lin == 1);
    CHECK(poly_irreducible(Q, a));
    CHECK_FALSE(poly_irreducible(Q, f));
}

TEST_CASE("factorization reassembles the input") {
    std::mt19937_64 rng(11);
    for (const auto& k : {Field::rationals(), Field::prime(3), Field::prime(13)}) {
        for (int trial = 0; trial < 10; ++trial) {
            PolyVec f;
            size_t deg = 2 + rng() % 5;
            for (size_t i = 0; i <= deg; ++i) f.push_back(k->from_int(static_cast<long>(rng() % 11) - 5));
            f[deg] = k->one();
            polydetail::strip(f);
            if (poly_degree(f) < 1) continue;
            auto fac = poly_factor(k, f, 77);
            PolyVec prod = {fac.unit};
            for (const auto& pf : fac.factors)
                for (int m = 0; m < pf.multiplicity; ++m) prod = polydetail::mul(prod, pf.poly, k);
            REQUIRE(prod.size() == f.size());
            for (size_t i = 0; i < f.size(); ++i) CHECK(prod[i] == f[i]);
        }
    }
}

TEST_CASE("smith normal form: divisibility and unimodular transforms") {
    IntMat m(3, 3);
    m.at(0, 0) = 2;
    m.at(0, 1) = 4;
    m.at(1, 1) = 6;
    m.at(2, 2) = 9;
    auto s = smith_normal_form(m);
    for (size_t i = 0; i + 1 < s.diagonal.size(); ++i)
        if (s.diagonal[i + 1] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    // U m V = D
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            mpz_class acc = 0;
            for (size_t a = 0; a < 3; ++a)
                for (size_t b = 0; b < 3; ++b) acc += s.u.at(i, a) * m.at(a, b) * s.v.at(b, j);
            CHECK(acc == s.d.at(i, j));
        }
    CHECK(abs(s.u.det()) == 1);
    CHECK(abs(s.v.det()) == 1);
}

TEST_CASE("snf divisibility chains on random integer matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<long>(rng() % 21) - 10;
        auto s = smith_normal_form(m);
        for (size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
            if (s.diagonal[i] == 0) CHECK(s.diagonal[i + 1] == 0);
            else if (s.diagonal[i + 1] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
    }
}

TEST_CASE("hilbert symbols and quaternion splitting") {
    // (-1,-1) ramifies at 2 and infinity
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), 2) == -1);
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), 0) == -1);
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), 5) == 1);
    CHECK_FALSE(quaternion_is_split_q(mpq_class(-1), mpq_class(-1)));
    CHECK_FALSE(quaternion_is_split_q(mpq_class(-1), mpq_class(3)));
    CHECK(quaternion_is_split_q(mpq_class(1), mpq_class(7)));
    CHECK(quaternion_is_split_q(mpq_class(-1), mpq_class(2))); // norm form of Q(i) represents 2
}

TEST_CASE("integer factorization and square classes") {
    auto f = factor_integer(mpz_class(2 * 2 * 3 * 25));
    CHECK(f[mpz_class(2)] == 2);
    CHECK(f[mpz_class(3)] == 1);
    CHECK(f[mpz_class(5)] == 2);
    CHECK(square_class_rep_q(mpq_class(18)) == 2);
    CHECK(square_class_rep_q(mpq_class(-4, 9)) == -1);
    auto F7 = Field::prime(7);
    CHECK(square_class_rep(F7->from_int(2)) == F7->one());
    CHECK(square_class_rep(F7->from_int(3)) == F7->from_int(3)); // 3 = least nonresidue mod 7
}
