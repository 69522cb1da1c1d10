#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivecalc/quadform.hpp"

#include <random>

using namespace motivecalc;

namespace {
const FieldPtr& Q() {
    static FieldPtr q = Field::rationals();
    return q;
}

QuadraticForm diag_q(std::vector<long> entries) {
    std::vector<Scalar> d;
    for (long e : entries) d.push_back(Q()->from_int(e));
    return qf_from_diag(Q(), d);
}
} // namespace

TEST_CASE("form validation") {
    CHECK_THROWS_AS((void)diag_q({1, 0, 1}), Error);
    CHECK_THROWS_AS((void)qf_from_diag(Field::prime(2), {Field::prime(2)->one()}), Error);
    Mat g(Q(), 2, 2);
    g.at(0, 1) = Q()->one();
    CHECK_THROWS_AS((void)qf_from_gram(Q(), g), Error); // not symmetric
}

TEST_CASE("diagonalization of a dense gram matrix") {
    Mat g(Q(), 3, 3);
    g.at(0, 0) = Q()->from_int(2);
    g.at(0, 1) = g.at(1, 0) = Q()->from_int(1);
    g.at(1, 1) = Q()->from_int(3);
    g.at(1, 2) = g.at(2, 1) = Q()->from_int(-1);
    g.at(2, 2) = Q()->from_int(1);
    auto q = qf_from_gram(Q(), g);
    auto d = qf_diagonalize(q);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            Scalar s = Q()->zero();
            for (size_t a = 0; a < 3; ++a)
                for (size_t b = 0; b < 3; ++b) s += d.p.at(a, i) * g.at(a, b) * d.p.at(b, j);
            CHECK(s == (i == j ? d.diag[i] : Q()->zero()));
        }
}

TEST_CASE("signed determinant square classes") {
    // delta = (-1)^{n(n-1)/2} det
    auto sd = signed_determinant(diag_q({1, 1, 1})); // n=3: (-1)^3 * 1 = -1
    CHECK_FALSE(sd.square);
    CHECK(sd.representative == Q()->from_int(-1));
    sd = signed_determinant(diag_q({1, 1, 1, 1})); // n=4: (-1)^6 * 1 = 1
    CHECK(sd.square);
    sd = signed_determinant(diag_q({1, 1, 1, -1})); // n=4: -1
    CHECK_FALSE(sd.square);
    CHECK(sd.representative == Q()->from_int(-1));
    sd = signed_determinant(diag_q({1, -1})); // n=2: (-1)^1 * (-1) = 1
    CHECK(sd.square);
    sd = signed_determinant(diag_q({2, 18})); // det 36, n=2: -36, class -1
    CHECK(sd.representative == Q()->from_int(-1));
}

TEST_CASE("clifford multiplication table basics") {
    Algebra c = clifford(diag_q({-1, -1}));
    CHECK(c.dim == 4); // this is the quaternion algebra (-1,-1)
    auto rep = wedderburn(c, 1);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].e == 4);
    // generators square to the diagonal entries and anticommute
    Vec e1 = c.basis(1), e2 = c.basis(2);
    CHECK(c.mul(e1, e1) == Vec{-c.unit[0], c.unit[1], c.unit[2], c.unit[3]}); // -1 on the unit slot
    Vec anti = c.mul(e1, e2);
    Vec anti2 = c.mul(e2, e1);
    for (size_t i = 0; i < 4; ++i) CHECK(anti[i] == -anti2[i]);
}

TEST_CASE("even clifford of the hyperbolic plane splits") {
    Algebra c0 = even_clifford(diag_q({1, -1}));
    CHECK(c0.dim == 2);
    auto rep = wedderburn(c0, 1);
    CHECK(rep.components.size() == 2); // Q x Q
}

TEST_CASE("even clifford of <1,1> is Q(i)") {
    Algebra c0 = even_clifford(diag_q({1, 1}));
    auto rep = wedderburn(c0, 1);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].center_degree == 2);
    // center minpoly has discriminant in the square class of -1
    auto mp = rep.components[0].center_minpoly;
    REQUIRE(poly_degree(mp) == 2);
    Scalar disc = mp[1] * mp[1] - Q()->from_int(4) * mp[0] * mp[2];
    CHECK(is_square(disc * Q()->from_int(-1)));
}

TEST_CASE("structure predictions for the golden forms") {
    auto v = clifford_verify(diag_q({1, 1, 1}));
    CHECK(v.match);
    CHECK(v.prediction.n_odd);
    CHECK(v.prediction.even_shape == CliffordShape::CentralSimpleK);
    CHECK(v.prediction.full_shape == CliffordShape::CentralSimpleExt); // delta = -1 nonsquare

    v = clifford_verify(diag_q({1, 1, 1, 1}));
    CHECK(v.match);
    CHECK(v.prediction.full_shape == CliffordShape::CentralSimpleK);
    CHECK(v.prediction.even_shape == CliffordShape::ProductTwo); // delta = 1

    v = clifford_verify(diag_q({1, 1, 1, -1}));
    CHECK(v.match);
    CHECK(v.prediction.even_shape == CliffordShape::CentralSimpleExt);
}

TEST_CASE("clifford battery over Q and F_p (acceptance shadow)") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 2 + rng() % 4;
        std::vector<Scalar> d;
        for (size_t i = 0; i < n; ++i) {
            long v = 1 + static_cast<long>(rng() % 10);
            if (rng() & 1) v = -v;
            d.push_back(Q()->from_int(v));
        }
        auto v = clifford_verify(qf_from_diag(Q(), d));
        CHECK_MESSAGE(v.match, "Q form trial ", trial, ": ", v.detail);
        ++checked;
    }
    for (std::int64_t p : {3, 5, 7}) {
        auto F = Field::prime(p);
        for (int trial = 0; trial < 10; ++trial) {
            size_t n = 2 + rng() % 4;
            std::vector<Scalar> d;
            for (size_t i = 0; i < n; ++i) d.push_back(F->from_int(1 + static_cast<long>(rng() % (p - 1))));
            auto v = clifford_verify(qf_from_diag(F, d));
            CHECK_MESSAGE(v.match, "F_", p, " trial ", trial, ": ", v.detail);
            ++checked;
        }
    }
    CHECK(checked == 60);
}

TEST_CASE("dimension guard") {
    std::vector<Scalar> d(7, Q()->one());
    CHECK_THROWS_AS((void)clifford(qf_from_diag(Q(), d)), Error);
}
