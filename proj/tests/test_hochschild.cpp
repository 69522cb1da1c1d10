#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motivecalc/hochschild.hpp"

using namespace motivecalc;

namespace {
const FieldPtr& Q() {
    static FieldPtr q = Field::rationals();
    return q;
}

Algebra field_alg(const FieldPtr& k) {
    Algebra a;
    a.field = k;
    a.dim = 1;
    a.table = {{{k->one()}}};
    a.unit = {k->one()};
    a.fgd = GlDim::Yes;
    a.label = "k";
    alg_validate(a);
    return a;
}
} // namespace

TEST_CASE("hh0 via commutator ranks") {
    CHECK(hh0_dim(alg_quaternion(Q(), Q()->from_int(-1), Q()->from_int(-1))) == 1);
    CHECK(hh0_dim(alg_matrix(Field::prime(5), 2)) == 1);
    auto K = make_extension(Q(), {Q()->one(), Q()->zero(), Q()->one()});
    Algebra ka;
    ka.field = Q();
    ka.dim = 2; // Q[t]/(t^2+1) as a Q-algebra
    ka.table = {{{Q()->one(), Q()->zero()}, {Q()->zero(), Q()->one()}},
                {{Q()->zero(), Q()->one()}, {-Q()->one(), Q()->zero()}}};
    ka.unit = {Q()->one(), Q()->zero()};
    alg_validate(ka);
    CHECK(hh0_dim(ka) == 2);
    (void)K;
    CHECK(hh0_dim(alg_matrix(Q(), 2)) == 1);
    CHECK(hh0_dim(alg_upper_triangular(Q(), 2)) == 2);
}

TEST_CASE("bar homology of small algebras (exact)") {
    CHECK(hh_dims(field_alg(Q()), 3).dims == std::vector<size_t>{1, 0, 0, 0});
    CHECK(hh_dims(alg_matrix(Q(), 2), 2).dims == std::vector<size_t>{1, 0, 0});
    CHECK(hh_dims(alg_upper_triangular(Q(), 2), 2).dims == std::vector<size_t>{2, 0, 0});
    CHECK(hh_dims(alg_product(field_alg(Q()), field_alg(Q())), 2).dims == std::vector<size_t>{2, 0, 0});
}

TEST_CASE("hh0 agrees with hh_dims at degree zero") {
    for (const Algebra& a : {alg_matrix(Q(), 2), alg_upper_triangular(Q(), 3), alg_dual_numbers(Q()),
                             alg_cyclic_group(Q(), 3)}) {
        CHECK(hh_dims(a, 0).dims[0] == hh0_dim(a));
    }
}

TEST_CASE("morita invariance instance: matrix algebras look like the base field") {
    auto base = hh_dims(field_alg(Q()), 3).dims;
    CHECK(hh_dims(alg_matrix(Q(), 2), 3).dims == base);
    CHECK(hh_dims(alg_matrix(Q(), 3), 3, 100000).dims == base); // multi-modular rank path
}

TEST_CASE("additivity instance: triangular T(A) doubles the dimensions") {
    for (const Algebra& a : {field_alg(Q()), alg_product(field_alg(Q()), field_alg(Q())),
                             alg_upper_triangular(Q(), 2)}) {
        auto one = hh_dims(a, 2).dims;
        auto two = hh_dims(alg_triangular_T(a), 2, 100000).dims;
        REQUIRE(one.size() == two.size());
        for (size_t i = 0; i < one.size(); ++i) CHECK(two[i] == 2 * one[i]);
    }
}

TEST_CASE("product rule on small instances") {
    Algebra a = alg_matrix(Q(), 2);
    Algebra b = alg_dual_numbers(Q());
    auto pa = hh_dims(a, 2).dims;
    auto pb = hh_dims(b, 2).dims;
    auto pp = hh_dims(alg_product(a, b), 2, 100000).dims;
    for (size_t i = 0; i < pp.size(); ++i) CHECK(pp[i] == pa[i] + pb[i]);
}

TEST_CASE("nilinvariance instance: Kronecker quiver vs Q x Q") {
    CHECK(hh_dims(alg_path(Q(), 2, {{0, 1}, {0, 1}}), 2).dims == std::vector<size_t>{2, 0, 0});
    CHECK(hh_dims(alg_product(field_alg(Q()), field_alg(Q())), 2).dims == std::vector<size_t>{2, 0, 0});
}

TEST_CASE("dual numbers have homology in every degree") {
    // k[eps]: HH_d has dimension 1 in each degree (char 0)
    auto h = hh_dims(alg_dual_numbers(Q()), 4);
    CHECK(h.dims == std::vector<size_t>{2, 1, 1, 1, 1});
}

TEST_CASE("finite field coefficients") {
    auto F5 = Field::prime(5);
    CHECK(hh_dims(alg_matrix(F5, 2), 2).dims == std::vector<size_t>{1, 0, 0});
    CHECK(hh_dims(alg_matrix(F5, 3), 3, 100000).dims == std::vector<size_t>{1, 0, 0, 0});
}

TEST_CASE("resource caps") {
    CHECK_THROWS_AS((void)hh_dims(alg_matrix(Q(), 2), 5), Error); // max_degree > 4
    try {
        (void)hh_dims(alg_matrix(Q(), 3), 3); // C_4 = 9*8^4 over the default cell cap
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.exit_code() == 4);
    }
}

TEST_CASE("chain dimensions of the normalized complex") {
    auto h = hh_dims(alg_matrix(Q(), 2), 2);
    CHECK(h.chain_dims == std::vector<size_t>{4, 12, 36, 108}); // includes C_{d+1} for rank(b_{d+1})
}
