#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wittsum/cyclo.hpp"
#include "wittsum/util.hpp"

using namespace wittsum;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<mpz_class>{-1, 1});
    CHECK(cyclotomic_poly(2) == std::vector<mpz_class>{1, 1});
    CHECK(cyclotomic_poly(3) == std::vector<mpz_class>{1, 1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<mpz_class>{1, 0, 1});
    CHECK(cyclotomic_poly(6) == std::vector<mpz_class>{1, -1, 1});
    CHECK(cyclotomic_poly(9) == std::vector<mpz_class>{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_poly(105).size() == 49); // first with a coefficient of 2
    CHECK(cyclotomic_poly(105)[7] == -2);
}

TEST_CASE("root powers reduce into the power basis") {
    CHECK(cyc_root_pow(4, 2) == cyc_from_int(4, -1));
    CHECK(cyc_root_pow(4, -1) == cyc_root_pow(4, 3));
    CHECK(cyc_root_pow(6, 2).coords == std::vector<mpq_class>{-1, 1}); // zeta_6^2 = zeta_6 - 1
    CHECK(cyc_root_pow(3, 3) == cyc_one(3));
}

TEST_CASE("difference of conjugate cube roots squares to -3") {
    CycElem d = cyc_sub(cyc_root_pow(3, 1), cyc_root_pow(3, 2));
    CHECK(cyc_mul(d, d) == cyc_from_int(3, -3));
}

TEST_CASE("all N-th roots sum to zero") {
    for (int64_t N : {3, 4, 6, 9, 12}) {
        CycElem s = cyc_zero(N);
        for (int64_t i = 0; i < N; ++i) s = cyc_add(s, cyc_root_pow(N, i));
        CHECK(s.is_zero());
    }
}

TEST_CASE("ring operations") {
    CycElem a = cyc_root_pow(8, 1);
    CHECK(cyc_mul(a, cyc_root_pow(8, 3)) == cyc_from_int(8, -1));
    CHECK(cyc_mul(a, cyc_root_pow(8, 7)) == cyc_one(8));
    CHECK(cyc_add(a, cyc_neg(a)).is_zero());
    CHECK(cyc_scale(cyc_from_int(8, 6), mpq_class(1, 2)) == cyc_from_int(8, 3));
    CHECK(cyc_from_int(8, 6).is_integral());
    CHECK_FALSE(cyc_scale(cyc_one(8), mpq_class(1, 2)).is_integral());
}

TEST_CASE("conductor lift") {
    CycElem z3 = cyc_root_pow(3, 1);
    CHECK(cyc_lift(z3, 12) == cyc_root_pow(12, 4));
    CycElem sum = cyc_add(z3, cyc_root_pow(3, 2));
    CHECK(cyc_lift(sum, 12) == cyc_from_int(12, -1));
    // lift respects multiplication
    CycElem z6 = cyc_root_pow(6, 1);
    CHECK(cyc_mul(cyc_lift(z6, 12), cyc_lift(z6, 12)) == cyc_lift(cyc_mul(z6, z6), 12));
}

TEST_CASE("subring membership") {
    CycElem z = cyc_root_pow(12, 2); // = zeta_6
    auto down = cyc_in_subring(z, 6);
    REQUIRE(down.has_value());
    CHECK(*down == cyc_root_pow(6, 1));
    CHECK_FALSE(cyc_in_subring(cyc_root_pow(12, 1), 6).has_value());

    // a rational disguised at conductor 9
    CycElem r = cyc_add(cyc_root_pow(9, 3), cyc_root_pow(9, 6)); // zeta_3 + zeta_3^2 = -1
    auto c = cyc_in_subring(r, 1);
    REQUIRE(c.has_value());
    CHECK(*c == cyc_from_int(1, -1));
}
