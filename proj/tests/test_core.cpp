#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wittsum/linalg.hpp"
#include "wittsum/util.hpp"

#include <random>

using namespace wittsum;

namespace {
template <class F>
std::string error_code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}
} // namespace

TEST_CASE("integer helpers") {
    CHECK(gcd64(12, -18) == 6);
    CHECK(lcm64(4, 6) == 12);
    CHECK(powmod64(2, 62, 1000000007) == 145586002);
    CHECK(powmod64(5, 0, 7) == 1);
    CHECK(invmod64(3, 10) == 7);
    CHECK(error_code_of([] { invmod64(4, 10); }) == "NotInvertible");
    CHECK(is_prime64(2));
    CHECK(is_prime64((1LL << 31) - 1));
    CHECK_FALSE(is_prime64(561)); // Carmichael
    CHECK_FALSE(is_prime64(1));
    CHECK(prime_factors64(360) == std::vector<int64_t>{2, 3, 5});
    CHECK(ipow64(3, 4) == 81);
    CHECK(error_code_of([] { ipow64(10, 40); }) == "Overflow");
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("valuations and rational reduction") {
    CHECK(valuation(mpz_class(48), 2) == 4);
    CHECK(valuation(mpq_class(9, 4), 3) == 2);
    CHECK(valuation(mpq_class(1, 3), 3) == -1);
    CHECK(valuation(mpq_class(-27, 5), 3) == 3);

    mpz_class p5 = 243; // 3^5
    mpz_class half = rational_mod(mpq_class(1, 2), p5, 3);
    CHECK((half * 2) % p5 == 1);
    CHECK(rational_mod(mpq_class(-1), p5, 3) == 242);
    CHECK(error_code_of([&] { rational_mod(mpq_class(1, 3), p5, 3); }) == "BadDenominator");
}

TEST_CASE("rational strings") {
    CHECK(rat_str(mpq_class(-7, 3)) == "-7/3");
    CHECK(rat_str(mpq_class(5)) == "5");
    CHECK(parse_rat("-7/3") == mpq_class(-7, 3));
    CHECK(parse_rat("42") == mpq_class(42));
}

TEST_CASE("exact linear solve and determinant") {
    QMat A = {{mpq_class(2), mpq_class(1)}, {mpq_class(1), mpq_class(3)}};
    QVec b = {mpq_class(5), mpq_class(10)};
    auto x = solve_exact(A, b);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == mpq_class(1));
    CHECK((*x)[1] == mpq_class(3));
    CHECK(det_exact(A) == mpq_class(5));

    // inconsistent system
    QMat B = {{mpq_class(1), mpq_class(2)}, {mpq_class(2), mpq_class(4)}};
    QVec c = {mpq_class(1), mpq_class(3)};
    CHECK_FALSE(solve_exact(B, c).has_value());

    // rectangular, consistent
    QMat C = {{mpq_class(1), mpq_class(0)}, {mpq_class(0), mpq_class(1)}, {mpq_class(1), mpq_class(1)}};
    QVec d = {mpq_class(2), mpq_class(3), mpq_class(5)};
    auto y = solve_exact(C, d);
    REQUIRE(y.has_value());
    CHECK((*y)[0] == mpq_class(2));
    CHECK((*y)[1] == mpq_class(3));
}

TEST_CASE("integer matrix basics") {
    ZMat A = {{2, 0}, {0, 3}};
    CHECK(zmat_det(A) == 6);
    ZMat U = {{1, 1}, {0, 1}};
    ZMat V = zmat_inverse_unimodular(U);
    CHECK(zmat_mul(U, V) == zmat_identity(2));
    ZMat W = {{2, 0}, {0, 1}};
    CHECK(error_code_of([&] { zmat_inverse_unimodular(W); }) == "NotUnimodular");
}

TEST_CASE("smith normal form") {
    ZMat A = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    Smith s = smith_normal_form(A);
    CHECK(s.diag == std::vector<mpz_class>{2, 2, 156});
    CHECK(zmat_mul(zmat_mul(s.left, A), s.right) ==
          ZMat{{2, 0, 0}, {0, 2, 0}, {0, 0, 156}});

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        ZMat M(rows, std::vector<mpz_class>(cols));
        for (auto& row : M)
            for (auto& z : row) z = static_cast<long>(rng() % 19) - 9;
        Smith t = smith_normal_form(M);
        ZMat D = zmat_mul(zmat_mul(t.left, M), t.right);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                CHECK(D[i][j] == (i == j && i < t.diag.size() ? t.diag[i] : mpz_class(0)));
        for (size_t i = 0; i + 1 < t.diag.size(); ++i) {
            if (t.diag[i + 1] == 0) continue;
            CHECK(t.diag[i] != 0);
            CHECK(t.diag[i + 1] % t.diag[i] == 0);
        }
        CHECK((zmat_det(t.left) == 1 || zmat_det(t.left) == -1));
        CHECK((zmat_det(t.right) == 1 || zmat_det(t.right) == -1));
    }
}
