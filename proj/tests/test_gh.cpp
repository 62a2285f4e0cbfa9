#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wittsum/gh.hpp"
#include "wittsum/lfunc.hpp"

using namespace wittsum;

namespace {

template <typename Fn>
std::string error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

WittTerm term(const FieldCtx& F, int lvl, std::vector<int64_t> u, int64_t dlog = 0) {
    return WittTerm{lvl, std::move(u), ff_from_dlog(F, dlog)};
}

mpq_class q(long n, long d = 1) {
    mpq_class x(n, d);
    x.canonicalize();
    return x;
}

RatPolygon poly(std::vector<std::pair<mpq_class, mpq_class>> v) { return RatPolygon{std::move(v)}; }

} // namespace

TEST_CASE("digit strings of twist indices") {
    auto d = digit_expansion(2, 2, 1);
    CHECK(d.digits == std::vector<int64_t>{1, 0});
    CHECK(d.digit_sum() == 1);
    CHECK(digit_expansion(2, 2, 2).digits == std::vector<int64_t>{0, 1});
    CHECK(digit_expansion(3, 1, 1).digits == std::vector<int64_t>{1});
    CHECK(digit_expansion(5, 1, 3).digits == std::vector<int64_t>{3});
    CHECK(digit_expansion(3, 2, 0).digits == std::vector<int64_t>{0, 0});

    CHECK(error_code_of([] { digit_expansion(3, 2, 8); }) == "OutOfRange");
    CHECK(error_code_of([] { digit_expansion(3, 2, -1); }) == "OutOfRange");
    CHECK(error_code_of([] { digit_expansion(2, 0, 0); }) == "OutOfRange");
}

TEST_CASE("digit strings agree with plain base expansion") {
    const std::pair<int64_t, int> grid[] = {{2, 2}, {3, 2}, {5, 1}, {3, 1}, {2, 3}};
    for (auto [p, a] : grid) {
        int64_t qq = 1;
        for (int i = 0; i < a; ++i) qq *= p;
        for (int64_t s = 0; s <= qq - 2; ++s) {
            auto d = digit_expansion(p, a, s);
            REQUIRE(d.digits.size() == static_cast<size_t>(a));
            int64_t rem = s, sum = 0;
            for (int l = 0; l < a; ++l) {
                CHECK(d.digits[static_cast<size_t>(l)] == rem % p);
                sum += rem % p;
                rem /= p;
            }
            CHECK(d.digit_sum() == sum);
        }
    }
}

TEST_CASE("explicit polygons at small conductor levels") {
    CHECK(gh_polygon(3, 1, 2, 0) ==
          poly({{q(0), q(0)}, {q(1), q(0)}, {q(2), q(1, 3)}, {q(3), q(1)}}));
    CHECK(gh_polygon(3, 1, 2, 1) ==
          poly({{q(0), q(0)}, {q(1), q(1, 6)}, {q(2), q(2, 3)}, {q(3), q(3, 2)}}));
    CHECK(gh_polygon(2, 1, 2, 0) == poly({{q(0), q(0)}, {q(1), q(0)}, {q(2), q(1, 2)}}));
    // single segment when the ring has no torsion part
    CHECK(gh_polygon(5, 1, 1, 3) == poly({{q(0), q(0)}, {q(1), q(3, 4)}}));
    CHECK(gh_polygon(2, 2, 1, 1) == poly({{q(0), q(0)}, {q(1), q(1, 2)}}));
    CHECK(gh_polygon(7, 1, 1, 5) == poly({{q(0), q(0)}, {q(1), q(5, 6)}}));
}

TEST_CASE("explicit polygons are convex with increasing slopes") {
    const std::tuple<int64_t, int, int> grid[] = {
        {2, 1, 3}, {2, 2, 2}, {3, 1, 2}, {3, 2, 2}, {5, 1, 2}};
    for (auto [p, a, m] : grid) {
        int64_t qq = 1;
        for (int i = 0; i < a; ++i) qq *= p;
        for (int64_t s = 0; s <= qq - 2; ++s) {
            auto P = gh_polygon(p, a, m, s);
            int64_t pm1 = 1;
            for (int i = 0; i < m - 1; ++i) pm1 *= p;
            REQUIRE(P.v.size() == static_cast<size_t>(pm1) + 1);
            mpq_class prev(-1);
            for (size_t i = 1; i < P.v.size(); ++i) {
                mpq_class slope = P.v[i].second - P.v[i - 1].second;
                CHECK(slope > prev);
                prev = slope;
            }
            // total height: (p^{m-1}-1)/2 plus the twist shift
            mpq_class want(pm1 - 1, 2);
            want += mpq_class(digit_expansion(p, a, s).digit_sum(), a * (p - 1));
            mpq_class back = P.v.back().second;
            back.canonicalize();
            want.canonicalize();
            CHECK(back == want);
        }
    }
}

TEST_CASE("factorial minor determinants match the telescoped product") {
    auto d1 = factorial_matrix_det(2, 0, 1);
    CHECK(d1.det == 1);
    CHECK(d1.unit);
    auto d2 = factorial_matrix_det(2, 0, 2);
    CHECK(d2.det == q(1, 3));
    CHECK(d2.unit);
    auto d3 = factorial_matrix_det(2, 1, 1);
    CHECK(d3.det == q(1, 3));
    CHECK(d3.unit);
    auto d4 = factorial_matrix_det(3, 0, 0);
    CHECK(d4.det == 1);
    CHECK(d4.unit);
    auto d5 = factorial_matrix_det(2, 1, 2);
    CHECK(d5.det == q(1, 45));
    CHECK(d5.unit);
    // closed form by hand: 2^3 (1! 2!) / (1! 3! 5!) = 16/720
    auto d6 = factorial_matrix_det(3, 1, 1);
    CHECK(d6.det == q(1, 8)); // 3 / (1! 4!)
    CHECK(d6.unit);

    for (int64_t p : {2, 3, 5})
        for (int64_t sd = 0; sd < p; ++sd)
            for (int n = 0; n <= 8; ++n) {
                auto r = factorial_matrix_det(p, sd, n);
                CHECK(r.det == r.closed);
                CHECK(r.unit);
            }

    CHECK(error_code_of([] { factorial_matrix_det(3, 3, 2); }) == "OutOfRange");
    CHECK(error_code_of([] { factorial_matrix_det(2, 0, -1); }) == "OutOfRange");
}

TEST_CASE("computed polygons match the closed form") {
    auto F3 = build_field(3, 1);

    SUBCASE("level-two ring, trivial twist") {
        auto f = make_witt_input(*F3, 2, 1, {term(*F3, 0, {1})});
        auto nd = build_delta(f);
        auto r = theorem12_check(f, {0}, nd);
        auto g = theorem13_check(f, 0, r.newton);
        CHECK(g.match);
        CHECK(g.predicted == gh_polygon(3, 1, 2, 0));
    }

    SUBCASE("level-two ring, nontrivial twist, all lifts of x") {
        auto fa = make_witt_input(*F3, 2, 1, {term(*F3, 0, {1})});
        auto fb = make_witt_input(*F3, 2, 1, {term(*F3, 0, {1}), term(*F3, 1, {1}, 0)});
        auto fc = make_witt_input(*F3, 2, 1, {term(*F3, 0, {1}), term(*F3, 1, {1}, 1)});
        auto want = gh_polygon(3, 1, 2, 1);
        for (const auto* f : {&fa, &fb, &fc}) {
            auto nd = build_delta(*f);
            auto r = theorem12_check(*f, {1}, nd);
            auto g = theorem13_check(*f, 1, r.newton);
            CHECK(g.match);
            CHECK(r.newton == want);
        }
    }

    SUBCASE("classical sums over the four-element field") {
        auto F4 = build_field(2, 2);
        auto f = make_witt_input(*F4, 1, 1, {term(*F4, 0, {1})});
        auto nd = build_delta(f);
        auto r = theorem12_check(f, {1}, nd);
        auto g = theorem13_check(f, 1, r.newton);
        CHECK(g.match);
        CHECK(r.newton == poly({{q(0), q(0)}, {q(1), q(1, 2)}}));
    }

    SUBCASE("classical sums over the three-element field") {
        auto f = make_witt_input(*F3, 1, 1, {term(*F3, 0, {1})});
        auto nd = build_delta(f);
        auto r = theorem12_check(f, {1}, nd);
        auto g = theorem13_check(f, 1, r.newton);
        CHECK(g.match);
    }
}

TEST_CASE("shape validation for the closed form") {
    auto F3 = build_field(3, 1);
    RatPolygon dummy = poly({{q(0), q(0)}, {q(1), q(1, 2)}});

    auto f2 = make_witt_input(*F3, 1, 2, {term(*F3, 0, {1, 0}), term(*F3, 0, {0, 1})});
    CHECK(error_code_of([&] { theorem13_check(f2, 1, dummy); }) == "BadInput");

    auto fg = make_witt_input(*F3, 1, 1, {term(*F3, 0, {1}, 1)});
    CHECK(error_code_of([&] { theorem13_check(fg, 1, dummy); }) == "BadInput");

    auto fsq = make_witt_input(*F3, 1, 1, {term(*F3, 0, {2})});
    CHECK(error_code_of([&] { theorem13_check(fsq, 1, dummy); }) == "BadInput");

    WittInput fup; // hand-rolled: no level-0 term
    fup.F = F3.get();
    fup.m = 2;
    fup.n = 1;
    fup.terms = {term(*F3, 1, {1})};
    CHECK(error_code_of([&] { theorem13_check(fup, 1, dummy); }) == "BadInput");
}
