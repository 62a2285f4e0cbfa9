#include "wittsum/gh.hpp"
#include "wittsum/linalg.hpp"
#include "wittsum/util.hpp"

#include <string>

namespace wittsum {

namespace {

mpz_class factorial(int64_t t) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(t));
    return r;
}

int64_t val_p(const mpz_class& z, int64_t p) {
    require(z != 0, "Internal", "valuation of zero");
    mpz_class q = z, r;
    int64_t v = 0;
    for (;;) {
        r = q % p;
        if (r != 0) return v;
        q /= p;
        ++v;
    }
}

} // namespace

DigitExpansion digit_expansion(int64_t p, int a, int64_t s) {
    require(p >= 2 && a >= 1, "OutOfRange", "need p >= 2 and a >= 1");
    int64_t q = ipow64(p, a);
    require(s >= 0 && s <= q - 2, "OutOfRange", "s must lie in [0, q-2]");
    // -s/(q-1) = num/den digit by digit: d = num den^{-1} mod p
    int64_t den = q - 1;
    int64_t den_inv = powmod64(den % p, p - 2, p);
    mpz_class num = -s;
    std::vector<int64_t> digits;
    for (int l = 0; l < 2 * a; ++l) {
        int64_t d = static_cast<int64_t>(mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)));
        d = d * den_inv % p;
        mpz_class next = num - mpz_class(d) * den;
        require(next % p == 0, "Internal", "digit extraction step not divisible");
        num = next / p;
        digits.push_back(d);
    }
    DigitExpansion out{p, a, s, {digits.begin(), digits.begin() + a}};
    for (int l = 0; l < a; ++l)
        require(digits[static_cast<size_t>(l)] == digits[static_cast<size_t>(l + a)], "Internal",
                "digit string is not periodic");
    int64_t rebuilt = 0;
    for (int l = a - 1; l >= 0; --l) rebuilt = rebuilt * p + out.digits[static_cast<size_t>(l)];
    require(rebuilt == s, "Internal", "digits disagree with the base-p expansion");
    return out;
}

RatPolygon gh_polygon(int64_t p, int a, int m, int64_t s) {
    require(m >= 1, "OutOfRange", "need m >= 1");
    auto de = digit_expansion(p, a, s);
    int64_t pm1 = ipow64(p, m - 1);
    RatPolygon out;
    out.v.emplace_back(mpq_class(0), mpq_class(0));
    for (int64_t k = 1; k <= pm1; ++k) {
        mpq_class y(static_cast<long>((k - 1) * k), static_cast<long>(2 * pm1));
        y.canonicalize();
        mpq_class tw(static_cast<long>(k * de.digit_sum()),
                     static_cast<long>(a * pm1 * (p - 1)));
        tw.canonicalize();
        y += tw;
        out.v.emplace_back(mpq_class(static_cast<long>(k)), y);
    }
    return out;
}

FactorialDet factorial_matrix_det(int64_t p, int64_t s_digit, int n) {
    require(p >= 2, "OutOfRange", "p must be >= 2");
    require(s_digit >= 0 && s_digit < p, "OutOfRange", "digit must lie in [0, p-1]");
    require(n >= 0, "OutOfRange", "n must be >= 0");

    QMat A(static_cast<size_t>(n + 1), QVec(static_cast<size_t>(n + 1)));
    for (int64_t i = 0; i <= n; ++i)
        for (int64_t j = 0; j <= n; ++j) {
            int64_t t = p * i - j + s_digit;
            if (t >= 0) {
                mpq_class b(1);
                b /= factorial(t);
                A[static_cast<size_t>(i)][static_cast<size_t>(j)] = b;
            }
        }
    FactorialDet out;
    out.det = det_exact(A);

    // scaling row i by (pi+s)! leaves falling factorials (pi+s)(pi+s-1)...(pi+s-j+1),
    // monic of degree j in the row parameter, so the determinant telescopes to the
    // Vandermonde product over x_i = pi+s divided by the row scalings
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(n) * (n + 1) / 2);
    for (int64_t j = 2; j <= n; ++j) num *= factorial(j);
    mpz_class den(1);
    for (int64_t i = 0; i <= n; ++i) den *= factorial(p * i + s_digit);
    out.closed = mpq_class(num);
    out.closed /= den;
    require(out.det == out.closed, "MismatchWithClosedForm",
            "determinant differs from the product at p = " + std::to_string(p) +
                ", digit " + std::to_string(s_digit) + ", n = " + std::to_string(n));
    out.unit = val_p(out.det.get_num(), p) == val_p(out.det.get_den(), p);
    return out;
}

GHReport theorem13_check(const WittInput& f, int64_t s, const RatPolygon& newton) {
    require(f.n == 1, "BadInput", "closed form needs a one-variable input");
    bool has_level0 = false;
    for (const auto& t : f.terms) {
        require(t.u == std::vector<int64_t>{1}, "BadInput",
                "closed form needs terms of the shape V^i([c x])");
        if (t.level == 0) {
            has_level0 = true;
            require(t.coeff.e == 0, "BadInput", "leading coefficient must be 1");
        }
    }
    require(has_level0, "BadInput", "leading coefficient must be 1");
    GHReport out;
    out.predicted = gh_polygon(f.p(), f.a(), f.m, s);
    out.match = newton == out.predicted;
    return out;
}

} // namespace wittsum
