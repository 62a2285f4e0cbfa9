#include "wittsum/util.hpp"

namespace wittsum {

int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

int64_t powmod64(int64_t a, int64_t e, int64_t n) {
    require(n > 0 && e >= 0, "BadArgument", "powmod64 needs n > 0, e >= 0");
    // go through gmp so n near 2^62 cannot overflow the multiply
    mpz_class base(static_cast<long>(((a % n) + n) % n)), mod(static_cast<long>(n)), out;
    mpz_powm_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e), mod.get_mpz_t());
    return out.get_si();
}

int64_t invmod64(int64_t a, int64_t n) {
    mpz_class x(static_cast<long>(((a % n) + n) % n)), mod(static_cast<long>(n)), out;
    int ok = mpz_invert(out.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    require(ok != 0, "NotInvertible", "no inverse of " + std::to_string(a) + " mod " + std::to_string(n));
    return out.get_si();
}

bool is_prime64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<int64_t> prime_factors64(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int64_t ipow64(int64_t p, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        require(r <= INT64_MAX / p, "Overflow", "ipow64 overflow");
        r *= p;
    }
    return r;
}

long valuation(const mpz_class& z, int64_t p) {
    require(z != 0, "BadArgument", "valuation of zero");
    mpz_class rem, pp(static_cast<long>(p));
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const mpq_class& r, int64_t p) {
    require(r != 0, "BadArgument", "valuation of zero");
    return valuation(mpz_class(r.get_num()), p) - valuation(mpz_class(r.get_den()), p);
}

mpz_class rational_mod(const mpq_class& r, const mpz_class& pT, int64_t p) {
    mpz_class den(r.get_den());
    require(mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)) == 0,
            "BadDenominator", "denominator not prime to p in rational_mod");
    mpz_class inv;
    int ok = mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pT.get_mpz_t());
    require(ok != 0, "BadDenominator", "denominator not invertible mod p^T");
    mpz_class out = mpz_class(r.get_num()) * inv;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), pT.get_mpz_t());
    return out;
}

std::string rat_str(const mpq_class& r) {
    mpq_class c(r);
    c.canonicalize();
    return c.get_str();
}

mpq_class parse_rat(const std::string& s) {
    mpq_class r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        fail("BadRational", "cannot parse rational '" + s + "'");
    r.canonicalize();
    return r;
}

int64_t euler_phi(int64_t n) {
    int64_t out = n;
    for (int64_t q : prime_factors64(n)) out = out / q * (q - 1);
    return out;
}

} // namespace wittsum
