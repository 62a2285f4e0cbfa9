#ifndef WITTSUM_UTIL_HPP
#define WITTSUM_UTIL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittsum {

// All recoverable failures carry a short machine-readable code ("NotPrime",
// "PrecisionExhausted", ...) next to the human message, so tests and the CLI
// can dispatch on the condition without string-matching prose.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool ok, const std::string& code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

using std::int64_t;

int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
// a^e mod n for n > 0, e >= 0
int64_t powmod64(int64_t a, int64_t e, int64_t n);
// modular inverse of a mod n; requires gcd(a,n) = 1
int64_t invmod64(int64_t a, int64_t n);
bool is_prime64(int64_t n);
// ascending list of distinct prime divisors, trial division
std::vector<int64_t> prime_factors64(int64_t n);
// p^e as int64, throws Overflow when it does not fit
int64_t ipow64(int64_t p, int e);

// exact p-adic valuation of a nonzero integer
long valuation(const mpz_class& z, int64_t p);
// valuation of a nonzero rational (may be negative)
long valuation(const mpq_class& r, int64_t p);

// value of a rational mod p^T; requires the denominator prime to p
mpz_class rational_mod(const mpq_class& r, const mpz_class& pT, int64_t p);

std::string rat_str(const mpq_class& r);
mpq_class parse_rat(const std::string& s);

// Euler phi for small arguments
int64_t euler_phi(int64_t n);

} // namespace wittsum

#endif
