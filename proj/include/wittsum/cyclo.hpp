#ifndef WITTSUM_CYCLO_HPP
#define WITTSUM_CYCLO_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <vector>

namespace wittsum {

// Exact element of Q(zeta_N) in coordinates over the power basis
// 1, zeta, ..., zeta^{phi(N)-1} modulo the N-th cyclotomic polynomial.
// Everything downstream (exponential sums, L-coefficients) lives here, so the
// representation is deliberately boring: dense rational vectors, no floats.
struct CycElem {
    int64_t conductor = 1;
    std::vector<mpq_class> coords; // length phi(conductor)

    bool is_zero() const;
    bool is_integral() const; // all coordinates in Z
    bool operator==(const CycElem& o) const;
};

// Phi_N by recursive exact division of x^N - 1; cached per conductor.
const std::vector<mpz_class>& cyclotomic_poly(int64_t N);

CycElem cyc_zero(int64_t N);
CycElem cyc_one(int64_t N);
CycElem cyc_from_int(int64_t N, const mpq_class& v);
// zeta_N^i (i may be any integer, reduced mod N)
CycElem cyc_root_pow(int64_t N, int64_t i);
// reduce an arbitrary coefficient vector (position i holds the zeta_N^i
// coefficient) into the power basis
CycElem cyc_reduce(int64_t N, std::vector<mpq_class> dense);

CycElem cyc_add(const CycElem& a, const CycElem& b);
CycElem cyc_sub(const CycElem& a, const CycElem& b);
CycElem cyc_neg(const CycElem& a);
CycElem cyc_mul(const CycElem& a, const CycElem& b);
CycElem cyc_scale(const CycElem& a, const mpq_class& c);

// conductor inclusion zeta_N -> zeta_{N'}^{N'/N}; requires N | N'
CycElem cyc_lift(const CycElem& a, int64_t N2);
// exact membership test in the subring of conductor N0 | N: returns the
// element expressed at conductor N0 when it lies there
std::optional<CycElem> cyc_in_subring(const CycElem& a, int64_t N0);

} // namespace wittsum

#endif
