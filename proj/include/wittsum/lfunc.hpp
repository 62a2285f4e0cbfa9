#ifndef WITTSUM_LFUNC_HPP
#define WITTSUM_LFUNC_HPP

#include "wittsum/cyclo.hpp"
#include "wittsum/padic.hpp"
#include "wittsum/polytope.hpp"
#include "wittsum/witt.hpp"

#include <cstdint>
#include <vector>

namespace wittsum {

// S_k = (-1)^{n-1} sum over (F_{q^k}^x)^n of
// zeta_{q-1}^{-<s, dlog N(x)>} zeta_{p^m}^{t(x)}, exact in Q(zeta_{p^m(q-1)});
// the summation parallelizes over torus points when the range is large
CycElem exp_sum(const WittInput& f, const std::vector<int64_t>& s, int k);

// c_0..c_K of exp(sum_k S_k t^k / k) given S = {S_1, ..., S_K};
// error ConductorMismatch
std::vector<CycElem> l_coeffs(const std::vector<CycElem>& S);

// asserts c_i = 0 for degree < i <= degree + guard and c_degree != 0;
// error PolynomialityViolated names the offending index
void polynomiality_check(const std::vector<CycElem>& coeffs, int64_t degree, int guard);

// lower hull of the points (i, val(c_i)/a) in q-adic ordinates.  Coefficients
// with valuation above the precision cap are left out, which is sound only
// while the hull stays at or below the cap at the missing abscissas and the
// last nonzero coefficient is resolved; otherwise PrecisionExhausted
RatPolygon newton_polygon(const std::vector<CycElem>& coeffs, const LocalCtx& R);

// (1/a) sum_{i<a} P_{s p^i mod q-1} as rational multiplicities for the
// hodge polygon at M = D(q-1)
std::vector<mpq_class> averaged_weights(const NewtonData& nd, std::vector<int64_t> s,
                                        int64_t p, int a);

struct LPipeline {
    int guard = 2;   // zero coefficients verified past the degree
    long T = 0;      // starting precision; 0 picks 2 a degree + 4
    int retries = 6; // precision doublings before giving up
};

struct LSeriesResult {
    int64_t conductor = 1;
    std::vector<CycElem> S;      // S_1..S_K
    std::vector<CycElem> coeffs; // c_0..c_K, K = degree + guard
    int64_t degree = 0;          // n! Vol
    int guard = 2;
    long T_used = 0;
    RatPolygon newton;
    RatPolygon hodge;
    AboveReport comparison;
};

// sums, series coefficients, integrality, polynomiality at degree n!Vol,
// Newton polygon with precision retry, and the Hodge comparison
LSeriesResult theorem12_check(const WittInput& f, const std::vector<int64_t>& s,
                              const NewtonData& nd, const LPipeline& opt = {});

} // namespace wittsum

#endif
