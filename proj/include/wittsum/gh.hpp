#ifndef WITTSUM_GH_HPP
#define WITTSUM_GH_HPP

#include "wittsum/polytope.hpp"
#include "wittsum/witt.hpp"

#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace wittsum {

// base-p digits of s, derived as the p-adic expansion of -s/(q-1)
// (whose digit string is s_0 s_1 ... s_{a-1} repeating)
struct DigitExpansion {
    int64_t p = 2;
    int a = 1;
    int64_t s = 0;
    std::vector<int64_t> digits;
    int64_t digit_sum() const {
        int64_t t = 0;
        for (int64_t d : digits) t += d;
        return t;
    }
};
// error OutOfRange unless 0 <= s <= p^a - 2
DigitExpansion digit_expansion(int64_t p, int a, int64_t s);

// explicit polygon with vertices (0,0) and, for k = 1..p^{m-1},
// (k, (k-1)k/(2 p^{m-1}) + k digitsum / (a p^{m-1}(p-1)))
RatPolygon gh_polygon(int64_t p, int a, int m, int64_t s);

// det(b_{pi-j+s})_{0<=i,j<=n} with b_t = 1/t! (t >= 0, else 0), against the
// closed form p^{n(n+1)/2} prod_j j! / prod_i (pi+s)!; error
// MismatchWithClosedForm when they differ
struct FactorialDet {
    mpq_class det;
    mpq_class closed;
    bool unit = false; // p-adic valuation zero
};
FactorialDet factorial_matrix_det(int64_t p, int64_t s_digit, int n);

// one-variable inputs sum_i V^i([c_i x]) with c_0 = 1: the computed Newton
// polygon must equal the explicit one.  error BadInput on other shapes
struct GHReport {
    RatPolygon predicted;
    bool match = false;
};
GHReport theorem13_check(const WittInput& f, int64_t s, const RatPolygon& newton);

} // namespace wittsum

#endif
