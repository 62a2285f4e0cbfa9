#ifndef WITTSUM_DWORK_HPP
#define WITTSUM_DWORK_HPP

#include "wittsum/lfunc.hpp"
#include "wittsum/padic.hpp"
#include "wittsum/polytope.hpp"
#include "wittsum/witt.hpp"

#include <gmpxx.h>
#include <map>
#include <vector>

namespace wittsum {

// truncated lattice power series sum_u a_u x^u with exponents in the cone.
// Coefficients are exact mod p^T; a term is stored only when it is nonzero
// there and its degree stays within cutoff.  With cutoff >= decay_den * T
// nothing representable is lost: the decay bound val(a_u) >= deg(u)/decay_den
// forces every dropped term to vanish mod p^T.
struct SeriesExpansion {
    const LocalCtx* R = nullptr;
    mpq_class cutoff;
    int64_t decay_den = 1;
    std::map<std::vector<int64_t>, LocalElem> a;
};

// E(x) = exp(sum_i x^{p^i}/p^i) evaluated at a point of positive valuation,
// exact mod p^T (the tail dies by valuation growth)
LocalElem ah_eval(const LocalCtx& R, const LocalElem& x);

// product over terms V^i([a x^u]) of E(pi_{m-i} omega(a) x^u); decay 1/(p-1)
SeriesExpansion expand_Ef(const WittInput& f, const NewtonData& nd, const LocalCtx& R,
                          const mpq_class& cutoff);
// product of the ak Frobenius shifts E_f^{sigma^l}(x^{p^l});
// decay 1/(p^{ak-1}(p-1))
SeriesExpansion expand_Efqk(const WittInput& f, const NewtonData& nd, const LocalCtx& R, int k,
                            const mpq_class& cutoff);

// nullptr when the coefficient is zero mod p^T or out of range
const LocalElem* series_coeff(const SeriesExpansion& E, const std::vector<int64_t>& w);
SeriesExpansion series_product(const SeriesExpansion& A, const SeriesExpansion& B,
                               const NewtonData& nd, const mpq_class& cutoff, int64_t decay_den);
// substitute x -> x^e
SeriesExpansion series_power_subst(const SeriesExpansion& A, int64_t e, const NewtonData& nd,
                                   const mpq_class& cutoff);

struct DworkCheck {
    int64_t checked = 0; // sample points or coefficient terms compared
    long T = 0;
    mpq_class cutoff;
};

// splitting identity at sampled torus points of F_{q^k}^n given by dlog
// tuples: the additive character value of f(x) must match the series
// evaluated at the Teichmuller lift, mod p^T_check.  error CheckFailed
DworkCheck lemma23_check(const WittInput& f, const NewtonData& nd, int k,
                         const std::vector<std::vector<int64_t>>& samples, long T_check = 6);

// coefficient trace formula: embed_cyc(S_k) must equal
// (-1)^{n-1}(q^k-1)^n sum over the twisted lattice of a_{(q^k-1)u},
// truncated rigorously by the decay bound.  error CheckFailed
DworkCheck trace_formula_check(const WittInput& f, const NewtonData& nd,
                               const std::vector<int64_t>& s, int k, long T_check = 6);

} // namespace wittsum

#endif
