#ifndef WITTSUM_PADIC_HPP
#define WITTSUM_PADIC_HPP

#include "wittsum/cyclo.hpp"
#include "wittsum/ff.hpp"

#include <gmpxx.h>
#include <memory>
#include <vector>

namespace wittsum {

// Truncated model of Z_{p^d}[zeta_{p^m}] at precision p^T.
//
// The unramified part is (Z/p^T)[y]/(h) where h is the Teichmuller lift of
// the minimal polynomial of the residue field generator g, so y reduces to g
// and y^{p^d} = y holds on the nose.  The ramified part adjoins
// pi0 = zeta_{p^m} - 1 with Eisenstein minimal polynomial Phi_{p^m}(1+X) of
// degree e = (p-1)p^{m-1}.  An element is sum_{j<e} b_j(y) pi0^j.
//
// Valuations below the cap T are exact: the candidate values ord_p(b_j) + j/e
// have pairwise distinct fractional parts, so the minimum never cancels.
struct LocalCtx {
    int64_t p = 0;
    int d = 1;  // unramified degree
    int m = 1;  // zeta_{p^m} adjoined
    long T = 0; // arithmetic mod p^T
    int64_t e = 1;
    mpz_class pT;
    const FieldCtx* residue = nullptr;
    std::vector<mpz_class> h;   // monic, length d+1
    std::vector<mpz_class> eis; // Phi_{p^m}(1+X), monic, length e+1
    // image of the unramified basis under y -> y^p, for the Frobenius sigma
    std::vector<std::vector<mpz_class>> frob_basis;
};

struct LocalElem {
    const LocalCtx* R = nullptr;
    // c[j][t] is the coefficient of pi0^j y^t, stored in [0, p^T)
    std::vector<std::vector<mpz_class>> c;

    bool is_zero() const;
};

struct LocalVal {
    bool above_cap = false; // all that is known is val >= T
    mpq_class v;            // exact when above_cap is false
};

std::unique_ptr<LocalCtx> build_local(const FieldCtx& F, int m, long T);

// Teichmuller lift of the modulus polynomial of F at precision p^T
// (monic degree-deg(F) integer polynomial whose root satisfies y^{p^d} = y);
// shared with the Witt ring construction, which runs it at T = m.
std::vector<mpz_class> teichmuller_modulus(const FieldCtx& F, long T);

LocalElem local_zero(const LocalCtx& R);
LocalElem local_one(const LocalCtx& R);
LocalElem local_from_int(const LocalCtx& R, const mpz_class& z);
// pi0 = zeta_{p^m} - 1
LocalElem local_pi0(const LocalCtx& R);

LocalElem local_add(const LocalElem& a, const LocalElem& b);
LocalElem local_sub(const LocalElem& a, const LocalElem& b);
LocalElem local_neg(const LocalElem& a);
LocalElem local_mul(const LocalElem& a, const LocalElem& b);
LocalElem local_scale(const LocalElem& a, const mpz_class& z);
// multiply by a rational whose denominator is prime to p
LocalElem local_scale_rat(const LocalElem& a, const mpq_class& r);
LocalElem local_pow(const LocalElem& a, int64_t n);

bool local_eq(const LocalElem& a, const LocalElem& b);
// congruence mod p^k for k <= T; elements of valuation >= k are exactly 0 there
bool local_congruent(const LocalElem& a, const LocalElem& b, long k);
// drop an element to a context with the same field/m and lower precision
LocalElem local_reduce_to(const LocalElem& a, const LocalCtx& R2);

LocalVal local_val(const LocalElem& a);

// y^t for a Teichmuller exponent t (reduced mod p^d - 1)
LocalElem teichmuller(const LocalCtx& R, int64_t t);
// Teichmuller lift of a residue field element (zero lifts to zero)
LocalElem teichmuller(const LocalCtx& R, const FieldElem& x);
// (1 + pi0)^t = zeta_{p^m}^t
LocalElem zeta_pm_pow(const LocalCtx& R, int64_t t);
// reduction to the residue field: pi0 -> 0, y -> g
FieldElem local_residue(const LocalElem& a);

// sigma: y -> y^p fixing zeta_{p^m}
LocalElem local_frobenius(const LocalElem& a);

// unramified embedding into a context over an extension of the residue
// field (built with extend_field): y -> y'^{(q^k-1)/(q-1)}, pi0 -> pi0.
// Contexts must share p, m, T.  error CtxMismatch
LocalElem local_embed(const LocalElem& a, const LocalCtx& R2);

// inverse of a unit (valuation 0); error DivisionByZero otherwise
LocalElem local_inv(const LocalElem& a);

// simple-root Newton lifting: f given by ascending LocalElem coefficients,
// f'(x0) must be a unit and val(f(x0)) > 0; error HenselFails otherwise
LocalElem hensel_root(const std::vector<LocalElem>& f, const LocalElem& x0);

// Artin-Hasse exponential coefficients c_0..c_{nterms-1} as exact rationals
// (p-integral; the recurrence is n c_n = sum over p-power steps)
std::vector<mpq_class> artin_hasse(int64_t p, int nterms);

// Dwork element pi_level for 1 <= level <= m: the root of the truncated
// Artin-Hasse logarithm with val = 1/(p^{level-1}(p-1)), normalized so that
// E(pi_level) = zeta_{p^m}^{p^{m-level}}.  Found by inverting E via Newton
// from the seed zeta_{p^level} - 1 (the logarithm itself has negative-
// valuation terms at the seed for m >= 2, so E is the stable direction).
LocalElem dwork_pi(const LocalCtx& R, int level);

// image of a cyclotomic element: conductor N = p^{m'} M with m' <= m and
// M | p^d - 1; zeta_{p^m} -> 1 + pi0 and zeta_M -> y^{unit (p^d-1)/M}.
// The default unit 1 sends zeta_{q-1} to the Teichmuller lift of the field
// generator, matching the norm-compatible tower.
LocalElem embed_cyc(const CycElem& a, const LocalCtx& R, int64_t unit = 1);

} // namespace wittsum

#endif
