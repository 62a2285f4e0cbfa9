#ifndef WITTSUM_WITT_HPP
#define WITTSUM_WITT_HPP

#include "wittsum/ff.hpp"

#include <memory>
#include <vector>

namespace wittsum {

// Length-m Witt vector with coordinates in one field context.
struct WittVec {
    const FieldCtx* F = nullptr;
    std::vector<FieldElem> a;
};

// One term V^i([coeff * x^u]) of the input datum.
struct WittTerm {
    int level = 0;              // i in [0, m)
    std::vector<int64_t> u;     // exponent vector in Z^n
    FieldElem coeff;            // nonzero element of F_q
};

// f = sum of terms over the ground field F_q, q = p^a.
struct WittInput {
    const FieldCtx* F = nullptr; // F_q
    int m = 1;
    int n = 1;
    std::vector<WittTerm> terms;

    int64_t p() const { return F->p; }
    int a() const { return F->deg; }
    int64_t q() const { return F->size; }
};

// validation: coefficients nonzero in F, levels in range, exponent vectors of
// length n, (level, u) pairs distinct, at least one level-0 term
WittInput make_witt_input(const FieldCtx& F, int m, int n, std::vector<WittTerm> terms);

// (Z/p^m)[y]/(h) for the field F (absolute degree D over F_p), h the
// Teichmuller lift of the field modulus, with monomial and trace tables.
// y has multiplicative order q^k - 1, so iota is exponent arithmetic.
struct WittRing {
    const FieldCtx* F = nullptr;
    int m = 1;
    int64_t pm = 1; // p^m
    int D = 1;      // F->deg
    int64_t ord = 1;
    std::vector<int64_t> h;                    // monic, length D+1, mod p^m
    std::vector<std::vector<int64_t>> montable; // y^j for j in [0, ord)
    std::vector<int64_t> trace_mono;            // Tr(y^j) in Z/p^m
};

std::unique_ptr<WittRing> build_witt_ring(const FieldCtx& F, int m);

// ring element: length-D coefficient vector mod p^m
using WRElem = std::vector<int64_t>;

WRElem wr_zero(const WittRing& R);
WRElem wr_one(const WittRing& R);
WRElem wr_add(const WittRing& R, const WRElem& x, const WRElem& y);
WRElem wr_mul(const WittRing& R, const WRElem& x, const WRElem& y);

// iota(a_0,...,a_{m-1}) = sum_i p^i y^{dlog(a_i) p^{D-i} mod ord}
WRElem iota(const WittRing& R, const WittVec& x);

// trace down to (Z/p^m); the result must be a constant polynomial
int64_t wr_trace(const WittRing& R, const WRElem& z); // NonConstantTrace
int64_t witt_trace(const WittRing& R, const WittVec& x);

// Witt ring operations through the universal p-typical polynomials
// (ghost-component construction, cached per (p, m), m <= 4)
WittVec witt_add(const WittVec& x, const WittVec& y);
WittVec witt_mul(const WittVec& x, const WittVec& y);

// t(x) for a torus point given by coordinate dlogs in the field of R
// (R built over extend_field(f.F, k)); the slow path through witt_add
// exists in the tests as an oracle
int64_t eval_f_trace(const WittInput& f, const WittRing& R, const std::vector<int64_t>& t);
// FieldElem point variant; errors ZeroCoordinate
int64_t eval_f_trace(const WittInput& f, const WittRing& R, const std::vector<FieldElem>& x);

} // namespace wittsum

#endif
