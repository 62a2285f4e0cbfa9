#ifndef WITTSUM_FF_HPP
#define WITTSUM_FF_HPP

#include "wittsum/util.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace wittsum {

// F_{p^deg} with full discrete-log tables relative to a fixed multiplicative
// generator.  Elements are stored as generator exponents, so multiplication is
// exponent arithmetic and addition goes through the power/dlog tables.  Sizes
// stay at desk scale (p^deg up to ~10^5), which keeps the tables cheap and all
// downstream Teichmuller exponent bookkeeping exact.
//
// Extension contexts carry a pointer to their base field and a generator
// chosen norm-compatibly: g_k^{(q^k-1)/(q-1)} equals the embedded base
// generator.  That single convention is what makes Teichmuller lifts,
// character twists and Witt traces agree across levels without conversion
// tables.
struct FieldCtx {
    int64_t p = 0;
    int deg = 0;       // over F_p
    int64_t size = 0;  // p^deg
    int64_t order = 0; // p^deg - 1
    // monic modulus over F_p, ascending coefficients, modulus[deg] = 1
    std::vector<int64_t> modulus;
    // encoding of an element: sum c_i p^i for its coefficient vector
    int64_t generator_code = 0;
    std::vector<int64_t> pow_table;  // exponent -> code
    std::vector<int64_t> dlog_table; // code -> exponent, -1 at zero
    // extension bookkeeping (null for a ground field built by build_field)
    const FieldCtx* base = nullptr;
    int64_t ext_k = 1;
    int64_t embed_mult = 1; // dlog multiplier of base -> this

    std::vector<int64_t> decode(int64_t code) const;
    int64_t encode(const std::vector<int64_t>& poly) const;
};

struct FieldElem {
    const FieldCtx* F = nullptr;
    int64_t e = -1; // dlog, -1 encodes zero

    bool is_zero() const { return e < 0; }
    bool operator==(const FieldElem& o) const { return F == o.F && e == o.e; }
};

// Deterministic construction: when no modulus is supplied, scan monic degree
// polynomials in increasing code order and take the first irreducible one
// whose canonical root x is a multiplicative generator; that root becomes g.
// A user-supplied modulus is validated for irreducibility and the generator
// is then the least-code element of full multiplicative order.
std::unique_ptr<FieldCtx> build_field(int64_t p, int deg,
                                      std::optional<std::vector<int64_t>> modulus = std::nullopt);

// F_{q^k} over base = F_q with a norm-compatible generator and recorded
// embedding.  The base context must outlive the extension.
std::unique_ptr<FieldCtx> extend_field(const FieldCtx& base, int64_t k);

FieldElem ff_zero(const FieldCtx& F);
FieldElem ff_one(const FieldCtx& F);
FieldElem ff_gen(const FieldCtx& F);
FieldElem ff_from_dlog(const FieldCtx& F, int64_t e);
// element from an F_p coefficient vector (ascending, length <= deg)
FieldElem ff_from_poly(const FieldCtx& F, const std::vector<int64_t>& poly);

int64_t ff_dlog(const FieldElem& x); // error DlogOfZero on 0

FieldElem ff_add(const FieldElem& a, const FieldElem& b);
FieldElem ff_neg(const FieldElem& a);
FieldElem ff_sub(const FieldElem& a, const FieldElem& b);
FieldElem ff_mul(const FieldElem& a, const FieldElem& b);
FieldElem ff_inv(const FieldElem& a);
FieldElem ff_pow(const FieldElem& a, int64_t e);
FieldElem ff_frobenius(const FieldElem& a, int64_t j = 1); // a^{p^j}

// base element into an extension built from that base
FieldElem ff_embed(const FieldElem& x, const FieldCtx& ext);
// norm/trace of an extension element down to the base field
FieldElem ff_norm(const FieldElem& x);
FieldElem ff_trace(const FieldElem& x);

// dense polynomial helpers over F_p (ascending coefficients); exposed for the
// nondegeneracy search and tests
std::vector<int64_t> fp_poly_mulmod(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                                    const std::vector<int64_t>& f, int64_t p);
std::vector<int64_t> fp_poly_gcd(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p);
bool fp_poly_irreducible(const std::vector<int64_t>& f, int64_t p);

} // namespace wittsum

#endif
