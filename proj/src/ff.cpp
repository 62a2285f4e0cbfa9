#include "wittsum/ff.hpp"

#include <algorithm>

namespace wittsum {

namespace {

using Poly = std::vector<int64_t>;

Poly trim(Poly v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

int64_t pmod(int64_t a, int64_t p) { return ((a % p) + p) % p; }

Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return trim(c);
}

Poly poly_rem(Poly a, const Poly& f, int64_t p) {
    const size_t df = f.size() - 1;
    int64_t lead_inv = invmod64(f.back(), p);
    a = trim(std::move(a));
    while (a.size() > df) {
        int64_t c = a.back() % p;
        if (c != 0) {
            int64_t q = c * lead_inv % p;
            size_t shift = a.size() - 1 - df;
            for (size_t i = 0; i < f.size(); ++i)
                a[shift + i] = pmod(a[shift + i] - q * f[i], p);
        }
        a.pop_back();
        a = trim(std::move(a));
    }
    return a;
}

} // namespace

std::vector<int64_t> fp_poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    return poly_rem(poly_mul(a, b, p), f, p);
}

std::vector<int64_t> fp_poly_gcd(Poly a, Poly b, int64_t p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) { // monic normalization
        int64_t inv = invmod64(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

namespace {

// x^e mod f by binary exponentiation
Poly poly_xpow(int64_t e, const Poly& f, int64_t p) {
    Poly result{1}, base = poly_rem(Poly{0, 1}, f, p);
    while (e > 0) {
        if (e & 1) result = fp_poly_mulmod(result, base, f, p);
        base = fp_poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

} // namespace

bool fp_poly_irreducible(const Poly& f, int64_t p) {
    Poly g = trim(f);
    if (g.size() < 2) return false;
    const int d = static_cast<int>(g.size()) - 1;
    if (d == 1) return true;
    // a proper factor would have degree <= d/2 and hence divide some
    // x^{p^j} - x with j <= d/2
    for (int j = 1; 2 * j <= d; ++j) {
        Poly t = poly_xpow(ipow64(p, j), g, p);
        if (t.size() < 2) t.resize(2, 0);
        t[1] = pmod(t[1] - 1, p);
        t = trim(std::move(t));
        Poly gc = fp_poly_gcd(g, t, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

std::vector<int64_t> FieldCtx::decode(int64_t code) const {
    std::vector<int64_t> v(deg, 0);
    for (int i = 0; i < deg; ++i) {
        v[i] = code % p;
        code /= p;
    }
    return v;
}

int64_t FieldCtx::encode(const std::vector<int64_t>& poly) const {
    require(static_cast<int>(poly.size()) <= deg, "LengthMismatch", "encode: poly too long");
    int64_t code = 0;
    for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
        require(poly[i] >= 0 && poly[i] < p, "BadArgument", "encode: coefficient out of range");
        code = code * p + poly[i];
    }
    return code;
}

namespace {

bool has_full_order(const Poly& elem, const Poly& f, int64_t p, int64_t ord,
                    const std::vector<int64_t>& ord_primes) {
    auto ppow = [&](int64_t e) {
        Poly result{1}, base = elem;
        while (e > 0) {
            if (e & 1) result = fp_poly_mulmod(result, base, f, p);
            base = fp_poly_mulmod(base, base, f, p);
            e >>= 1;
        }
        return result;
    };
    const Poly one{1};
    if (ppow(ord) != one) return false;
    for (int64_t l : ord_primes)
        if (ppow(ord / l) == one) return false;
    return true;
}

void build_tables(FieldCtx& F, const Poly& gen_poly) {
    F.pow_table.assign(static_cast<size_t>(F.order), 0);
    F.dlog_table.assign(static_cast<size_t>(F.size), -1);
    Poly cur{1};
    for (int64_t t = 0; t < F.order; ++t) {
        int64_t code = F.encode(cur);
        F.pow_table[static_cast<size_t>(t)] = code;
        require(F.dlog_table[static_cast<size_t>(code)] == -1, "NotGenerator",
                "generator order smaller than q-1");
        F.dlog_table[static_cast<size_t>(code)] = t;
        cur = fp_poly_mulmod(cur, gen_poly, F.modulus, F.p);
    }
    require(trim(cur) == Poly{1}, "NotGenerator", "generator does not have order q-1");
    F.generator_code = F.pow_table[F.order == 1 ? 0 : 1];
}

} // namespace

std::unique_ptr<FieldCtx> build_field(int64_t p, int deg, std::optional<std::vector<int64_t>> modulus) {
    require(p >= 2 && is_prime64(p), "NotPrime", "p = " + std::to_string(p) + " is not prime");
    require(deg >= 1, "BadArgument", "deg must be >= 1");

    auto F = std::make_unique<FieldCtx>();
    F->p = p;
    F->deg = deg;
    F->size = ipow64(p, deg);
    F->order = F->size - 1;
    const auto ord_primes = prime_factors64(std::max<int64_t>(F->order, 1));

    if (modulus) {
        Poly f = trim(*modulus);
        require(static_cast<int>(f.size()) == deg + 1 && f.back() == 1, "BadModulus",
                "modulus must be monic of the requested degree");
        for (auto c : f) require(c >= 0 && c < p, "BadModulus", "modulus coefficient out of range");
        require(fp_poly_irreducible(f, p), "ReducibleModulus", "supplied modulus is reducible");
        F->modulus = f;
        // least-code element of full multiplicative order becomes the generator
        Poly gen;
        for (int64_t code = 1; code < F->size; ++code) {
            Poly cand = trim(F->decode(code));
            if (F->order == 1 || has_full_order(cand, f, p, F->order, ord_primes)) {
                gen = cand;
                break;
            }
        }
        require(!gen.empty(), "NotGenerator", "no generator found (internal)");
        build_tables(*F, gen);
        return F;
    }

    // scan monic polynomials in code order; first irreducible one whose
    // canonical root x generates the unit group wins
    for (int64_t code = 0; code < F->size; ++code) {
        Poly f = F->decode(code);
        f.push_back(1); // monic of degree `deg`
        if (!fp_poly_irreducible(f, p)) continue;
        Poly x = poly_rem(Poly{0, 1}, f, p);
        if (F->order > 1 && !has_full_order(x, f, p, F->order, ord_primes)) continue;
        if (F->order == 1 && trim(x).empty()) continue; // F_2 needs root 1, not 0
        F->modulus = f;
        build_tables(*F, x);
        return F;
    }
    fail("NotGenerator", "no irreducible modulus with primitive canonical root (internal)");
}

std::unique_ptr<FieldCtx> extend_field(const FieldCtx& base, int64_t k) {
    require(k >= 1, "BadArgument", "extension degree must be >= 1");
    if (k == 1) {
        auto F = std::make_unique<FieldCtx>(base);
        F->base = &base;
        F->ext_k = 1;
        F->embed_mult = 1;
        return F;
    }
    auto F = build_field(base.p, base.deg * static_cast<int>(k));
    F->base = &base;
    F->ext_k = k;
    F->embed_mult = F->order / base.order;

    // minimal polynomial of the base generator over F_p: prod (Y - g^{p^j})
    std::vector<FieldElem> roots;
    {
        FieldElem c{&base, base.order == 1 ? 0 : 1};
        // coefficients of prod (Y - conj) computed inside the base field
        std::vector<FieldElem> mp{ff_one(base)};
        for (int j = 0; j < base.deg; ++j) {
            FieldElem conj = ff_frobenius(c, j);
            std::vector<FieldElem> next(mp.size() + 1, ff_zero(base));
            for (size_t t = 0; t < mp.size(); ++t) {
                next[t + 1] = ff_add(next[t + 1], mp[t]);
                next[t] = ff_add(next[t], ff_mul(ff_neg(conj), mp[t]));
            }
            mp = std::move(next);
        }
        // coefficients must be scalars in F_p
        Poly mp_fp(mp.size(), 0);
        for (size_t t = 0; t < mp.size(); ++t) {
            if (mp[t].is_zero()) continue;
            Poly rep = base.decode(base.pow_table[static_cast<size_t>(mp[t].e)]);
            for (size_t i = 1; i < rep.size(); ++i)
                require(rep[i] == 0, "Internal", "minimal polynomial coefficient not in F_p");
            mp_fp[t] = rep.empty() ? 0 : rep[0];
        }
        // roots of mp_fp inside the extension
        for (int64_t code = 1; code < F->size; ++code) {
            int64_t e = F->dlog_table[static_cast<size_t>(code)];
            FieldElem x{F.get(), e};
            FieldElem acc = ff_zero(*F);
            FieldElem xp = ff_one(*F);
            for (size_t t = 0; t < mp_fp.size(); ++t) {
                if (mp_fp[t] != 0) {
                    // scalar c in F_p acts as a c-fold sum of xp
                    FieldElem term = ff_zero(*F);
                    for (int64_t r = 0; r < mp_fp[t]; ++r) term = ff_add(term, xp);
                    acc = ff_add(acc, term);
                }
                xp = ff_mul(xp, x);
            }
            if (acc.is_zero()) roots.push_back(x);
        }
        require(static_cast<int>(roots.size()) == base.deg, "Internal",
                "conjugate count mismatch while embedding");
    }

    // smallest exponent e with gcd(e, q^k-1) = 1 whose norm-power lands on a
    // conjugate of the base generator; this fixes generator and embedding at once
    const int64_t ord = F->order;
    const int64_t nexp = ord / base.order; // (q^k-1)/(q-1)
    int64_t chosen = -1;
    for (int64_t e = 1; e < ord; ++e) {
        if (gcd64(e, ord) != 1) continue;
        int64_t norm_dlog = static_cast<int64_t>((__int128)e * nexp % ord);
        for (const auto& r : roots)
            if (r.e == norm_dlog) {
                chosen = e;
                break;
            }
        if (chosen >= 0) break;
    }
    require(chosen >= 0, "NotGenerator", "no norm-compatible generator (internal)");

    // re-index the tables so dlogs are relative to g_k = G^chosen
    std::vector<int64_t> pow2(static_cast<size_t>(ord));
    for (int64_t t = 0; t < ord; ++t)
        pow2[static_cast<size_t>(t)] =
            F->pow_table[static_cast<size_t>((__int128)chosen * t % ord)];
    F->pow_table = std::move(pow2);
    for (int64_t t = 0; t < ord; ++t) F->dlog_table[static_cast<size_t>(F->pow_table[t])] = t;
    F->generator_code = F->pow_table[1];
    return F;
}

FieldElem ff_zero(const FieldCtx& F) { return {&F, -1}; }
FieldElem ff_one(const FieldCtx& F) { return {&F, 0}; }
FieldElem ff_gen(const FieldCtx& F) { return {&F, F.order == 1 ? 0 : 1}; }

FieldElem ff_from_dlog(const FieldCtx& F, int64_t e) {
    if (e < 0) return ff_zero(F);
    return {&F, e % F.order};
}

FieldElem ff_from_poly(const FieldCtx& F, const std::vector<int64_t>& poly) {
    std::vector<int64_t> v(poly);
    for (auto& c : v) c = pmod(c, F.p);
    int64_t code = F.encode(v);
    if (code == 0) return ff_zero(F);
    return {&F, F.dlog_table[static_cast<size_t>(code)]};
}

int64_t ff_dlog(const FieldElem& x) {
    require(!x.is_zero(), "DlogOfZero", "dlog of the zero element");
    return x.e;
}

FieldElem ff_add(const FieldElem& a, const FieldElem& b) {
    require(a.F == b.F, "CtxMismatch", "ff_add across fields");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const FieldCtx& F = *a.F;
    auto va = F.decode(F.pow_table[static_cast<size_t>(a.e)]);
    auto vb = F.decode(F.pow_table[static_cast<size_t>(b.e)]);
    for (int i = 0; i < F.deg; ++i) va[i] = (va[i] + vb[i]) % F.p;
    int64_t code = F.encode(va);
    if (code == 0) return ff_zero(F);
    return {&F, F.dlog_table[static_cast<size_t>(code)]};
}

FieldElem ff_neg(const FieldElem& a) {
    if (a.is_zero()) return a;
    const FieldCtx& F = *a.F;
    if (F.p == 2) return a;
    auto v = F.decode(F.pow_table[static_cast<size_t>(a.e)]);
    for (auto& c : v) c = (F.p - c) % F.p;
    return {&F, F.dlog_table[static_cast<size_t>(F.encode(v))]};
}

FieldElem ff_sub(const FieldElem& a, const FieldElem& b) { return ff_add(a, ff_neg(b)); }

FieldElem ff_mul(const FieldElem& a, const FieldElem& b) {
    require(a.F == b.F, "CtxMismatch", "ff_mul across fields");
    if (a.is_zero() || b.is_zero()) return ff_zero(*a.F);
    return {a.F, (a.e + b.e) % a.F->order};
}

FieldElem ff_inv(const FieldElem& a) {
    require(!a.is_zero(), "DivisionByZero", "inverse of zero");
    return {a.F, (a.F->order - a.e) % a.F->order};
}

FieldElem ff_pow(const FieldElem& a, int64_t e) {
    if (a.is_zero()) {
        require(e > 0, "DivisionByZero", "0 to a nonpositive power");
        return a;
    }
    const int64_t ord = a.F->order;
    int64_t ee = ((e % ord) + ord) % ord;
    return {a.F, static_cast<int64_t>((__int128)a.e * ee % ord)};
}

FieldElem ff_frobenius(const FieldElem& a, int64_t j) {
    if (a.is_zero()) return a;
    const int64_t ord = a.F->order;
    // p^j mod ord, with j reduced mod deg since Frobenius has that order
    int64_t jj = ((j % a.F->deg) + a.F->deg) % a.F->deg;
    int64_t m = 1;
    for (int64_t i = 0; i < jj; ++i) m = static_cast<int64_t>((__int128)m * a.F->p % ord);
    return {a.F, static_cast<int64_t>((__int128)a.e * m % ord)};
}

FieldElem ff_embed(const FieldElem& x, const FieldCtx& ext) {
    require(ext.base == x.F || (&ext == x.F), "CtxMismatch", "ff_embed: not an extension of x's field");
    if (&ext == x.F) return x;
    if (x.is_zero()) return ff_zero(ext);
    return {&ext, static_cast<int64_t>((__int128)x.e * ext.embed_mult % ext.order)};
}

FieldElem ff_norm(const FieldElem& x) {
    const FieldCtx& E = *x.F;
    require(E.base != nullptr, "CtxMismatch", "ff_norm: element is not in an extension context");
    const FieldCtx& B = *E.base;
    if (x.is_zero()) return ff_zero(B);
    // norm-compatible generators make this exponent reduction exact
    return {&B, x.e % B.order};
}

FieldElem ff_trace(const FieldElem& x) {
    const FieldCtx& E = *x.F;
    require(E.base != nullptr, "CtxMismatch", "ff_trace: element is not in an extension context");
    const FieldCtx& B = *E.base;
    FieldElem acc = ff_zero(E);
    FieldElem cur = x;
    for (int64_t j = 0; j < E.ext_k; ++j) {
        acc = ff_add(acc, cur);
        cur = ff_pow(cur, B.size);
    }
    if (acc.is_zero()) return ff_zero(B);
    require(acc.e % E.embed_mult == 0, "Internal", "trace landed outside the base image");
    return {&B, (acc.e / E.embed_mult) % B.order};
}

} // namespace wittsum
