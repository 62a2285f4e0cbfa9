#include "wittsum/witt.hpp"

#include "wittsum/padic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wittsum {

namespace {

// --- universal p-typical addition/multiplication polynomials ---
//
// Sparse polynomials over Z in 2m variables (x_0..x_{m-1}, y_0..y_{m-1}),
// built once per (p, m) from the ghost components and cached.  Only small m
// is ever needed; the coordinate formulas they produce are the cross-check
// against the iota route.

using Mono = std::vector<int>;
using SPoly = std::map<Mono, mpz_class>;

void sp_axpy(SPoly& dst, const SPoly& src, const mpz_class& scale) {
    for (const auto& [mo, co] : src) {
        mpz_class& slot = dst[mo];
        slot += co * scale;
        if (slot == 0) dst.erase(mo);
    }
}

SPoly sp_mul(const SPoly& a, const SPoly& b, int nvars) {
    SPoly out;
    Mono mo(nvars);
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            for (int v = 0; v < nvars; v++) mo[v] = ma[v] + mb[v];
            mpz_class& slot = out[mo];
            slot += ca * cb;
            if (slot == 0) out.erase(mo);
        }
    return out;
}

SPoly sp_pow(const SPoly& a, int64_t e, int nvars) {
    SPoly out;
    out[Mono(nvars)] = 1;
    SPoly base = a;
    while (e > 0) {
        if (e & 1) out = sp_mul(out, base, nvars);
        e >>= 1;
        if (e) base = sp_mul(base, base, nvars);
    }
    return out;
}

SPoly sp_var(int v, int64_t e, int nvars) {
    Mono mo(nvars);
    mo[v] = static_cast<int>(e);
    SPoly out;
    out[mo] = 1;
    return out;
}

// ghost_j over variables var0..var0+m-1: sum_{i<=j} p^i X_i^{p^{j-i}}
SPoly ghost_poly(int64_t p, int j, int var0, int nvars) {
    SPoly out;
    mpz_class pi = 1;
    for (int i = 0; i <= j; i++) {
        int64_t ex = 1;
        for (int t = 0; t < j - i; t++) ex *= p;
        sp_axpy(out, sp_var(var0 + i, ex, nvars), pi);
        pi *= p;
    }
    return out;
}

enum class WittOp { Add, Mul };

// s_j = (ghost_j(x) . ghost_j(y) - sum_{i<j} p^i s_i^{p^{j-i}}) / p^j
// with "." the ghost-level operation
const std::vector<SPoly>& universal_polys(int64_t p, int m, WittOp op) {
    static std::map<std::tuple<int64_t, int, int>, std::vector<SPoly>> cache;
    auto key = std::make_tuple(p, m, static_cast<int>(op));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    int nvars = 2 * m;
    std::vector<SPoly> s;
    for (int j = 0; j < m; j++) {
        SPoly gx = ghost_poly(p, j, 0, nvars);
        SPoly gy = ghost_poly(p, j, m, nvars);
        SPoly acc;
        if (op == WittOp::Add) {
            acc = gx;
            sp_axpy(acc, gy, 1);
        } else {
            acc = sp_mul(gx, gy, nvars);
        }
        mpz_class pi = 1;
        for (int i = 0; i < j; i++) {
            int64_t ex = 1;
            for (int t = 0; t < j - i; t++) ex *= p;
            sp_axpy(acc, sp_pow(s[i], ex, nvars), -pi);
            pi *= p;
        }
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
        SPoly red;
        for (const auto& [mo, co] : acc) {
            mpz_class qz, rz;
            mpz_fdiv_qr(qz.get_mpz_t(), rz.get_mpz_t(), co.get_mpz_t(), pj.get_mpz_t());
            require(rz == 0, "GhostDivision", "universal polynomial coefficient not divisible by p^j");
            red[mo] = qz;
        }
        s.push_back(std::move(red));
    }
    return cache.emplace(key, std::move(s)).first->second;
}

FieldElem sp_eval(const SPoly& poly, const FieldCtx& F, const std::vector<FieldElem>& vals) {
    FieldElem acc = ff_zero(F);
    for (const auto& [mo, co] : poly) {
        int64_t c = mpz_fdiv_ui(co.get_mpz_t(), static_cast<unsigned long>(F.p));
        if (c == 0) continue;
        FieldElem term = ff_one(F);
        bool dead = false;
        for (size_t v = 0; v < mo.size(); v++) {
            if (mo[v] == 0) continue;
            if (vals[v].is_zero()) {
                dead = true;
                break;
            }
            term = ff_mul(term, ff_pow(vals[v], mo[v]));
        }
        if (dead) continue;
        for (int64_t r = 0; r < c; r++) acc = ff_add(acc, term);
    }
    return acc;
}

WittVec witt_op(const WittVec& x, const WittVec& y, WittOp op) {
    require(x.F && x.F == y.F, "LengthMismatch", "witt vectors over different fields");
    require(x.a.size() == y.a.size(), "LengthMismatch", "witt vectors of different length");
    int m = static_cast<int>(x.a.size());
    require(m >= 1 && m <= 4, "Unsupported", "universal polynomials kept to length <= 4");
    const auto& polys = universal_polys(x.F->p, m, op);
    std::vector<FieldElem> vals;
    vals.insert(vals.end(), x.a.begin(), x.a.end());
    vals.insert(vals.end(), y.a.begin(), y.a.end());
    WittVec out;
    out.F = x.F;
    for (int j = 0; j < m; j++) out.a.push_back(sp_eval(polys[j], *x.F, vals));
    return out;
}

} // namespace

WittInput make_witt_input(const FieldCtx& F, int m, int n, std::vector<WittTerm> terms) {
    require(m >= 1, "BadInput", "m must be positive");
    require(n >= 1, "BadInput", "n must be positive");
    require(!terms.empty(), "BadInput", "empty support");
    std::set<std::pair<int, std::vector<int64_t>>> seen;
    bool level0 = false;
    for (const auto& t : terms) {
        require(t.level >= 0 && t.level < m, "BadInput", "term level out of range");
        require(t.u.size() == static_cast<size_t>(n), "BadInput", "exponent vector length mismatch");
        require(t.coeff.F == &F, "BadInput", "coefficient from a different field");
        require(!t.coeff.is_zero(), "BadInput", "zero coefficient in support");
        require(seen.insert({t.level, t.u}).second, "BadInput", "duplicate (level, exponent) pair");
        if (t.level == 0) level0 = true;
    }
    require(level0, "BadInput", "no level-0 term");
    WittInput f;
    f.F = &F;
    f.m = m;
    f.n = n;
    f.terms = std::move(terms);
    return f;
}

std::unique_ptr<WittRing> build_witt_ring(const FieldCtx& F, int m) {
    require(m >= 1, "BadInput", "m must be positive");
    auto R = std::make_unique<WittRing>();
    R->F = &F;
    R->m = m;
    R->D = F.deg;
    R->ord = F.order;
    int64_t pm = 1;
    for (int i = 0; i < m; i++) {
        require(pm <= (int64_t(1) << 31) / F.p, "BadInput", "p^m too large for table arithmetic");
        pm *= F.p;
    }
    R->pm = pm;

    auto hz = teichmuller_modulus(F, m);
    R->h.resize(R->D + 1);
    for (int i = 0; i <= R->D; i++)
        R->h[i] = mpz_fdiv_ui(hz[i].get_mpz_t(), static_cast<unsigned long>(pm));

    // montable[j] = y^j; reduction uses y^D = -(h_0 + ... + h_{D-1} y^{D-1})
    R->montable.assign(R->ord, std::vector<int64_t>(R->D, 0));
    R->montable[0][0] = 1 % pm;
    for (int64_t j = 1; j < R->ord; j++) {
        const auto& prev = R->montable[j - 1];
        auto& cur = R->montable[j];
        int64_t top = prev[R->D - 1];
        for (int t = R->D - 1; t > 0; t--) cur[t] = prev[t - 1];
        cur[0] = 0;
        if (top) {
            for (int t = 0; t < R->D; t++) {
                cur[t] = (cur[t] - top % pm * R->h[t]) % pm;
                if (cur[t] < 0) cur[t] += pm;
            }
        }
    }

    // Tr(y^j): sum over the Frobenius orbit, a fixed point of y -> y^p and
    // hence a scalar
    R->trace_mono.assign(R->ord, 0);
    for (int64_t j = 0; j < R->ord; j++) {
        std::vector<int64_t> acc(R->D, 0);
        int64_t idx = j;
        for (int l = 0; l < R->D; l++) {
            const auto& mono = R->montable[idx];
            for (int t = 0; t < R->D; t++) acc[t] = (acc[t] + mono[t]) % pm;
            idx = idx * F.p % R->ord;
        }
        for (int t = 1; t < R->D; t++)
            require(acc[t] == 0, "NonConstantTrace", "monomial trace not a scalar");
        R->trace_mono[j] = acc[0];
    }
    return R;
}

WRElem wr_zero(const WittRing& R) { return WRElem(R.D, 0); }

WRElem wr_one(const WittRing& R) {
    WRElem z(R.D, 0);
    z[0] = 1 % R.pm;
    return z;
}

WRElem wr_add(const WittRing& R, const WRElem& x, const WRElem& y) {
    WRElem z(R.D);
    for (int t = 0; t < R.D; t++) z[t] = (x[t] + y[t]) % R.pm;
    return z;
}

WRElem wr_mul(const WittRing& R, const WRElem& x, const WRElem& y) {
    std::vector<int64_t> buf(2 * R.D - 1, 0);
    for (int i = 0; i < R.D; i++) {
        if (!x[i]) continue;
        for (int j = 0; j < R.D; j++) buf[i + j] = (buf[i + j] + x[i] * y[j]) % R.pm;
    }
    for (int t = 2 * R.D - 2; t >= R.D; t--) {
        int64_t c = buf[t];
        if (!c) continue;
        buf[t] = 0;
        for (int r = 0; r < R.D; r++) {
            buf[t - R.D + r] = (buf[t - R.D + r] - c * R.h[r]) % R.pm;
            if (buf[t - R.D + r] < 0) buf[t - R.D + r] += R.pm;
        }
    }
    buf.resize(R.D);
    return buf;
}

WRElem iota(const WittRing& R, const WittVec& x) {
    require(x.F == R.F, "LengthMismatch", "witt vector from a different field");
    require(static_cast<int>(x.a.size()) == R.m, "LengthMismatch", "witt vector length != ring length");
    WRElem z(R.D, 0);
    int64_t pi = 1;
    for (int i = 0; i < R.m; i++) {
        if (!x.a[i].is_zero()) {
            // omega(a_i^{p^-i}): dlog scaled by p^{D-i} mod ord
            int64_t shift = powmod64(R.F->p, ((R.D - i) % R.D + R.D) % R.D, R.ord);
            int64_t e = ff_dlog(x.a[i]) % R.ord * shift % R.ord;
            const auto& mono = R.montable[e];
            for (int t = 0; t < R.D; t++) z[t] = (z[t] + pi * mono[t]) % R.pm;
        }
        pi = pi * R.F->p % R.pm;
    }
    return z;
}

int64_t wr_trace(const WittRing& R, const WRElem& z) {
    // substitute y -> y^p repeatedly and sum the orbit
    WRElem acc(R.D, 0), cur = z;
    for (int l = 0; l < R.D; l++) {
        for (int t = 0; t < R.D; t++) acc[t] = (acc[t] + cur[t]) % R.pm;
        WRElem nxt(R.D, 0);
        for (int t = 0; t < R.D; t++) {
            if (!cur[t]) continue;
            const auto& mono = R.montable[t * R.F->p % R.ord];
            for (int r = 0; r < R.D; r++) nxt[r] = (nxt[r] + cur[t] * mono[r]) % R.pm;
        }
        cur = std::move(nxt);
    }
    for (int t = 1; t < R.D; t++)
        require(acc[t] == 0, "NonConstantTrace", "trace did not land in the scalars");
    return acc[0];
}

int64_t witt_trace(const WittRing& R, const WittVec& x) { return wr_trace(R, iota(R, x)); }

WittVec witt_add(const WittVec& x, const WittVec& y) { return witt_op(x, y, WittOp::Add); }

WittVec witt_mul(const WittVec& x, const WittVec& y) { return witt_op(x, y, WittOp::Mul); }

int64_t eval_f_trace(const WittInput& f, const WittRing& R, const std::vector<int64_t>& t) {
    require(R.F == f.F || R.F->base == f.F, "BadInput", "ring not built over the input field");
    require(t.size() == static_cast<size_t>(f.n), "BadInput", "point dimension mismatch");
    int64_t mult = (R.F == f.F) ? 1 : R.F->embed_mult;
    int64_t total = 0;
    int64_t pi = 1;
    std::vector<int64_t> pis(f.m);
    for (int i = 0; i < f.m; i++) {
        pis[i] = pi;
        pi = pi * R.F->p % R.pm;
    }
    for (const auto& term : f.terms) {
        int64_t e = ff_dlog(term.coeff) % (f.F->order) * (mult % R.ord) % R.ord;
        for (int j = 0; j < f.n; j++) e += term.u[j] % R.ord * (t[j] % R.ord) % R.ord;
        e %= R.ord;
        if (e < 0) e += R.ord;
        int64_t shift = powmod64(R.F->p, ((R.D - term.level) % R.D + R.D) % R.D, R.ord);
        e = e * shift % R.ord;
        total = (total + pis[term.level] * R.trace_mono[e]) % R.pm;
    }
    return total;
}

int64_t eval_f_trace(const WittInput& f, const WittRing& R, const std::vector<FieldElem>& x) {
    require(x.size() == static_cast<size_t>(f.n), "BadInput", "point dimension mismatch");
    std::vector<int64_t> t(f.n);
    for (int j = 0; j < f.n; j++) {
        require(x[j].F == R.F, "BadInput", "point coordinate from a different field");
        require(!x[j].is_zero(), "ZeroCoordinate", "torus point has a zero coordinate");
        t[j] = ff_dlog(x[j]);
    }
    return eval_f_trace(f, R, t);
}

} // namespace wittsum
