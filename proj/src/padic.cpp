#include "wittsum/padic.hpp"

#include <algorithm>

namespace wittsum {

namespace {

using UPoly = std::vector<mpz_class>; // unramified part: y-poly of length d

void zmod(mpz_class& z, const mpz_class& pT) { mpz_mod(z.get_mpz_t(), z.get_mpz_t(), pT.get_mpz_t()); }

// multiply two y-polys mod (h, p^T); h monic of degree d
UPoly upoly_mul(const UPoly& a, const UPoly& b, const std::vector<mpz_class>& h, const mpz_class& pT) {
    const size_t d = h.size() - 1;
    if (d == 0) return {};
    std::vector<mpz_class> c(2 * d - 1, mpz_class(0));
    for (size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) c[i + j] += a[i] * b[j];
    }
    for (size_t i = 2 * d - 2; i + 1 > d; --i) {
        if (c[i] == 0) continue;
        mpz_class f = c[i];
        size_t shift = i - d;
        for (size_t j = 0; j < d; ++j) c[shift + j] -= f * h[j];
        c[i] = 0;
    }
    c.resize(d);
    for (auto& z : c) zmod(z, pT);
    return c;
}

UPoly upoly_one(size_t d) {
    UPoly u(d, mpz_class(0));
    if (d) u[0] = 1;
    return u;
}

UPoly upoly_pow(UPoly base, int64_t e, const std::vector<mpz_class>& h, const mpz_class& pT) {
    UPoly r = upoly_one(h.size() - 1);
    while (e > 0) {
        if (e & 1) r = upoly_mul(r, base, h, pT);
        base = upoly_mul(base, base, h, pT);
        e >>= 1;
    }
    return r;
}

} // namespace

std::vector<mpz_class> teichmuller_modulus(const FieldCtx& F, long T) {
    const int64_t p = F.p;
    const int d = F.deg;
    mpz_class pT;
    mpz_ui_pow_ui(pT.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(T));

    // work in A = (Z/p^T)[X]/(naive lift of the field modulus); any monic lift
    // presents the same unramified ring, so Teichmuller elements computed here
    // are canonical even though the modulus root itself is not Teichmuller
    std::vector<mpz_class> nl(F.modulus.size());
    for (size_t i = 0; i < nl.size(); ++i) nl[i] = F.modulus[i];

    auto gen_poly = F.decode(F.generator_code);
    UPoly gamma(d, mpz_class(0));
    for (int i = 0; i < d && i < static_cast<int>(gen_poly.size()); ++i) gamma[i] = gen_poly[i];

    // gamma <- gamma^{p^d} until stable; gains a p-power of precision per pass
    const int64_t pd = ipow64(p, d);
    for (long it = 0;; ++it) {
        UPoly next = upoly_pow(gamma, pd, nl, pT);
        if (next == gamma) break;
        gamma = std::move(next);
        require(it < T + 8, "Internal", "Teichmuller iteration failed to stabilize");
    }

    // h(Y) = prod_j (Y - gamma^{p^j}); coefficients must be scalars
    std::vector<UPoly> hy{upoly_one(d)}; // A-coefficients of h, ascending in Y
    UPoly conj = gamma;
    for (int j = 0; j < d; ++j) {
        std::vector<UPoly> next(hy.size() + 1, UPoly(d, mpz_class(0)));
        for (size_t t = 0; t < hy.size(); ++t) {
            for (int i = 0; i < d; ++i) {
                next[t + 1][i] += hy[t][i];
                zmod(next[t + 1][i], pT);
            }
            UPoly mc = upoly_mul(hy[t], conj, nl, pT);
            for (int i = 0; i < d; ++i) {
                next[t][i] -= mc[i];
                zmod(next[t][i], pT);
            }
        }
        hy = std::move(next);
        conj = upoly_pow(conj, p, nl, pT);
    }
    std::vector<mpz_class> h(d + 1);
    for (int t = 0; t <= d; ++t) {
        for (int i = 1; i < d; ++i)
            require(hy[t][i] == 0, "Internal", "Teichmuller modulus coefficient not scalar");
        h[t] = d ? hy[t][0] : mpz_class(0);
    }
    require(h[d] == 1, "Internal", "Teichmuller modulus not monic");

    // the defining property: Y^{p^d} = Y mod (h, p^T)
    UPoly y(d, mpz_class(0));
    if (d == 1) {
        // degree-1 h: Y = -h[0]
        mpz_class root = pT - h[0];
        zmod(root, pT);
        mpz_class chk = root;
        for (int i = 1; i < pd; ++i) {
            chk *= root;
            zmod(chk, pT);
        }
        require(chk == root, "Internal", "Teichmuller root check failed");
    } else {
        y[1] = 1;
        require(upoly_pow(y, pd, h, pT) == y, "Internal", "Teichmuller root check failed");
    }
    return h;
}

std::unique_ptr<LocalCtx> build_local(const FieldCtx& F, int m, long T) {
    require(m >= 1, "BadArgument", "m must be >= 1");
    require(T >= std::max(2, m), "BadArgument", "precision too small");
    auto R = std::make_unique<LocalCtx>();
    R->p = F.p;
    R->d = F.deg;
    R->m = m;
    R->T = T;
    R->e = (F.p - 1) * ipow64(F.p, m - 1);
    mpz_ui_pow_ui(R->pT.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(T));
    R->residue = &F;
    R->h = teichmuller_modulus(F, T);

    // Phi_{p^m}(1+X) = sum_{i<p} (1+X)^{i p^{m-1}}, expanded exactly
    {
        const int64_t e = R->e;
        std::vector<mpz_class> eis(static_cast<size_t>(e) + 1, mpz_class(0));
        const int64_t blk = ipow64(F.p, m - 1);
        for (int64_t i = 0; i < F.p; ++i) {
            // (1+X)^{i*blk}
            int64_t n = i * blk;
            mpz_class bin = 1;
            for (int64_t k = 0; k <= n; ++k) {
                eis[static_cast<size_t>(k)] += bin;
                bin = bin * (n - k) / (k + 1);
            }
        }
        require(eis[0] == F.p, "Internal", "Eisenstein constant term is not p");
        require(eis[static_cast<size_t>(e)] == 1, "Internal", "Eisenstein polynomial not monic");
        for (int64_t j = 1; j < e; ++j)
            require(mpz_divisible_ui_p(eis[static_cast<size_t>(j)].get_mpz_t(),
                                       static_cast<unsigned long>(F.p)) != 0,
                    "Internal", "Eisenstein middle coefficient not divisible by p");
        for (auto& z : eis) zmod(z, R->pT);
        R->eis = std::move(eis);
    }

    // basis images under y -> y^p
    {
        const int d = R->d;
        std::vector<UPoly> ypow(static_cast<size_t>((d - 1) * F.p + 1), UPoly());
        ypow[0] = upoly_one(d);
        UPoly y(d, mpz_class(0));
        if (d > 1)
            y[1] = 1;
        else
            y[0] = (R->pT - R->h[0]) % R->pT;
        for (size_t j = 1; j < ypow.size(); ++j) ypow[j] = upoly_mul(ypow[j - 1], y, R->h, R->pT);
        R->frob_basis.resize(d);
        for (int t = 0; t < d; ++t) R->frob_basis[t] = ypow[static_cast<size_t>(t) * F.p];
    }
    return R;
}

bool LocalElem::is_zero() const {
    for (const auto& row : c)
        for (const auto& z : row)
            if (z != 0) return false;
    return true;
}

LocalElem local_zero(const LocalCtx& R) {
    LocalElem x;
    x.R = &R;
    x.c.assign(static_cast<size_t>(R.e), UPoly(R.d, mpz_class(0)));
    return x;
}

LocalElem local_one(const LocalCtx& R) { return local_from_int(R, 1); }

LocalElem local_from_int(const LocalCtx& R, const mpz_class& z) {
    LocalElem x = local_zero(R);
    x.c[0][0] = z;
    zmod(x.c[0][0], R.pT);
    return x;
}

LocalElem local_pi0(const LocalCtx& R) {
    LocalElem x = local_zero(R);
    if (R.e == 1) {
        // zeta_{p^m} = zeta_2 = -1 lives downstairs; pi0 = -2
        x.c[0][0] = R.pT - 2;
    } else {
        x.c[1][0] = 1;
    }
    return x;
}

LocalElem local_add(const LocalElem& a, const LocalElem& b) {
    require(a.R == b.R, "CtxMismatch", "local_add across contexts");
    LocalElem out = a;
    for (size_t j = 0; j < out.c.size(); ++j)
        for (size_t t = 0; t < out.c[j].size(); ++t) {
            out.c[j][t] += b.c[j][t];
            zmod(out.c[j][t], a.R->pT);
        }
    return out;
}

LocalElem local_neg(const LocalElem& a) {
    LocalElem out = a;
    for (auto& row : out.c)
        for (auto& z : row)
            if (z != 0) z = a.R->pT - z;
    return out;
}

LocalElem local_sub(const LocalElem& a, const LocalElem& b) { return local_add(a, local_neg(b)); }

LocalElem local_mul(const LocalElem& a, const LocalElem& b) {
    require(a.R == b.R, "CtxMismatch", "local_mul across contexts");
    const LocalCtx& R = *a.R;
    const size_t e = static_cast<size_t>(R.e);
    std::vector<UPoly> conv(2 * e - 1, UPoly(R.d, mpz_class(0)));
    for (size_t i = 0; i < e; ++i) {
        bool nz = false;
        for (const auto& z : a.c[i])
            if (z != 0) {
                nz = true;
                break;
            }
        if (!nz) continue;
        for (size_t j = 0; j < e; ++j) {
            UPoly prod = upoly_mul(a.c[i], b.c[j], R.h, R.pT);
            for (int t = 0; t < R.d; ++t) conv[i + j][t] += prod[t];
        }
    }
    // fold pi0^{e..2e-2} with the monic Eisenstein relation
    for (size_t jj = 2 * e - 2; jj + 1 > e; --jj) {
        for (int t = 0; t < R.d; ++t) {
            if (conv[jj][t] == 0) continue;
            mpz_class f = conv[jj][t];
            for (size_t i = 0; i < e; ++i) conv[jj - e + i][t] -= f * R.eis[i];
            conv[jj][t] = 0;
        }
        if (jj == e) break;
    }
    LocalElem out = local_zero(R);
    for (size_t j = 0; j < e; ++j)
        for (int t = 0; t < R.d; ++t) {
            out.c[j][t] = conv[j][t];
            zmod(out.c[j][t], R.pT);
        }
    return out;
}

LocalElem local_scale(const LocalElem& a, const mpz_class& z) {
    LocalElem out = a;
    for (auto& row : out.c)
        for (auto& v : row) {
            v *= z;
            zmod(v, a.R->pT);
        }
    return out;
}

LocalElem local_scale_rat(const LocalElem& a, const mpq_class& r) {
    return local_scale(a, rational_mod(r, a.R->pT, a.R->p));
}

LocalElem local_pow(const LocalElem& a, int64_t n) {
    require(n >= 0, "BadArgument", "local_pow needs n >= 0");
    LocalElem r = local_one(*a.R), base = a;
    while (n > 0) {
        if (n & 1) r = local_mul(r, base);
        base = local_mul(base, base);
        n >>= 1;
    }
    return r;
}

bool local_eq(const LocalElem& a, const LocalElem& b) {
    require(a.R == b.R, "CtxMismatch", "local_eq across contexts");
    return a.c == b.c;
}

bool local_congruent(const LocalElem& a, const LocalElem& b, long k) {
    require(a.R == b.R, "CtxMismatch", "local_congruent across contexts");
    require(k <= a.R->T, "PrecisionExhausted", "congruence precision above the cap");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(a.R->p), static_cast<unsigned long>(k));
    for (size_t j = 0; j < a.c.size(); ++j)
        for (size_t t = 0; t < a.c[j].size(); ++t) {
            mpz_class diff = a.c[j][t] - b.c[j][t];
            if (!mpz_divisible_p(diff.get_mpz_t(), pk.get_mpz_t())) return false;
        }
    return true;
}

LocalElem local_reduce_to(const LocalElem& a, const LocalCtx& R2) {
    require(a.R->p == R2.p && a.R->d == R2.d && a.R->m == R2.m && a.R->residue == R2.residue,
            "CtxMismatch", "local_reduce_to: incompatible contexts");
    require(R2.T <= a.R->T, "PrecisionExhausted", "cannot raise precision by reduction");
    LocalElem out = local_zero(R2);
    for (size_t j = 0; j < out.c.size(); ++j)
        for (size_t t = 0; t < out.c[j].size(); ++t) {
            out.c[j][t] = a.c[j][t];
            zmod(out.c[j][t], R2.pT);
        }
    return out;
}

LocalVal local_val(const LocalElem& a) {
    const LocalCtx& R = *a.R;
    LocalVal out;
    out.above_cap = true;
    for (int64_t j = 0; j < R.e; ++j) {
        long vj = -1;
        for (const auto& z : a.c[static_cast<size_t>(j)]) {
            if (z == 0) continue;
            long v = valuation(z, R.p);
            if (vj < 0 || v < vj) vj = v;
        }
        if (vj < 0) continue;
        mpq_class cand = mpq_class(vj) + mpq_class(j, R.e);
        cand.canonicalize();
        if (out.above_cap || cand < out.v) {
            out.above_cap = false;
            out.v = cand;
        }
    }
    return out;
}

LocalElem teichmuller(const LocalCtx& R, int64_t t) {
    const int64_t ord = ipow64(R.p, R.d) - 1;
    int64_t tt = ((t % ord) + ord) % ord;
    UPoly y(R.d, mpz_class(0));
    if (R.d > 1)
        y[1] = 1;
    else
        y[0] = (R.pT - R.h[0]) % R.pT;
    UPoly r = upoly_pow(y, tt, R.h, R.pT);
    LocalElem out = local_zero(R);
    out.c[0] = r;
    return out;
}

LocalElem teichmuller(const LocalCtx& R, const FieldElem& x) {
    require(x.F == R.residue, "CtxMismatch", "teichmuller: element not in the residue field");
    if (x.is_zero()) return local_zero(R);
    return teichmuller(R, x.e);
}

LocalElem zeta_pm_pow(const LocalCtx& R, int64_t t) {
    const int64_t ord = ipow64(R.p, R.m);
    int64_t tt = ((t % ord) + ord) % ord;
    LocalElem z = local_add(local_one(R), local_pi0(R));
    return local_pow(z, tt);
}

FieldElem local_residue(const LocalElem& a) {
    const LocalCtx& R = *a.R;
    const FieldCtx& F = *R.residue;
    FieldElem g = ff_gen(F);
    FieldElem acc = ff_zero(F);
    FieldElem gp = ff_one(F);
    for (int t = 0; t < R.d; ++t) {
        int64_t ct = mpz_class(a.c[0][t] % R.p).get_si();
        FieldElem term = ff_zero(F);
        for (int64_t r = 0; r < ct; ++r) term = ff_add(term, gp);
        acc = ff_add(acc, term);
        gp = ff_mul(gp, g);
    }
    return acc;
}

LocalElem local_frobenius(const LocalElem& a) {
    const LocalCtx& R = *a.R;
    LocalElem out = local_zero(R);
    for (size_t j = 0; j < a.c.size(); ++j)
        for (int t = 0; t < R.d; ++t) {
            if (a.c[j][t] == 0) continue;
            for (int i = 0; i < R.d; ++i) {
                out.c[j][i] += a.c[j][t] * R.frob_basis[t][i];
            }
        }
    for (auto& row : out.c)
        for (auto& z : row) zmod(z, R.pT);
    return out;
}

LocalElem local_embed(const LocalElem& a, const LocalCtx& R2) {
    const LocalCtx& R = *a.R;
    require(R.p == R2.p && R.m == R2.m && R.T == R2.T && R2.residue->base == R.residue,
            "CtxMismatch", "local_embed: target is not an extension context");
    int64_t mult = R2.residue->embed_mult;
    int64_t ord2 = R2.residue->order;
    // basis images y^t -> y'^{t mult}; both are Teichmuller lifts of the
    // same residue, and the lift of the minimal polynomial has a unique
    // root per residue class, so this is the ring embedding
    std::vector<std::vector<mpz_class>> ypow;
    ypow.reserve(static_cast<size_t>(R.d));
    for (int t = 0; t < R.d; ++t)
        ypow.push_back(teichmuller(R2, (t % ord2) * (mult % ord2) % ord2).c[0]);
    LocalElem out = local_zero(R2);
    for (size_t j = 0; j < a.c.size(); ++j)
        for (int t = 0; t < R.d; ++t) {
            if (a.c[j][t] == 0) continue;
            for (int i = 0; i < R2.d; ++i) out.c[j][i] += a.c[j][t] * ypow[static_cast<size_t>(t)][static_cast<size_t>(i)];
        }
    for (auto& row : out.c)
        for (auto& z : row) zmod(z, R2.pT);
    return out;
}

LocalElem local_inv(const LocalElem& a) {
    LocalVal v = local_val(a);
    require(!v.above_cap && v.v == 0, "DivisionByZero", "local_inv of a non-unit");
    const LocalCtx& R = *a.R;
    // Newton on z -> z(2 - az), seeded with the inverse of the residue
    FieldElem res = local_residue(a);
    LocalElem z = teichmuller(R, ff_inv(res));
    long it = 0;
    while (true) {
        LocalElem err = local_sub(local_one(R), local_mul(a, z));
        if (err.is_zero()) break;
        z = local_add(z, local_mul(z, err));
        require(++it < 64, "Internal", "unit inversion failed to converge");
    }
    return z;
}

LocalElem hensel_root(const std::vector<LocalElem>& f, const LocalElem& x0) {
    require(!f.empty(), "BadArgument", "hensel_root on empty polynomial");
    const LocalCtx& R = *x0.R;
    auto eval = [&](const std::vector<LocalElem>& poly, const LocalElem& x) {
        LocalElem acc = local_zero(R);
        for (size_t i = poly.size(); i-- > 0;) acc = local_add(local_mul(acc, x), poly[i]);
        return acc;
    };
    std::vector<LocalElem> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(local_scale(f[i], mpz_class(static_cast<long>(i))));

    LocalElem x = x0;
    {
        LocalVal v0 = local_val(eval(f, x));
        LocalVal dv = local_val(eval(df, x));
        require(!dv.above_cap && dv.v == 0, "HenselFails", "derivative is not a unit at the seed");
        require(v0.above_cap || v0.v > 0, "HenselFails", "seed is not inside the attraction disc");
    }
    for (long it = 0; it < 64; ++it) {
        LocalElem r = eval(f, x);
        if (r.is_zero()) return x;
        LocalElem corr = local_mul(r, local_inv(eval(df, x)));
        x = local_sub(x, corr);
    }
    fail("HenselFails", "Newton iteration did not converge");
}

std::vector<mpq_class> artin_hasse(int64_t p, int nterms) {
    std::vector<mpq_class> c(static_cast<size_t>(nterms));
    if (nterms == 0) return c;
    c[0] = 1;
    for (int n = 1; n < nterms; ++n) {
        mpq_class s = 0;
        for (int64_t q = 1; q <= n; q *= p) s += c[static_cast<size_t>(n - q)];
        c[static_cast<size_t>(n)] = s / n;
        c[static_cast<size_t>(n)].canonicalize();
        require(mpz_divisible_ui_p(c[static_cast<size_t>(n)].get_den().get_mpz_t(),
                                   static_cast<unsigned long>(p)) == 0,
                "Internal", "Artin-Hasse coefficient not p-integral");
    }
    return c;
}

LocalElem dwork_pi(const LocalCtx& R, int level) {
    require(level >= 1 && level <= R.m, "BadArgument", "dwork_pi level out of range");
    // truncate E so the dropped tail sits above the cap at val(t) = 1/e_level
    const int64_t e_lvl = (R.p - 1) * ipow64(R.p, level - 1);
    const int nterms = static_cast<int>(e_lvl * R.T) + 2;
    auto ah = artin_hasse(R.p, nterms);
    std::vector<LocalElem> E(ah.size());
    for (size_t i = 0; i < ah.size(); ++i) E[i] = local_scale_rat(local_one(R), ah[i]);

    const int64_t shift = ipow64(R.p, R.m - level);
    LocalElem target = zeta_pm_pow(R, shift);
    E[0] = local_sub(E[0], target); // solve E(t) - zeta = 0

    LocalElem seed = local_sub(target, local_one(R));
    LocalElem pi = hensel_root(E, seed);

    LocalVal v = local_val(pi);
    mpq_class expect(1, e_lvl);
    expect.canonicalize();
    require(!v.above_cap && v.v == expect, "HenselFails", "pi has the wrong valuation");
    return pi;
}

LocalElem embed_cyc(const CycElem& a, const LocalCtx& R, int64_t unit) {
    int64_t N = a.conductor;
    int mp = 0;
    int64_t M = N;
    while (M % R.p == 0) {
        M /= R.p;
        ++mp;
    }
    require(mp <= R.m, "BadConductor", "conductor p-part exceeds the ramified level");
    const int64_t ord = ipow64(R.p, R.d) - 1;
    require(M == 1 || ord % M == 0, "BadConductor",
            "prime-to-p conductor part does not divide p^d - 1");

    LocalElem Z = local_one(R);
    if (N > 1) {
        const int64_t pmp = ipow64(R.p, mp);
        LocalElem P = (mp > 0) ? zeta_pm_pow(R, ipow64(R.p, R.m - mp)) : local_one(R);
        LocalElem Tm = (M > 1) ? teichmuller(R, unit * (ord / M)) : local_one(R);
        int64_t a1 = (mp > 0 && M > 1) ? invmod64(M % pmp, pmp) : (mp > 0 ? 1 : 0);
        int64_t a2 = (M > 1 && mp > 0) ? invmod64(pmp % M, M) : (M > 1 ? 1 : 0);
        LocalElem Pp = (mp > 0) ? local_pow(P, a1) : local_one(R);
        LocalElem Tp = (M > 1) ? local_pow(Tm, a2) : local_one(R);
        Z = local_mul(Pp, Tp);
    }

    LocalElem acc = local_zero(R);
    for (size_t i = a.coords.size(); i-- > 0;) {
        acc = local_mul(acc, Z);
        if (a.coords[i] != 0) acc = local_add(acc, local_scale_rat(local_one(R), a.coords[i]));
    }
    return acc;
}

} // namespace wittsum
