#include "wittsum/dwork.hpp"
#include "wittsum/util.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace wittsum {

namespace {

std::string vec_str(const std::vector<int64_t>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// one univariate splitting factor E(c x^step): nonzero coefficients of
// AH_j c^j, cut by valuation growth
struct Factor {
    std::vector<int64_t> step;
    std::vector<std::pair<int, LocalElem>> coeff; // j >= 1 entries
};

Factor build_factor(const LocalCtx& R, const LocalElem& c, std::vector<int64_t> step,
                    const std::vector<mpq_class>& ah) {
    Factor F;
    F.step = std::move(step);
    LocalElem cj = local_one(R);
    for (int j = 1;; ++j) {
        cj = local_mul(cj, c);
        if (cj.is_zero()) break;
        require(static_cast<size_t>(j) < ah.size(), "Internal", "Artin-Hasse table too short");
        LocalElem t = local_scale_rat(cj, ah[static_cast<size_t>(j)]);
        if (!t.is_zero()) F.coeff.emplace_back(j, std::move(t));
    }
    return F;
}

// pi_level cache plus the E(pi_level) = zeta_{p^m}^{p^{m-level}} recheck
LocalElem checked_pi(const LocalCtx& R, int level, std::vector<LocalElem>& cache) {
    size_t idx = static_cast<size_t>(level);
    if (cache.size() <= idx) cache.resize(idx + 1);
    if (cache[idx].R == nullptr) {
        LocalElem pi = dwork_pi(R, level);
        int64_t shift = ipow64(R.p, R.m - level);
        require(local_eq(ah_eval(R, pi), zeta_pm_pow(R, shift)), "Internal",
                "splitting root does not hit the expected root of unity");
        cache[idx] = pi;
    }
    return cache[idx];
}

void series_insert(SeriesExpansion& E, const NewtonData& nd, std::vector<int64_t> w,
                   LocalElem v) {
    if (v.is_zero()) return;
    if (cone_degree(nd, w) > E.cutoff) return;
    auto it = E.a.find(w);
    if (it == E.a.end()) {
        E.a.emplace(std::move(w), std::move(v));
    } else {
        it->second = local_add(it->second, v);
        if (it->second.is_zero()) E.a.erase(it);
    }
}

void convolve_factor(SeriesExpansion& E, const NewtonData& nd, const Factor& F) {
    SeriesExpansion out;
    out.R = E.R;
    out.cutoff = E.cutoff;
    out.decay_den = E.decay_den;
    for (const auto& [w, aw] : E.a) {
        series_insert(out, nd, w, aw); // j = 0 term of the factor
        std::vector<int64_t> w2 = w;
        int prev = 0;
        for (const auto& [j, cj] : F.coeff) {
            for (int st = prev; st < j; ++st)
                for (size_t i = 0; i < w2.size(); ++i) w2[i] += F.step[i];
            prev = j;
            series_insert(out, nd, w2, local_mul(aw, cj));
        }
    }
    E = std::move(out);
}

void check_decay(const SeriesExpansion& E, const NewtonData& nd) {
    for (const auto& [w, v] : E.a) {
        LocalVal val = local_val(v);
        if (val.above_cap) continue;
        mpq_class need = cone_degree(nd, w) / E.decay_den;
        require(val.v >= need, "DecayViolated",
                "coefficient at " + vec_str(w) + " decays too slowly");
    }
}

SeriesExpansion expand_shifts(const WittInput& f, const NewtonData& nd, const LocalCtx& R,
                              int lcount, const mpq_class& cutoff, int64_t decay_den) {
    require(R.residue == f.F, "CtxMismatch", "expansion context must sit over the input field");
    require(R.m == f.m, "CtxMismatch", "ramified level differs from the input length");
    int64_t e_max = ipow64(f.p(), f.m - 1) * (f.p() - 1);
    auto ah = artin_hasse(f.p(), static_cast<int>(R.T * e_max) + 2);
    std::vector<LocalElem> pis;

    SeriesExpansion E;
    E.R = &R;
    E.cutoff = cutoff;
    E.decay_den = decay_den;
    E.a.emplace(std::vector<int64_t>(static_cast<size_t>(f.n), 0), local_one(R));
    for (int l = 0; l < lcount; ++l) {
        int64_t pl = ipow64(f.p(), l);
        for (const auto& t : f.terms) {
            LocalElem pi = checked_pi(R, f.m - t.level, pis);
            int64_t dl = t.coeff.e % R.residue->order;
            LocalElem c = local_mul(pi, teichmuller(R, dl * (pl % R.residue->order)));
            std::vector<int64_t> step(t.u.size());
            for (size_t i = 0; i < step.size(); ++i) step[i] = t.u[i] * pl;
            convolve_factor(E, nd, build_factor(R, c, std::move(step), ah));
        }
    }
    check_decay(E, nd);
    return E;
}

} // namespace

LocalElem ah_eval(const LocalCtx& R, const LocalElem& x) {
    if (x.is_zero()) return local_one(R);
    LocalVal v = local_val(x);
    require(v.above_cap || v.v > 0, "BadArgument", "series point must have positive valuation");
    int64_t e_max = ipow64(R.p, R.m - 1) * (R.p - 1);
    auto ah = artin_hasse(R.p, static_cast<int>(R.T * e_max) + 2);
    LocalElem acc = local_one(R);
    LocalElem xj = local_one(R);
    for (size_t j = 1; j < ah.size(); ++j) {
        xj = local_mul(xj, x);
        if (xj.is_zero()) break;
        acc = local_add(acc, local_scale_rat(xj, ah[j]));
    }
    require(xj.is_zero(), "Internal", "Artin-Hasse evaluation did not terminate");
    return acc;
}

SeriesExpansion expand_Ef(const WittInput& f, const NewtonData& nd, const LocalCtx& R,
                          const mpq_class& cutoff) {
    return expand_shifts(f, nd, R, 1, cutoff, f.p() - 1);
}

SeriesExpansion expand_Efqk(const WittInput& f, const NewtonData& nd, const LocalCtx& R, int k,
                            const mpq_class& cutoff) {
    require(k >= 1, "BadArgument", "level must be >= 1");
    int ak = f.a() * k;
    return expand_shifts(f, nd, R, ak, cutoff, ipow64(f.p(), ak - 1) * (f.p() - 1));
}

const LocalElem* series_coeff(const SeriesExpansion& E, const std::vector<int64_t>& w) {
    auto it = E.a.find(w);
    return it == E.a.end() ? nullptr : &it->second;
}

SeriesExpansion series_product(const SeriesExpansion& A, const SeriesExpansion& B,
                               const NewtonData& nd, const mpq_class& cutoff, int64_t decay_den) {
    require(A.R == B.R, "CtxMismatch", "series live in different rings");
    SeriesExpansion out;
    out.R = A.R;
    out.cutoff = cutoff;
    out.decay_den = decay_den;
    for (const auto& [wa, va] : A.a)
        for (const auto& [wb, vb] : B.a) {
            std::vector<int64_t> w = wa;
            for (size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
            series_insert(out, nd, std::move(w), local_mul(va, vb));
        }
    return out;
}

SeriesExpansion series_power_subst(const SeriesExpansion& A, int64_t e, const NewtonData& nd,
                                   const mpq_class& cutoff) {
    require(e >= 1, "BadArgument", "substitution power must be >= 1");
    SeriesExpansion out;
    out.R = A.R;
    out.cutoff = cutoff;
    out.decay_den = A.decay_den;
    for (const auto& [w, v] : A.a) {
        std::vector<int64_t> w2 = w;
        for (auto& x : w2) x *= e;
        series_insert(out, nd, std::move(w2), v);
    }
    return out;
}

DworkCheck lemma23_check(const WittInput& f, const NewtonData& nd, int k,
                         const std::vector<std::vector<int64_t>>& samples, long T_check) {
    require(k >= 1 && T_check >= 2, "BadArgument", "need k >= 1 and T_check >= 2");
    int ak = f.a() * k;
    int64_t decay_den = ipow64(f.p(), ak - 1) * (f.p() - 1);
    mpq_class cutoff(decay_den * T_check);

    auto R = build_local(*f.F, f.m, T_check);
    auto E = expand_Efqk(f, nd, *R, k, cutoff);

    std::unique_ptr<FieldCtx> ext;
    const FieldCtx* Ek = f.F;
    std::unique_ptr<LocalCtx> Rk_holder;
    const LocalCtx* Rk = R.get();
    if (k > 1) {
        ext = extend_field(*f.F, k);
        Ek = ext.get();
        Rk_holder = build_local(*Ek, f.m, T_check);
        Rk = Rk_holder.get();
    }
    std::vector<std::pair<std::vector<int64_t>, LocalElem>> emb;
    emb.reserve(E.a.size());
    for (const auto& [w, c] : E.a) emb.emplace_back(w, k > 1 ? local_embed(c, *Rk) : c);

    auto W = build_witt_ring(*Ek, f.m);
    int64_t ordk = Ek->order;
    for (const auto& t : samples) {
        require(static_cast<int>(t.size()) == f.n, "BadArgument", "sample arity mismatch");
        for (int64_t tj : t) require(tj >= 0 && tj < ordk, "BadArgument", "sample dlog out of range");
        int64_t tau = eval_f_trace(f, *W, t);
        LocalElem lhs = zeta_pm_pow(*Rk, tau);
        LocalElem rhs = local_zero(*Rk);
        for (const auto& [w, c] : emb) {
            int64_t dot = 0;
            for (size_t j = 0; j < w.size(); ++j) dot += w[j] % ordk * (t[j] % ordk) % ordk;
            dot = (dot % ordk + ordk) % ordk;
            rhs = local_add(rhs, local_mul(c, teichmuller(*Rk, dot)));
        }
        require(local_eq(lhs, rhs), "CheckFailed",
                "splitting identity fails at x = " + vec_str(t) + ", k = " + std::to_string(k));
    }
    return DworkCheck{static_cast<int64_t>(samples.size()), T_check, cutoff};
}

DworkCheck trace_formula_check(const WittInput& f, const NewtonData& nd,
                               const std::vector<int64_t>& s, int k, long T_check) {
    require(k >= 1 && T_check >= 2, "BadArgument", "need k >= 1 and T_check >= 2");
    require(static_cast<int>(s.size()) == f.n, "BadTwist", "twist length differs from n");
    for (int64_t sj : s)
        require(sj >= 0 && sj < std::max<int64_t>(f.q() - 1, 1), "BadTwist", "twist entry out of range");
    int ak = f.a() * k;
    int64_t p = f.p();
    int64_t q = f.q();
    int64_t qm1 = q - 1;
    int64_t qk = ipow64(q, k);
    int64_t ratio = (qk - 1) / qm1;
    int64_t decay_den = ipow64(p, ak - 1) * (p - 1);
    mpq_class cutoff(decay_den * T_check);

    auto R = build_local(*f.F, f.m, T_check);
    auto E = expand_Efqk(f, nd, *R, k, cutoff);

    // enumerate w in the cone with w = s mod q-1 and deg(w) <= cutoff/ratio;
    // the corresponding series keys are w (q^k-1)/(q-1)
    mpq_class B = cutoff / ratio;
    std::vector<int64_t> lo(static_cast<size_t>(f.n), 0), hi(static_cast<size_t>(f.n), 0);
    for (const auto& v : nd.vertices)
        for (int j = 0; j < f.n; ++j) {
            mpq_class c = B * v[static_cast<size_t>(j)];
            mpz_class fl, ce;
            mpz_fdiv_q(fl.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
            mpz_cdiv_q(ce.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
            lo[static_cast<size_t>(j)] = std::min(lo[static_cast<size_t>(j)], fl.get_si());
            hi[static_cast<size_t>(j)] = std::max(hi[static_cast<size_t>(j)], ce.get_si());
        }

    LocalElem total = local_zero(*R);
    int64_t terms = 0;
    std::vector<int64_t> w = lo;
    while (true) {
        bool match = true;
        for (int j = 0; j < f.n && match; ++j)
            match = ((w[static_cast<size_t>(j)] - s[static_cast<size_t>(j)]) % qm1 + qm1) % qm1 == 0;
        if (match && in_cone(nd, w) && cone_degree(nd, w) <= B) {
            std::vector<int64_t> key = w;
            for (auto& x : key) x *= ratio;
            if (const LocalElem* c = series_coeff(E, key)) {
                total = local_add(total, *c);
                ++terms;
            }
        }
        int pos = f.n - 1;
        while (pos >= 0 && ++w[static_cast<size_t>(pos)] > hi[static_cast<size_t>(pos)]) {
            w[static_cast<size_t>(pos)] = lo[static_cast<size_t>(pos)];
            --pos;
        }
        if (pos < 0) break;
    }

    mpz_class factor = 1;
    for (int i = 0; i < f.n; ++i) factor *= qk - 1;
    if (f.n % 2 == 0) factor = -factor;
    total = local_scale(total, factor);

    LocalElem lhs = embed_cyc(exp_sum(f, s, k), *R);
    if (!local_eq(lhs, total)) {
        LocalVal rv = local_val(local_sub(lhs, total));
        std::string res = rv.above_cap ? "above cap" : rv.v.get_str();
        fail("CheckFailed", "trace formula off at k = " + std::to_string(k) +
                                ", residual valuation " + res);
    }
    return DworkCheck{terms, T_check, cutoff};
}

} // namespace wittsum
