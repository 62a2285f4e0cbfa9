#include "wittsum/lfunc.hpp"
#include "wittsum/util.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

namespace wittsum {

namespace {

// one pass over the slab t[0] in [lo, hi), remaining coordinates free;
// counts[i] accumulates the multiplicity of zeta_N^i
void torus_slab(const WittInput& f, const WittRing& R, const std::vector<int64_t>& s,
                int64_t ordk, int64_t pm, int64_t lo, int64_t hi,
                std::vector<int64_t>& counts) {
    int n = f.n;
    int64_t qm1 = f.q() - 1;
    int64_t N = pm * qm1;
    std::vector<int64_t> t(static_cast<size_t>(n), 0);
    for (t[0] = lo; t[0] < hi; ++t[0]) {
        std::fill(t.begin() + 1, t.end(), int64_t{0});
        while (true) {
            int64_t alpha = 0;
            for (int j = 0; j < n; ++j) alpha += s[static_cast<size_t>(j)] * (t[static_cast<size_t>(j)] % qm1);
            alpha = ((-alpha) % qm1 + qm1) % qm1;
            int64_t tau = eval_f_trace(f, R, t);
            counts[static_cast<size_t>((alpha * pm + tau * qm1) % N)]++;
            int pos = n - 1;
            while (pos >= 1 && ++t[static_cast<size_t>(pos)] == ordk) {
                t[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
}

} // namespace

CycElem exp_sum(const WittInput& f, const std::vector<int64_t>& s, int k) {
    require(k >= 1, "BadArgument", "level must be >= 1");
    int64_t qm1 = f.q() - 1;
    require(static_cast<int>(s.size()) == f.n, "BadTwist", "twist length differs from n");
    for (int64_t sj : s) require(sj >= 0 && sj < std::max<int64_t>(qm1, 1), "BadTwist", "twist entry out of range");

    std::unique_ptr<FieldCtx> ext;
    const FieldCtx* E = f.F;
    if (k > 1) {
        ext = extend_field(*f.F, k);
        E = ext.get();
    }
    auto R = build_witt_ring(*E, f.m);
    int64_t ordk = E->order;
    int64_t pm = 1;
    for (int i = 0; i < f.m; ++i) pm *= f.p();
    int64_t N = pm * qm1;

    double points = static_cast<double>(f.n) * std::log2(static_cast<double>(ordk));
    unsigned hw = std::thread::hardware_concurrency();
    int workers = 1;
    if (points > 15.0 && hw > 1) workers = static_cast<int>(std::min<unsigned>(hw, 8));
    workers = static_cast<int>(std::min<int64_t>(workers, ordk));

    std::vector<int64_t> counts(static_cast<size_t>(N), 0);
    if (workers == 1) {
        torus_slab(f, *R, s, ordk, pm, 0, ordk, counts);
    } else {
        std::vector<std::vector<int64_t>> part(static_cast<size_t>(workers),
                                               std::vector<int64_t>(static_cast<size_t>(N), 0));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            int64_t lo = ordk * w / workers, hi = ordk * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { torus_slab(f, *R, s, ordk, pm, lo, hi, part[static_cast<size_t>(w)]); });
        }
        for (auto& th : pool) th.join();
        for (const auto& pc : part)
            for (size_t i = 0; i < counts.size(); ++i) counts[i] += pc[i];
    }

    bool flip = (f.n % 2 == 0); // (-1)^{n-1}
    std::vector<mpq_class> dense(static_cast<size_t>(N));
    for (size_t i = 0; i < dense.size(); ++i)
        if (counts[i] != 0) dense[i] = flip ? mpq_class(-counts[i]) : mpq_class(counts[i]);
    return cyc_reduce(N, std::move(dense));
}

std::vector<CycElem> l_coeffs(const std::vector<CycElem>& S) {
    int64_t N = S.empty() ? 1 : S[0].conductor;
    for (const auto& x : S)
        require(x.conductor == N, "ConductorMismatch", "sums live in different cyclotomic rings");
    std::vector<CycElem> c{cyc_one(N)};
    for (size_t j = 1; j <= S.size(); ++j) {
        CycElem acc = cyc_zero(N);
        for (size_t i = 1; i <= j; ++i) acc = cyc_add(acc, cyc_mul(S[i - 1], c[j - i]));
        c.push_back(cyc_scale(acc, mpq_class(1, static_cast<long>(j))));
    }
    return c;
}

void polynomiality_check(const std::vector<CycElem>& coeffs, int64_t degree, int guard) {
    require(degree >= 0 && guard >= 1, "BadArgument", "need degree >= 0, guard >= 1");
    require(static_cast<int64_t>(coeffs.size()) > degree + guard, "BadArgument",
            "coefficient list too short for the guard window");
    for (int64_t i = degree + 1; i <= degree + guard; ++i)
        require(coeffs[static_cast<size_t>(i)].is_zero(), "PolynomialityViolated",
                "coefficient " + std::to_string(i) + " nonzero past claimed degree " +
                    std::to_string(degree));
    require(!coeffs[static_cast<size_t>(degree)].is_zero(), "PolynomialityViolated",
            "leading coefficient " + std::to_string(degree) + " vanishes");
}

RatPolygon newton_polygon(const std::vector<CycElem>& coeffs, const LocalCtx& R) {
    require(!coeffs.empty() && !coeffs[0].is_zero(), "BadArgument",
            "series must start with a nonzero constant term");
    int a = R.residue->deg;
    size_t imax = 0;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) imax = i;

    std::vector<std::pair<mpq_class, mpq_class>> pts;
    std::vector<size_t> omitted;
    for (size_t i = 0; i <= imax; ++i) {
        if (coeffs[i].is_zero()) continue;
        LocalVal v = local_val(embed_cyc(coeffs[i], R));
        if (v.above_cap) {
            require(i != imax, "PrecisionExhausted", "last coefficient valuation above the cap");
            omitted.push_back(i);
            continue;
        }
        mpq_class y = v.v / a;
        pts.emplace_back(mpq_class(static_cast<long>(i)), y);
    }
    RatPolygon hull = lower_hull(std::move(pts));
    mpq_class cap(R.T, a);
    cap.canonicalize();
    for (size_t i : omitted)
        require(polygon_value(hull, mpq_class(static_cast<long>(i))) <= cap, "PrecisionExhausted",
                "unresolved coefficient " + std::to_string(i) + " could cut the hull");
    return hull;
}

std::vector<mpq_class> averaged_weights(const NewtonData& nd, std::vector<int64_t> s,
                                        int64_t p, int a) {
    require(a >= 1, "BadArgument", "a must be >= 1");
    int64_t q = 1;
    for (int i = 0; i < a; ++i) q *= p;
    int64_t qm1 = q - 1;
    mpq_class inv(1, a);
    std::vector<mpq_class> avg;
    std::vector<int64_t> cur = s;
    for (int i = 0; i < a; ++i) {
        auto ws = weight_series(nd, cur, q);
        if (avg.size() < ws.P.size()) avg.resize(ws.P.size(), mpq_class(0));
        for (size_t j = 0; j < ws.P.size(); ++j) avg[j] += inv * ws.P[j];
        for (auto& x : cur) x = qm1 == 1 ? 0 : (x * p) % qm1;
    }
    return avg;
}

LSeriesResult theorem12_check(const WittInput& f, const std::vector<int64_t>& s,
                              const NewtonData& nd, const LPipeline& opt) {
    LSeriesResult out;
    int64_t q = f.q();
    int a = f.a();
    out.degree = nd.volume_deg;
    out.guard = opt.guard >= 1 ? opt.guard : 2;
    int64_t pm = 1;
    for (int i = 0; i < f.m; ++i) pm *= f.p();
    out.conductor = pm * (q - 1);

    int64_t K = out.degree + out.guard;
    for (int64_t k = 1; k <= K; ++k) out.S.push_back(exp_sum(f, s, static_cast<int>(k)));
    out.coeffs = l_coeffs(out.S);
    for (size_t i = 0; i < out.coeffs.size(); ++i)
        require(out.coeffs[i].is_integral(), "IntegralityViolated",
                "coefficient " + std::to_string(i) + " is not an algebraic integer");
    polynomiality_check(out.coeffs, out.degree, out.guard);

    out.hodge = hodge_polygon(averaged_weights(nd, s, f.p(), a), nd.D * (q - 1));

    long t = opt.T > 0 ? opt.T : static_cast<long>(2 * a * out.degree + 4);
    for (int attempt = 0;; ++attempt, t *= 2) {
        auto R = build_local(*f.F, f.m, t);
        try {
            out.newton = newton_polygon(out.coeffs, *R);
            out.T_used = t;
            break;
        } catch (const Error& e) {
            if (e.code() != "PrecisionExhausted" || attempt >= opt.retries) throw;
        }
    }
    out.comparison = polygon_above(out.newton, out.hodge);
    return out;
}

} // namespace wittsum
