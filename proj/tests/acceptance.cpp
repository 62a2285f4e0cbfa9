// End-to-end acceptance checks, one verdict line each.  Everything is exact
// arithmetic; the only pinned knobs are the p-adic check precision (p^6), the
// random seeds and the wall-clock budgets.
#include "wittsum/dwork.hpp"
#include "wittsum/gh.hpp"
#include "wittsum/lfunc.hpp"
#include "wittsum/padic.hpp"
#include "wittsum/polytope.hpp"
#include "wittsum/util.hpp"
#include "wittsum/witt.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace wittsum;

namespace {

using clock_t_ = std::chrono::steady_clock;

double secs(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

mpq_class rat(long n, long d = 1) {
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

RatPolygon poly(std::vector<std::pair<mpq_class, mpq_class>> v) {
    RatPolygon p;
    p.v = std::move(v);
    return p;
}

WittTerm term(const FieldCtx& F, int lvl, std::vector<int64_t> u, int64_t dlog = 0) {
    return WittTerm{lvl, std::move(u), ff_from_dlog(F, dlog)};
}

// f = [x] (+ V([x]) when levels > 1), one variable
WittInput one_var(const FieldCtx& F, int m, int levels) {
    std::vector<WittTerm> ts;
    for (int i = 0; i < levels; ++i) ts.push_back(term(F, i, {1}));
    return make_witt_input(F, m, 1, std::move(ts));
}

std::string poly_str(const RatPolygon& P) {
    std::ostringstream os;
    for (const auto& v : P.v)
        os << "(" << v.first.get_str() << "," << v.second.get_str() << ") ";
    return os.str();
}

// 1. m=1 one-variable polygons: the single slope is the twist digit sum over
// a(p-1), across several fields and every nontrivial twist
bool gauss_polygons(std::string& note) {
    auto t0 = clock_t_::now();
    const std::vector<std::pair<int64_t, int>> fields = {{2, 2}, {3, 1}, {3, 2}, {5, 1}, {7, 1}};
    int runs = 0;
    bool ok = true;
    for (auto [p, a] : fields) {
        auto F = build_field(p, a);
        WittInput f = one_var(*F, 1, 1);
        NewtonData nd = build_delta(f);
        for (int64_t s = 1; s <= F->size - 2; ++s) {
            LSeriesResult r = theorem12_check(f, {s}, nd);
            DigitExpansion de = digit_expansion(p, a, s);
            RatPolygon want = poly({{rat(0), rat(0)}, {rat(1), rat(de.digit_sum(), a * (p - 1))}});
            if (!(r.newton == want)) {
                ok = false;
                note = "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                       " s=" + std::to_string(s) + ": got " + poly_str(r.newton);
                return false;
            }
            ++runs;
        }
    }
    double el = secs(t0);
    std::ostringstream os;
    os << runs << " twists, " << el << "s";
    note = os.str();
    return ok && el < 30.0;
}

// 2. untwisted m=2 one-variable polygons over F_3 and F_2: exact degree drop
// past n!Vol and the frozen vertex lists
bool heilbronn_polygons(std::string& note) {
    auto t0 = clock_t_::now();
    bool ok = true;
    std::ostringstream why;

    auto F3 = build_field(3, 1);
    WittInput f3 = one_var(*F3, 2, 1);
    LSeriesResult r3 = theorem12_check(f3, {0}, build_delta(f3));
    ok &= r3.degree == 3 && r3.coeffs.size() == 6;
    ok &= r3.coeffs[4].is_zero() && r3.coeffs[5].is_zero();
    RatPolygon want3 =
        poly({{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(2), rat(1, 3)}, {rat(3), rat(1)}});
    if (!(r3.newton == want3)) {
        ok = false;
        why << "p=3: " << poly_str(r3.newton);
    }

    auto F2 = build_field(2, 1);
    WittInput f2 = one_var(*F2, 2, 1);
    LSeriesResult r2 = theorem12_check(f2, {0}, build_delta(f2));
    ok &= r2.degree == 2 && r2.coeffs.size() == 5;
    ok &= r2.coeffs[3].is_zero() && r2.coeffs[4].is_zero();
    RatPolygon want2 = poly({{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(2), rat(1, 2)}});
    if (!(r2.newton == want2)) {
        ok = false;
        why << "p=2: " << poly_str(r2.newton);
    }

    double el = secs(t0);
    std::ostringstream os;
    os << "degrees 3 and 2, " << el << "s" << why.str();
    note = os.str();
    return ok && el < 120.0;
}

// 3. twisted m=2 polygon over F_3 equals the explicit digit formula and does
// not move when a level-1 term is added
bool twisted_polygon(std::string& note) {
    auto F3 = build_field(3, 1);
    RatPolygon want = poly(
        {{rat(0), rat(0)}, {rat(1), rat(1, 6)}, {rat(2), rat(2, 3)}, {rat(3), rat(3, 2)}});
    bool ok = gh_polygon(3, 1, 2, 1) == want;

    for (int levels : {1, 2}) {
        WittInput f = one_var(*F3, 2, levels);
        NewtonData nd = build_delta(f);
        LSeriesResult r = theorem12_check(f, {1}, nd);
        if (!(r.newton == want)) {
            note = "levels=" + std::to_string(levels) + ": " + poly_str(r.newton);
            return false;
        }
        GHReport g = theorem13_check(f, 1, r.newton);
        ok &= g.match;
    }
    note = "both lifts give " + poly_str(want);
    return ok;
}

// 4. two variables, support {(1,0),(0,1),(-1,-1)}, every twist over F_3:
// degree 2!Vol and newton above hodge with matching endpoints
bool rank_two_comparison(std::string& note) {
    auto t0 = clock_t_::now();
    auto F3 = build_field(3, 1);
    WittInput f = make_witt_input(
        *F3, 1, 2, {term(*F3, 0, {1, 0}), term(*F3, 0, {0, 1}), term(*F3, 0, {-1, -1})});
    NewtonData nd = build_delta(f);
    bool ok = nd.volume_deg == 3;
    for (int64_t s0 : {0, 1})
        for (int64_t s1 : {0, 1}) {
            LSeriesResult r = theorem12_check(f, {s0, s1}, nd);
            bool good = r.degree == 3 && r.comparison.above && r.comparison.endpoints_equal;
            if (!good) {
                note = "s=(" + std::to_string(s0) + "," + std::to_string(s1) + ") failed";
                return false;
            }
        }
    double el = secs(t0);
    std::ostringstream os;
    os << "4 twists, degree 3, " << el << "s";
    note = os.str();
    return ok && el < 300.0;
}

// the three one-variable instances over F_3 the p-adic oracles run on
std::vector<std::pair<int, int>> oracle_shapes() {
    return {{1, 1}, {2, 1}, {2, 2}}; // (m, levels)
}

// 5. character sums against the coefficient sum of the splitting series,
// mod 3^6, both twists, k = 1, 2
bool trace_formula(std::string& note) {
    auto F3 = build_field(3, 1);
    int checked = 0;
    for (auto [m, levels] : oracle_shapes()) {
        WittInput f = one_var(*F3, m, levels);
        NewtonData nd = build_delta(f);
        for (int64_t s : {0, 1})
            for (int k : {1, 2}) {
                try {
                    trace_formula_check(f, nd, {s}, k);
                } catch (const Error& e) {
                    note = "m=" + std::to_string(m) + " levels=" + std::to_string(levels) +
                           " s=" + std::to_string(s) + " k=" + std::to_string(k) + ": " + e.what();
                    return false;
                }
                ++checked;
            }
    }
    note = std::to_string(checked) + " comparisons";
    return true;
}

// 6. additive character of f(x) against the series value at the Teichmuller
// lift: every point at k=1, twenty seeded draws at k=2, mod 3^6
bool splitting_pointwise(std::string& note) {
    auto F3 = build_field(3, 1);
    std::mt19937 rng(20260819u);
    int64_t checked = 0;
    for (auto [m, levels] : oracle_shapes()) {
        WittInput f = one_var(*F3, m, levels);
        NewtonData nd = build_delta(f);
        try {
            DworkCheck c1 = lemma23_check(f, nd, 1, {{0}, {1}});
            std::vector<std::vector<int64_t>> pts;
            std::uniform_int_distribution<int64_t> draw(0, 7); // dlogs in F_9^x
            for (int i = 0; i < 20; ++i) pts.push_back({draw(rng)});
            DworkCheck c2 = lemma23_check(f, nd, 2, pts);
            checked += c1.checked + c2.checked;
        } catch (const Error& e) {
            note = "m=" + std::to_string(m) + " levels=" + std::to_string(levels) + ": " + e.what();
            return false;
        }
    }
    note = std::to_string(checked) + " points";
    return true;
}

// 7. reciprocal-factorial determinants against the closed-form product, with
// the p-adic unit verdict, for every digit and size up to 12
bool factorial_determinants(std::string& note) {
    auto t0 = clock_t_::now();
    int count = 0;
    for (int64_t p : {2, 3, 5})
        for (int64_t sd = 0; sd < p; ++sd)
            for (int n = 0; n <= 12; ++n) {
                try {
                    FactorialDet d = factorial_matrix_det(p, sd, n);
                    if (!d.unit) {
                        note = "p=" + std::to_string(p) + " s=" + std::to_string(sd) +
                               " n=" + std::to_string(n) + ": not a unit";
                        return false;
                    }
                } catch (const Error& e) {
                    note = e.what();
                    return false;
                }
                ++count;
            }
    double el = secs(t0);
    std::ostringstream os;
    os << count << " determinants, " << el << "s";
    note = os.str();
    return el < 10.0;
}

// 8. weight polynomials on every instance above: nonnegative coefficients,
// value n!Vol at t=1 for each twist, total mass (q-1)^n n!Vol
bool weight_polynomials(std::string& note) {
    struct Inst {
        std::unique_ptr<FieldCtx> F;
        WittInput f;
    };
    std::vector<Inst> insts;
    for (auto [p, a] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        Inst i{build_field(p, a), {}};
        i.f = one_var(*i.F, 1, 1);
        insts.push_back(std::move(i));
    }
    for (int64_t p : {3, 2}) {
        Inst i{build_field(p, 1), {}};
        i.f = one_var(*i.F, 2, 1);
        insts.push_back(std::move(i));
    }
    {
        Inst i{build_field(3, 1), {}};
        i.f = one_var(*i.F, 2, 2);
        insts.push_back(std::move(i));
    }
    {
        Inst i{build_field(3, 1), {}};
        i.f = make_witt_input(*i.F, 1, 2,
                              {term(*i.F, 0, {1, 0}), term(*i.F, 0, {0, 1}),
                               term(*i.F, 0, {-1, -1})});
        insts.push_back(std::move(i));
    }

    int64_t twists = 0;
    for (const auto& inst : insts) {
        NewtonData nd = build_delta(inst.f);
        int64_t q = inst.f.q();
        int n = inst.f.n;
        // all twist vectors in [0, q-2]^n
        std::vector<int64_t> s(n, 0);
        int64_t total = 0, expect_each = nd.volume_deg;
        while (true) {
            WeightSeries ws = weight_series(nd, s, q);
            for (int64_t c : ws.P)
                if (c < 0) {
                    note = "negative coefficient at q=" + std::to_string(q);
                    return false;
                }
            if (ws.p_at_one() != expect_each) {
                note = "P(1) = " + std::to_string(ws.p_at_one()) + " != " +
                       std::to_string(expect_each) + " at q=" + std::to_string(q);
                return false;
            }
            total += ws.p_at_one();
            ++twists;
            int i = 0;
            while (i < n && ++s[i] > q - 2) s[i++] = 0;
            if (i == n) break;
        }
        int64_t mass = expect_each;
        for (int i = 0; i < n; ++i) mass *= q - 1;
        if (total != mass) {
            note = "twist mass " + std::to_string(total) + " != " + std::to_string(mass);
            return false;
        }
    }
    note = std::to_string(insts.size()) + " instances, " + std::to_string(twists) + " twists";
    return true;
}

// exhaustive ring-map test of the exponent-arithmetic embedding on length-2
// Witt vectors over one field
bool witt_embedding_field(const FieldCtx& F, std::string& note) {
    auto R = build_witt_ring(F, 2);
    std::vector<FieldElem> elems;
    elems.push_back(ff_from_dlog(F, -1)); // zero
    for (int64_t e = 0; e < F.size - 1; ++e) elems.push_back(ff_from_dlog(F, e));

    std::vector<WittVec> vecs;
    std::vector<WRElem> imgs;
    std::set<WRElem> distinct;
    for (const auto& a0 : elems)
        for (const auto& a1 : elems) {
            WittVec w{&F, {a0, a1}};
            vecs.push_back(w);
            imgs.push_back(iota(*R, w));
            distinct.insert(imgs.back());
        }
    if (distinct.size() != vecs.size()) {
        note = "images collide over q=" + std::to_string(F.size);
        return false;
    }
    for (size_t i = 0; i < vecs.size(); ++i)
        for (size_t j = 0; j < vecs.size(); ++j) {
            if (iota(*R, witt_add(vecs[i], vecs[j])) != wr_add(*R, imgs[i], imgs[j])) {
                note = "additivity fails over q=" + std::to_string(F.size);
                return false;
            }
            if (iota(*R, witt_mul(vecs[i], vecs[j])) != wr_mul(*R, imgs[i], imgs[j])) {
                note = "multiplicativity fails over q=" + std::to_string(F.size);
                return false;
            }
        }
    return true;
}

// 9. infrastructure: the Witt embedding is an injective ring map, valuations
// are additive and ultrametric, and the series roots have the right
// valuation and exponential
bool infrastructure(std::string& note) {
    auto F4 = build_field(2, 2);
    auto F9 = build_field(3, 2);
    if (!witt_embedding_field(*F4, note) || !witt_embedding_field(*F9, note)) return false;

    // random valuation properties in the ramified model over F_9, zeta_9
    auto R = build_local(*F9, 2, 8);
    std::mt19937_64 rng(0x77177ULL);
    std::uniform_int_distribution<long> coef(0, static_cast<long>(R->pT.get_si()) - 1);
    std::uniform_int_distribution<int> shift(0, 5);
    auto random_elem = [&]() {
        LocalElem x = local_zero(*R);
        for (auto& row : x.c)
            for (auto& v : row) v = coef(rng);
        if (shift(rng) == 0) x = local_mul(x, local_pow(local_pi0(*R), shift(rng)));
        return x;
    };
    long cap = R->T;
    for (int i = 0; i < 1000; ++i) {
        LocalElem x = random_elem(), y = random_elem();
        LocalVal vx = local_val(x), vy = local_val(y);
        if (vx.above_cap || vy.above_cap) continue;

        LocalVal vp = local_val(local_mul(x, y));
        mpq_class sum = vx.v + vy.v;
        if (sum < cap ? (vp.above_cap || vp.v != sum) : !vp.above_cap) {
            note = "product valuation broke at sample " + std::to_string(i);
            return false;
        }

        LocalVal va = local_val(local_add(x, y));
        mpq_class lo = std::min(vx.v, vy.v);
        if (!va.above_cap && va.v < lo) {
            note = "ultrametric broke at sample " + std::to_string(i);
            return false;
        }
        if (vx.v != vy.v && (va.above_cap || va.v != lo)) {
            note = "distinct-valuation sum broke at sample " + std::to_string(i);
            return false;
        }
    }

    // pi_m valuation and its Artin-Hasse image for several (p, m)
    for (auto [p, m] : std::vector<std::pair<int64_t, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        auto F = build_field(p, 1);
        auto Rm = build_local(*F, m, 8);
        LocalElem pi = dwork_pi(*Rm, m);
        LocalVal v = local_val(pi);
        mpq_class want(1, ipow64(p, m - 1) * (p - 1));
        want.canonicalize();
        if (v.above_cap || v.v != want) {
            note = "root valuation off at p=" + std::to_string(p) + " m=" + std::to_string(m);
            return false;
        }
        if (!local_eq(ah_eval(*Rm, pi), zeta_pm_pow(*Rm, 1))) {
            note = "exponential image off at p=" + std::to_string(p) + " m=" + std::to_string(m);
            return false;
        }
    }
    note = "embeddings, 1000 valuation samples, 5 series roots";
    return true;
}

} // namespace

int main() {
    struct Item {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Item items[] = {
        {"single-slope polygons from twist digit sums", gauss_polygons},
        {"untwisted degree-drop polygons over F_3 and F_2", heilbronn_polygons},
        {"twisted polygon matches the explicit formula", twisted_polygon},
        {"rank-two newton above hodge, equal endpoints", rank_two_comparison},
        {"coefficient trace formula mod 3^6", trace_formula},
        {"splitting identity at torus points mod 3^6", splitting_pointwise},
        {"factorial determinant closed form stays a unit", factorial_determinants},
        {"weight polynomials: nonnegative, correct mass", weight_polynomials},
        {"witt embedding, valuations, series roots", infrastructure},
    };

    int fails = 0, idx = 0;
    for (const auto& it : items) {
        ++idx;
        std::string note;
        bool ok = false;
        try {
            ok = it.fn(note);
        } catch (const std::exception& e) {
            note = e.what();
        }
        std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", idx, it.name,
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        if (!ok) ++fails;
    }
    return fails;
}
