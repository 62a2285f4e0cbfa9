#include "wittsum/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace wittsum {

namespace {

using Pt = std::vector<int64_t>;

int64_t dot64(const std::vector<int64_t>& a, const Pt& b) {
    int64_t s = 0;
    for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    return s;
}

int rank_of(const std::vector<Pt>& rows, int n) {
    QMat A;
    for (const auto& r : rows) {
        QVec q;
        for (int64_t x : r) q.emplace_back(x);
        A.push_back(std::move(q));
    }
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(A.size()); col++) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(A.size()); r++)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[rank], A[piv]);
        for (int r = 0; r < static_cast<int>(A.size()); r++) {
            if (r == rank || A[r][col] == 0) continue;
            mpq_class f = A[r][col] / A[rank][col];
            for (int c = col; c < n; c++) A[r][c] -= f * A[rank][c];
        }
        rank++;
    }
    return rank;
}

int64_t cross2(const Pt& o, const Pt& a, const Pt& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain, counterclockwise cycle, collinear points dropped
std::vector<Pt> hull2d(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    std::vector<Pt> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; i++) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

mpz_class det3(const Pt& a, const Pt& b, const Pt& c) {
    mpz_class d = 0;
    d += mpz_class(a[0]) * (mpz_class(b[1]) * c[2] - mpz_class(b[2]) * c[1]);
    d -= mpz_class(a[1]) * (mpz_class(b[0]) * c[2] - mpz_class(b[2]) * c[0]);
    d += mpz_class(a[2]) * (mpz_class(b[0]) * c[1] - mpz_class(b[1]) * c[0]);
    return d;
}

// order coplanar points cyclically: project out the largest normal component
// and sort by exact angle around the centroid
std::vector<Pt> cycle_on_plane(std::vector<Pt> pts, const std::vector<int64_t>& ell) {
    int drop = 0;
    for (int i = 1; i < 3; i++)
        if (std::llabs(ell[i]) > std::llabs(ell[drop])) drop = i;
    int i1 = (drop + 1) % 3, i2 = (drop + 2) % 3;
    int64_t cnt = static_cast<int64_t>(pts.size());
    int64_t sx = 0, sy = 0;
    for (const auto& p : pts) {
        sx += p[i1];
        sy += p[i2];
    }
    auto rel = [&](const Pt& p) {
        return std::pair<int64_t, int64_t>(p[i1] * cnt - sx, p[i2] * cnt - sy);
    };
    auto half = [](const std::pair<int64_t, int64_t>& a) {
        return (a.second > 0 || (a.second == 0 && a.first > 0)) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const Pt& pa, const Pt& pb) {
        auto a = rel(pa), b = rel(pb);
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        mpz_class cr = mpz_class(a.first) * b.second - mpz_class(a.second) * b.first;
        if (cr != 0) return cr > 0;
        return pa < pb;
    });
    return pts;
}

std::vector<Facet> facets3d(const std::vector<Pt>& pts) {
    std::set<std::pair<std::vector<int64_t>, int64_t>> seen;
    std::vector<Facet> out;
    size_t n = pts.size();
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++)
            for (size_t k = j + 1; k < n; k++) {
                Pt b(3), c(3);
                for (int t = 0; t < 3; t++) {
                    b[t] = pts[j][t] - pts[i][t];
                    c[t] = pts[k][t] - pts[i][t];
                }
                mpz_class nx = mpz_class(b[1]) * c[2] - mpz_class(b[2]) * c[1];
                mpz_class ny = mpz_class(b[2]) * c[0] - mpz_class(b[0]) * c[2];
                mpz_class nz = mpz_class(b[0]) * c[1] - mpz_class(b[1]) * c[0];
                if (nx == 0 && ny == 0 && nz == 0) continue;
                mpz_class g = gcd(gcd(abs(nx), abs(ny)), abs(nz));
                nx /= g;
                ny /= g;
                nz /= g;
                require(nx.fits_slong_p() && ny.fits_slong_p() && nz.fits_slong_p(),
                        "Overflow", "facet normal exceeds table range");
                std::vector<int64_t> ell = {nx.get_si(), ny.get_si(), nz.get_si()};
                int64_t cv = dot64(ell, pts[i]);
                bool allle = true, allge = true;
                for (const auto& p : pts) {
                    int64_t d = dot64(ell, p);
                    if (d > cv) allle = false;
                    if (d < cv) allge = false;
                }
                if (!allle && !allge) continue;
                if (!allle) {
                    for (auto& e : ell) e = -e;
                    cv = -cv;
                }
                if (seen.insert({ell, cv}).second) out.push_back(Facet{ell, cv});
            }
    return out;
}

void odometer_run(const Pt& lo, const Pt& hi, int64_t step, const Pt& offset,
                  const std::function<void(const Pt&)>& body) {
    int n = static_cast<int>(lo.size());
    Pt v(n);
    for (int j = 0; j < n; j++) {
        int64_t r = ((offset[j] - lo[j]) % step + step) % step;
        v[j] = lo[j] + r;
        if (v[j] > hi[j]) return;
    }
    while (true) {
        body(v);
        int pos = 0;
        while (pos < n) {
            v[pos] += step;
            if (v[pos] <= hi[pos]) break;
            int64_t r = ((offset[pos] - lo[pos]) % step + step) % step;
            v[pos] = lo[pos] + r;
            pos++;
        }
        if (pos == n) break;
    }
}

mpq_class gauge_of(const NewtonData& nd, const Pt& w, bool* inside) {
    if (inside) *inside = true;
    mpq_class best = 0;
    bool first = true;
    for (const auto& F : nd.facets) {
        int64_t d = dot64(F.ell, w);
        if (F.c == 0) {
            if (d > 0) {
                if (inside) {
                    *inside = false;
                    return 0;
                }
                fail("OutsideCone", "point violates a cone wall");
            }
            continue;
        }
        mpq_class val(d, F.c);
        val.canonicalize();
        if (first || val > best) {
            best = val;
            first = false;
        }
    }
    require(!first, "OutsideCone", "polytope has no positive facet");
    if (best < 0) {
        // all degree functionals negative: only the origin direction remains
        if (inside) {
            *inside = false;
            return 0;
        }
        fail("OutsideCone", "point outside the spanned cone");
    }
    return best;
}

void merge_collinear(std::vector<std::pair<mpq_class, mpq_class>>& v) {
    std::vector<std::pair<mpq_class, mpq_class>> out;
    for (const auto& p : v) {
        while (out.size() >= 2) {
            const auto& a = out[out.size() - 2];
            const auto& b = out[out.size() - 1];
            mpq_class cr = (b.first - a.first) * (p.second - b.second) -
                           (b.second - a.second) * (p.first - b.first);
            if (cr == 0)
                out.pop_back();
            else
                break;
        }
        out.push_back(p);
    }
    v = std::move(out);
}

} // namespace

NewtonData build_delta(const WittInput& f) {
    require(f.n <= 3, "DimensionUnsupported", "facet enumeration is kept to n <= 3");
    NewtonData nd;
    nd.n = f.n;
    int64_t p = f.p();
    for (const auto& term : f.terms) {
        int64_t scale = 1;
        for (int i = 0; i < f.m - 1 - term.level; i++) scale *= p;
        Pt w(f.n);
        for (int j = 0; j < f.n; j++) {
            w[j] = term.u[j] * scale;
            require(std::llabs(w[j]) <= 1000000, "Overflow", "scaled exponent exceeds table range");
        }
        nd.scaled_points.push_back(std::move(w));
    }
    require(rank_of(nd.scaled_points, f.n) == f.n, "NotFullDimensional",
            "support does not span the ambient space");

    std::vector<Pt> pts = nd.scaled_points;
    pts.push_back(Pt(f.n, 0));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (f.n == 1) {
        int64_t lo = 0, hi = 0;
        for (const auto& w : pts) {
            lo = std::min(lo, w[0]);
            hi = std::max(hi, w[0]);
        }
        if (hi > 0) nd.facets.push_back(Facet{{1}, hi});
        if (lo < 0) nd.facets.push_back(Facet{{-1}, -lo});
        if (hi == 0) nd.facets.push_back(Facet{{1}, 0});
        if (lo == 0) nd.facets.push_back(Facet{{-1}, 0});
        nd.vertices = {{lo}, {hi}};
        nd.volume_deg = hi - lo;
    } else if (f.n == 2) {
        auto cyc = hull2d(pts);
        nd.vertices = cyc;
        mpz_class two_area = 0;
        for (size_t i = 0; i < cyc.size(); i++) {
            const Pt& v = cyc[i];
            const Pt& w = cyc[(i + 1) % cyc.size()];
            two_area += mpz_class(v[0]) * w[1] - mpz_class(v[1]) * w[0];
            int64_t dx = w[0] - v[0], dy = w[1] - v[1];
            int64_t g = std::gcd(std::llabs(dx), std::llabs(dy));
            std::vector<int64_t> ell = {dy / g, -dx / g};
            nd.facets.push_back(Facet{ell, dot64(ell, v)});
        }
        require(two_area.fits_slong_p(), "Overflow", "volume exceeds table range");
        nd.volume_deg = std::llabs(two_area.get_si());
    } else {
        nd.facets = facets3d(pts);
        // vertices: active facet normals span the space
        for (const auto& x : pts) {
            std::vector<Pt> act;
            for (const auto& F : nd.facets)
                if (dot64(F.ell, x) == F.c) act.push_back(F.ell);
            if (rank_of(act, 3) == 3) nd.vertices.push_back(x);
        }
        mpz_class vol6 = 0;
        for (const auto& F : nd.facets) {
            if (F.c == 0) continue;
            std::vector<Pt> on;
            for (const auto& v : nd.vertices)
                if (dot64(F.ell, v) == F.c) on.push_back(v);
            auto cyc = cycle_on_plane(on, F.ell);
            mpz_class part = 0;
            for (size_t t = 1; t + 1 < cyc.size(); t++) part += det3(cyc[0], cyc[t], cyc[t + 1]);
            vol6 += abs(part);
        }
        require(vol6.fits_slong_p(), "Overflow", "volume exceeds table range");
        nd.volume_deg = vol6.get_si();
    }
    require(nd.volume_deg > 0, "NotFullDimensional", "polytope has empty interior");

    for (const auto& v : nd.vertices) {
        bool zero = std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
        if (!zero) require(gauge_of(nd, v, nullptr) == 1, "NotFullDimensional",
                           "hull vertex off the unit level set");
    }

    // least D with D * deg integral on the cone lattice: collect denominators
    // over the enumeration window, which contains a generating set
    Pt lo(f.n, 0), hi(f.n, 0);
    for (const auto& v : nd.vertices)
        for (int j = 0; j < f.n; j++) {
            lo[j] = std::min(lo[j], (f.n + 1) * v[j]);
            hi[j] = std::max(hi[j], (f.n + 1) * v[j]);
        }
    mpz_class dlcm = 1;
    odometer_run(lo, hi, 1, Pt(f.n, 0), [&](const Pt& w) {
        bool inside = false;
        mpq_class g = gauge_of(nd, w, &inside);
        if (!inside || g > f.n + 1) return;
        dlcm = lcm(dlcm, g.get_den());
    });
    require(dlcm.fits_slong_p(), "Overflow", "degree denominator exceeds table range");
    nd.D = dlcm.get_si();
    return nd;
}

bool in_cone(const NewtonData& nd, const std::vector<int64_t>& w) {
    bool inside = false;
    gauge_of(nd, w, &inside);
    return inside;
}

mpq_class cone_degree(const NewtonData& nd, const std::vector<int64_t>& w) {
    return gauge_of(nd, w, nullptr);
}

mpq_class cone_degree(const NewtonData& nd, const std::vector<mpq_class>& u) {
    // clear denominators and scale back
    mpz_class den = 1;
    for (const auto& x : u) den = lcm(den, x.get_den());
    Pt w(u.size());
    for (size_t j = 0; j < u.size(); j++) {
        mpz_class z = u[j].get_num() * (den / u[j].get_den());
        require(z.fits_slong_p(), "Overflow", "point exceeds table range");
        w[j] = z.get_si();
    }
    mpq_class g = cone_degree(nd, w);
    g /= mpq_class(den);
    g.canonicalize();
    return g;
}

WeightSeries weight_series(const NewtonData& nd, const std::vector<int64_t>& s, int64_t q) {
    require(q >= 2, "BadTwist", "q must be a prime power >= 2");
    require(s.size() == static_cast<size_t>(nd.n), "BadTwist", "twist length mismatch");
    for (int64_t sj : s)
        require(sj >= 0 && sj <= q - 2, "BadTwist", "twist component out of [0, q-2]");

    WeightSeries ws;
    ws.M = nd.D * (q - 1);
    int64_t span = (nd.n + 1) * ws.M;
    ws.W.assign(span + 1, 0);

    Pt lo(nd.n, 0), hi(nd.n, 0);
    for (const auto& v : nd.vertices)
        for (int j = 0; j < nd.n; j++) {
            lo[j] = std::min(lo[j], (nd.n + 1) * (q - 1) * v[j]);
            hi[j] = std::max(hi[j], (nd.n + 1) * (q - 1) * v[j]);
        }
    Pt offset(s.begin(), s.end());
    odometer_run(lo, hi, q - 1, offset, [&](const Pt& w) {
        bool inside = false;
        mpq_class g = gauge_of(nd, w, &inside);
        if (!inside) return;
        // scaled degree: deg(w / (q-1)) * D (q-1) = D * gauge(w)
        mpq_class k = g * nd.D;
        k.canonicalize();
        require(k.get_den() == 1, "NonIntegralDegree", "degree denominator exceeds D");
        if (k.get_num() > span) return;
        ws.W[k.get_num().get_si()]++;
    });

    // binomial expansion of (1 - t^M)^n against the counting series
    std::vector<int64_t> binom = {1};
    for (int i = 0; i < nd.n; i++) {
        binom.push_back(0);
        for (int j = static_cast<int>(binom.size()) - 1; j > 0; j--) binom[j] += binom[j - 1];
    }
    std::vector<int64_t> P(span + 1, 0);
    for (int64_t k = 0; k <= span; k++) {
        int64_t acc = 0;
        for (int i = 0; i <= nd.n; i++) {
            int64_t idx = k - i * ws.M;
            if (idx < 0) break;
            acc += (i % 2 ? -1 : 1) * binom[i] * ws.W[idx];
        }
        P[k] = acc;
    }
    for (int64_t k = nd.n * ws.M + 1; k <= span; k++)
        require(P[k] == 0, "NonPolynomialSeries", "weight series does not terminate");
    P.resize(nd.n * ws.M + 1);
    while (!P.empty() && P.back() == 0) P.pop_back();
    for (int64_t c : P) require(c >= 0, "NonPolynomialSeries", "negative coefficient in P");
    ws.P = std::move(P);
    return ws;
}

RatPolygon lower_hull(std::vector<std::pair<mpq_class, mpq_class>> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < pts.size(); i++)
        require(pts[i].first != pts[i + 1].first, "BadInput", "duplicate abscissa");
    RatPolygon out;
    for (const auto& p : pts) {
        while (out.v.size() >= 2) {
            const auto& a = out.v[out.v.size() - 2];
            const auto& b = out.v[out.v.size() - 1];
            mpq_class cr = (b.first - a.first) * (p.second - b.second) -
                           (b.second - a.second) * (p.first - b.first);
            if (cr <= 0)
                out.v.pop_back();
            else
                break;
        }
        out.v.push_back(p);
    }
    return out;
}

mpq_class polygon_value(const RatPolygon& P, const mpq_class& x) {
    require(!P.v.empty(), "BadInput", "empty polygon");
    require(x >= P.v.front().first && x <= P.v.back().first, "BadInput",
            "abscissa outside the polygon");
    for (size_t i = 0; i + 1 < P.v.size(); i++) {
        if (x > P.v[i + 1].first) continue;
        const auto& a = P.v[i];
        const auto& b = P.v[i + 1];
        mpq_class y = a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
        y.canonicalize();
        return y;
    }
    return P.v.back().second;
}

RatPolygon hodge_polygon(const std::vector<mpq_class>& coeffs, int64_t M) {
    RatPolygon out;
    out.v.push_back({0, 0});
    mpq_class cx = 0, cy = 0;
    for (size_t i = 0; i < coeffs.size(); i++) {
        require(coeffs[i] >= 0, "NegativeCoefficient", "polygon multiplicities must be >= 0");
        if (coeffs[i] == 0) continue;
        mpq_class slope(static_cast<long>(i), static_cast<long>(M));
        slope.canonicalize();
        cx += coeffs[i];
        cy += coeffs[i] * slope;
        out.v.push_back({cx, cy});
    }
    merge_collinear(out.v);
    return out;
}

AboveReport polygon_above(const RatPolygon& upper, const RatPolygon& lower) {
    AboveReport rep;
    require(!upper.v.empty() && !lower.v.empty(), "BadInput", "empty polygon");
    rep.endpoints_equal = upper.v.back() == lower.v.back() && upper.v.front() == lower.v.front();
    mpq_class end = std::min(upper.v.back().first, lower.v.back().first);
    std::set<mpq_class> xs;
    for (const auto& p : upper.v)
        if (p.first <= end) xs.insert(p.first);
    for (const auto& p : lower.v)
        if (p.first <= end) xs.insert(p.first);
    rep.above = true;
    for (const auto& x : xs) {
        mpq_class gap = polygon_value(upper, x) - polygon_value(lower, x);
        if (gap < 0) {
            rep.above = false;
            rep.violation = {x, gap};
            break;
        }
    }
    return rep;
}

namespace {

struct FacePoly {
    // per variable: exponent -> nonzero coefficient in F_q
    std::vector<std::map<Pt, FieldElem>> G;
};

FacePoly face_partials(const WittInput& f, const NewtonData& nd,
                       const std::vector<int>& active, const std::vector<Facet>& facets) {
    FacePoly fp;
    fp.G.resize(f.n);
    for (size_t t = 0; t < f.terms.size(); t++) {
        const Pt& w = nd.scaled_points[t];
        bool on = true;
        for (int fi : active)
            if (dot64(facets[fi].ell, w) != facets[fi].c) {
                on = false;
                break;
            }
        if (!on) continue;
        FieldElem lifted = ff_frobenius(f.terms[t].coeff, f.m - 1 - f.terms[t].level);
        for (int j = 0; j < f.n; j++) {
            int64_t cj = ((f.terms[t].u[j] % f.p()) + f.p()) % f.p();
            if (cj == 0) continue;
            FieldElem add = ff_zero(*f.F);
            for (int64_t r = 0; r < cj; r++) add = ff_add(add, lifted);
            if (add.is_zero()) continue;
            auto it = fp.G[j].find(w);
            if (it == fp.G[j].end()) {
                fp.G[j].emplace(w, add);
            } else {
                it->second = ff_add(it->second, add);
                if (it->second.is_zero()) fp.G[j].erase(it);
            }
        }
    }
    return fp;
}

// common zero of the nonzero components over (F_{q^r}^x)^n, dlog coordinates
std::optional<Pt> torus_zero_search(const WittInput& f, const FacePoly& fp, const FieldCtx& Er) {
    std::vector<std::vector<std::pair<int64_t, Pt>>> polys;
    for (int j = 0; j < f.n; j++) {
        if (fp.G[j].empty()) continue;
        std::vector<std::pair<int64_t, Pt>> poly;
        for (const auto& [w, c] : fp.G[j])
            poly.push_back({ff_dlog(c) * Er.embed_mult % Er.order, w});
        polys.push_back(std::move(poly));
    }
    Pt t(f.n, 0);
    while (true) {
        bool zero = true;
        for (const auto& poly : polys) {
            FieldElem acc = ff_zero(Er);
            for (const auto& [ed, w] : poly) {
                int64_t e = ed;
                for (int j = 0; j < f.n; j++) e += w[j] % Er.order * t[j] % Er.order;
                e %= Er.order;
                if (e < 0) e += Er.order;
                acc = ff_add(acc, ff_from_dlog(Er, e));
            }
            if (!acc.is_zero()) {
                zero = false;
                break;
            }
        }
        if (zero) return t;
        int pos = 0;
        while (pos < f.n && ++t[pos] == Er.order) t[pos++] = 0;
        if (pos == f.n) return std::nullopt;
    }
}

} // namespace

NondegReport nondegeneracy_check(const WittInput& f, const NewtonData& nd, int64_t R) {
    require(R >= 1, "BadInput", "search bound must be >= 1");
    NondegReport rep;

    // closed faces avoiding the origin, keyed by sorted vertex list
    std::map<std::vector<Pt>, std::vector<int>> faces;
    auto add_face = [&](std::vector<Pt> verts) {
        std::sort(verts.begin(), verts.end());
        if (faces.count(verts)) return;
        std::vector<int> active;
        for (size_t fi = 0; fi < nd.facets.size(); fi++) {
            bool all = true;
            for (const auto& v : verts)
                if (dot64(nd.facets[fi].ell, v) != nd.facets[fi].c) {
                    all = false;
                    break;
                }
            if (all) active.push_back(static_cast<int>(fi));
        }
        faces.emplace(std::move(verts), std::move(active));
    };
    for (const auto& F : nd.facets) {
        if (F.c == 0) continue;
        std::vector<Pt> on;
        for (const auto& v : nd.vertices)
            if (dot64(F.ell, v) == F.c) on.push_back(v);
        add_face(on);
        for (const auto& v : on) add_face({v});
        if (nd.n == 3) {
            auto cyc = cycle_on_plane(on, F.ell);
            for (size_t i = 0; i < cyc.size(); i++)
                add_face({cyc[i], cyc[(i + 1) % cyc.size()]});
        }
    }

    std::vector<std::unique_ptr<FieldCtx>> exts;
    auto ext_field = [&](int64_t r) -> const FieldCtx& {
        while (static_cast<int64_t>(exts.size()) < r)
            exts.push_back(extend_field(*f.F, static_cast<int64_t>(exts.size()) + 1));
        return *exts[r - 1];
    };

    bool all_decided = true;
    for (const auto& [verts, active] : faces) {
        FacePoly fp = face_partials(f, nd, active, nd.facets);
        int nonzero = 0;
        bool monomial = false;
        for (int j = 0; j < f.n; j++) {
            if (fp.G[j].empty()) continue;
            nonzero++;
            if (fp.G[j].size() == 1) monomial = true;
        }
        if (nonzero == 0) {
            rep.status = Nondeg::Degenerate;
            rep.witness = NondegWitness{verts, 1, Pt(f.n, 0)};
            rep.detail = "all face partials vanish identically";
            return rep;
        }
        if (monomial) continue; // a nonvanishing equation, no common zero
        if (f.n == 1) {
            // single Laurent polynomial: strip the monomial part; any
            // remaining nonconstant factor has a root in a small extension
            const auto& g = fp.G[0];
            int64_t lo = g.begin()->first[0], hi = g.rbegin()->first[0];
            int64_t deg = hi - lo;
            bool found = false;
            for (int64_t r = 1; r <= deg && !found; r++) {
                auto z = torus_zero_search(f, fp, ext_field(r));
                if (z) {
                    rep.status = Nondeg::Degenerate;
                    rep.witness = NondegWitness{verts, r, *z};
                    rep.detail = "face polynomial has a torus root";
                    found = true;
                }
            }
            require(found, "NondegInternal", "nonconstant polynomial without a root in range");
            return rep;
        }
        for (int64_t r = 1; r <= R; r++) {
            auto z = torus_zero_search(f, fp, ext_field(r));
            if (z) {
                rep.status = Nondeg::Degenerate;
                rep.witness = NondegWitness{verts, r, *z};
                rep.detail = "common torus zero of the face partials";
                return rep;
            }
        }
        all_decided = false;
    }
    rep.searched_r = R;
    if (all_decided) {
        rep.status = Nondeg::Nondegenerate;
        rep.detail = "every face decided by a monomial equation";
    } else {
        rep.status = Nondeg::UnknownUpTo;
        rep.detail = "no witness found by exhausting the searched extensions";
    }
    return rep;
}

ReducedTwist unimodular_reduce(const WittInput& f, const std::vector<int64_t>& s) {
    require(s.size() == static_cast<size_t>(f.n), "BadTwist", "twist length mismatch");
    ZMat rows;
    for (const auto& term : f.terms) {
        std::vector<mpz_class> r;
        for (int64_t uj : term.u) r.emplace_back(uj);
        rows.push_back(std::move(r));
    }
    Smith sm = smith_normal_form(rows);
    int l = 0;
    for (const auto& d : sm.diag)
        if (d != 0) l++;
    require(l < f.n, "AlreadyFullDimensional", "support already spans the space");
    require(l >= 1, "NotFullDimensional", "support spans rank zero");

    int64_t q1 = f.q() - 1;
    ReducedTwist out;
    out.n_orig = f.n;
    out.basis = sm.right;
    std::vector<WittTerm> terms;
    for (const auto& term : f.terms) {
        WittTerm t2;
        t2.level = term.level;
        t2.coeff = term.coeff;
        for (int j = 0; j < f.n; j++) {
            mpz_class acc = 0;
            for (int i = 0; i < f.n; i++) acc += term.u[i] * sm.right[i][j];
            if (j < l) {
                require(acc.fits_slong_p(), "Overflow", "reduced exponent exceeds table range");
                t2.u.push_back(acc.get_si());
            } else {
                require(acc == 0, "NotFullDimensional", "smith reduction left a nonzero tail");
            }
        }
        terms.push_back(std::move(t2));
    }
    out.residual_trivial = true;
    for (int j = 0; j < f.n; j++) {
        mpz_class acc = 0;
        for (int i = 0; i < f.n; i++) acc += s[i] * sm.right[i][j];
        mpz_class red = ((acc % q1) + q1) % q1;
        if (j < l)
            out.s.push_back(red.get_si());
        else if (red != 0)
            out.residual_trivial = false;
    }
    out.f = make_witt_input(*f.F, f.m, l, std::move(terms));
    return out;
}

} // namespace wittsum
