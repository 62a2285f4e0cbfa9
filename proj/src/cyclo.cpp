#include "wittsum/cyclo.hpp"

#include "wittsum/linalg.hpp"
#include "wittsum/util.hpp"

#include <map>

namespace wittsum {

namespace {

using ZPoly = std::vector<mpz_class>; // ascending, trimmed

ZPoly zp_trim(ZPoly v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

// exact quotient of a by monic divisor v
ZPoly zp_div_monic(ZPoly a, const ZPoly& v) {
    require(!v.empty() && v.back() == 1, "Internal", "zp_div_monic needs a monic divisor");
    a = zp_trim(std::move(a));
    if (a.size() < v.size()) {
        require(a.empty(), "Internal", "inexact cyclotomic division");
        return {};
    }
    ZPoly q(a.size() - v.size() + 1, mpz_class(0));
    for (size_t i = a.size(); i-- >= v.size();) {
        mpz_class c = a[i];
        if (c != 0) {
            size_t shift = i - (v.size() - 1);
            q[shift] = c;
            for (size_t j = 0; j < v.size(); ++j) a[shift + j] -= c * v[j];
        }
        if (i == 0) break;
    }
    for (const auto& r : a) require(r == 0, "Internal", "inexact cyclotomic division");
    return zp_trim(std::move(q));
}

} // namespace

const std::vector<mpz_class>& cyclotomic_poly(int64_t N) {
    static std::map<int64_t, ZPoly> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    require(N >= 1, "BadConductor", "conductor must be positive");
    ZPoly phi;
    if (N == 1) {
        phi = {mpz_class(-1), mpz_class(1)}; // x - 1
    } else {
        ZPoly num(static_cast<size_t>(N) + 1, mpz_class(0));
        num[0] = -1;
        num[static_cast<size_t>(N)] = 1; // x^N - 1
        for (int64_t d = 1; d < N; ++d)
            if (N % d == 0) num = zp_div_monic(std::move(num), cyclotomic_poly(d));
        phi = std::move(num);
    }
    require(static_cast<int64_t>(phi.size()) == euler_phi(N) + 1, "Internal",
            "cyclotomic degree mismatch");
    return cache.emplace(N, std::move(phi)).first->second;
}

bool CycElem::is_zero() const {
    for (const auto& c : coords)
        if (c != 0) return false;
    return true;
}

bool CycElem::is_integral() const {
    for (const auto& c : coords)
        if (c.get_den() != 1) return false;
    return true;
}

bool CycElem::operator==(const CycElem& o) const {
    return conductor == o.conductor && coords == o.coords;
}

CycElem cyc_zero(int64_t N) {
    CycElem e;
    e.conductor = N;
    e.coords.assign(static_cast<size_t>(euler_phi(N)), mpq_class(0));
    return e;
}

CycElem cyc_one(int64_t N) { return cyc_from_int(N, 1); }

CycElem cyc_from_int(int64_t N, const mpq_class& v) {
    CycElem e = cyc_zero(N);
    // phi(1) = 1 and zeta_1 = 1, so position 0 is the rational line either way
    e.coords[0] = v;
    if (N == 1) return e;
    return e;
}

CycElem cyc_reduce(int64_t N, std::vector<mpq_class> dense) {
    const auto& phi = cyclotomic_poly(N);
    const size_t d = phi.size() - 1;
    // fold exponents >= N first (zeta^N = 1), then divide by Phi_N
    if (dense.size() > static_cast<size_t>(N)) {
        for (size_t i = dense.size(); i-- > static_cast<size_t>(N);) {
            dense[i - static_cast<size_t>(N)] += dense[i];
            dense[i] = 0;
        }
        dense.resize(static_cast<size_t>(N));
    }
    for (size_t i = dense.size(); i-- > d;) {
        mpq_class c = dense[i];
        if (c != 0) {
            size_t shift = i - d;
            for (size_t j = 0; j < phi.size(); ++j) dense[shift + j] -= c * mpq_class(phi[j]);
        }
        if (i == d) break;
    }
    dense.resize(d);
    for (auto& c : dense) c.canonicalize();
    CycElem out;
    out.conductor = N;
    out.coords = std::move(dense);
    return out;
}

CycElem cyc_root_pow(int64_t N, int64_t i) {
    int64_t r = ((i % N) + N) % N;
    std::vector<mpq_class> dense(static_cast<size_t>(r) + 1, mpq_class(0));
    dense[static_cast<size_t>(r)] = 1;
    return cyc_reduce(N, std::move(dense));
}

CycElem cyc_add(const CycElem& a, const CycElem& b) {
    require(a.conductor == b.conductor, "CtxMismatch", "cyc_add: conductor mismatch");
    CycElem out = a;
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

CycElem cyc_sub(const CycElem& a, const CycElem& b) { return cyc_add(a, cyc_neg(b)); }

CycElem cyc_neg(const CycElem& a) {
    CycElem out = a;
    for (auto& c : out.coords) c = -c;
    return out;
}

CycElem cyc_mul(const CycElem& a, const CycElem& b) {
    require(a.conductor == b.conductor, "CtxMismatch", "cyc_mul: conductor mismatch");
    if (a.coords.empty()) return a;
    std::vector<mpq_class> dense(a.coords.size() + b.coords.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0) continue;
        for (size_t j = 0; j < b.coords.size(); ++j) dense[i + j] += a.coords[i] * b.coords[j];
    }
    return cyc_reduce(a.conductor, std::move(dense));
}

CycElem cyc_scale(const CycElem& a, const mpq_class& c) {
    CycElem out = a;
    for (auto& x : out.coords) {
        x *= c;
        x.canonicalize();
    }
    return out;
}

CycElem cyc_lift(const CycElem& a, int64_t N2) {
    require(N2 % a.conductor == 0, "BadConductor", "cyc_lift: target conductor not a multiple");
    if (N2 == a.conductor) return a;
    const int64_t step = N2 / a.conductor;
    std::vector<mpq_class> dense(static_cast<size_t>(N2), mpq_class(0));
    for (size_t i = 0; i < a.coords.size(); ++i)
        dense[i * static_cast<size_t>(step)] = a.coords[i];
    return cyc_reduce(N2, std::move(dense));
}

std::optional<CycElem> cyc_in_subring(const CycElem& a, int64_t N0) {
    require(a.conductor % N0 == 0, "BadConductor", "cyc_in_subring: N0 must divide the conductor");
    if (N0 == a.conductor) return a;
    const size_t dim_big = a.coords.size();
    const size_t dim_small = static_cast<size_t>(euler_phi(N0));
    // columns: lifts of the small power basis
    QMat A(dim_big, QVec(dim_small, mpq_class(0)));
    for (size_t j = 0; j < dim_small; ++j) {
        CycElem lifted = cyc_lift(cyc_root_pow(N0, static_cast<int64_t>(j)), a.conductor);
        for (size_t i = 0; i < dim_big; ++i) A[i][j] = lifted.coords[i];
    }
    auto sol = solve_exact(A, a.coords);
    if (!sol) return std::nullopt;
    CycElem out;
    out.conductor = N0;
    out.coords = std::move(*sol);
    for (auto& c : out.coords) c.canonicalize();
    return out;
}

} // namespace wittsum
