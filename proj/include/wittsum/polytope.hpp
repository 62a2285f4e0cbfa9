#ifndef WITTSUM_POLYTOPE_HPP
#define WITTSUM_POLYTOPE_HPP

#include "wittsum/linalg.hpp"
#include "wittsum/witt.hpp"

#include <gmpxx.h>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wittsum {

// half space <ell, x> <= c containing the polytope; ell primitive integral
struct Facet {
    std::vector<int64_t> ell;
    int64_t c = 0;
};

// hull data of the weighted support: each term V^i([a x^u]) contributes the
// scaled exponent p^{m-1-i} u, and the polytope is the hull of those points
// together with the origin
struct NewtonData {
    int n = 1;
    std::vector<std::vector<int64_t>> scaled_points; // one per input term
    std::vector<std::vector<int64_t>> vertices;      // hull vertices
    std::vector<Facet> facets;                       // c = 0 marks cone walls
    int64_t D = 1;       // denominator bound of the degree on lattice points
    int64_t volume_deg = 0; // n! Vol, the L-polynomial degree up to twisting
};

// errors: NotFullDimensional, DimensionUnsupported (n > 3)
NewtonData build_delta(const WittInput& f);

bool in_cone(const NewtonData& nd, const std::vector<int64_t>& w);
// gauge: least lambda >= 0 with w in lambda * Delta; error OutsideCone
mpq_class cone_degree(const NewtonData& nd, const std::vector<int64_t>& w);
mpq_class cone_degree(const NewtonData& nd, const std::vector<mpq_class>& u);

// point counts of the twisted lattice L_s at scaled degree k/M, M = D(q-1),
// and the polynomial P = (1 - t^M)^n sum_k W_k t^k of degree <= n M
struct WeightSeries {
    int64_t M = 1;
    std::vector<int64_t> W;
    std::vector<int64_t> P;
    int64_t p_at_one() const {
        int64_t s = 0;
        for (int64_t c : P) s += c;
        return s;
    }
};
// errors: BadTwist (s out of range), NonPolynomialSeries
WeightSeries weight_series(const NewtonData& nd, const std::vector<int64_t>& s, int64_t q);

// convex polygon as its vertex list, collinear points merged
struct RatPolygon {
    std::vector<std::pair<mpq_class, mpq_class>> v;
    bool operator==(const RatPolygon& o) const { return v == o.v; }
};

// lower convex envelope of points with pairwise distinct x
RatPolygon lower_hull(std::vector<std::pair<mpq_class, mpq_class>> pts);
mpq_class polygon_value(const RatPolygon& P, const mpq_class& x);

// slopes i/M with multiplicity coeffs[i]; error NegativeCoefficient
RatPolygon hodge_polygon(const std::vector<mpq_class>& coeffs, int64_t M);

struct AboveReport {
    bool above = false;
    bool endpoints_equal = false;
    // abscissa and (negative) gap of the first violation
    std::optional<std::pair<mpq_class, mpq_class>> violation;
    bool ok() const { return above && endpoints_equal; }
};
AboveReport polygon_above(const RatPolygon& upper, const RatPolygon& lower);

enum class Nondeg { Nondegenerate, Degenerate, UnknownUpTo };

struct NondegWitness {
    std::vector<std::vector<int64_t>> face_vertices;
    int64_t r = 1;                     // witness lives in F_{q^r}
    std::vector<int64_t> point_dlogs;  // coordinates as generator exponents
};

struct NondegReport {
    Nondeg status = Nondeg::Nondegenerate;
    std::optional<NondegWitness> witness;
    int64_t searched_r = 0;
    std::string detail;
};

// checks every closed face not containing the origin for common zeros of the
// twisted partials; faces whose system contains a single monomial are decided
// directly, one-variable systems are decided exactly, the rest by search over
// F_{q^r} for r <= R
NondegReport nondegeneracy_check(const WittInput& f, const NewtonData& nd, int64_t R);

// monomial change of variables when the support spans a proper sublattice:
// new exponent rows are u' = u B restricted to the first dim coordinates and
// the twist transforms the same way.  The dropped torus factors contribute
// (-1)^{n-dim} (q^k-1)^{n-dim} per level when the residual character is
// trivial and kill the sum otherwise.  error: AlreadyFullDimensional
struct ReducedTwist {
    WittInput f;
    std::vector<int64_t> s;
    ZMat basis;
    bool residual_trivial = true;
    int n_orig = 0;
};
ReducedTwist unimodular_reduce(const WittInput& f, const std::vector<int64_t>& s);

} // namespace wittsum

#endif
