#ifndef WITTSUM_JOB_HPP
#define WITTSUM_JOB_HPP

#include "wittsum/polytope.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wittsum {

// one input term as it appears in a job description; the coefficient is
// either a generator power ("g^e") or an F_p coordinate vector, resolved
// against the field once it is built
struct TermSpec {
    int level = 0;
    std::vector<int64_t> u;
    std::optional<int64_t> gpow;
    std::vector<int64_t> coords; // used when gpow is empty
};

struct JobConfig {
    int64_t p = 0;
    int a = 1;
    int m = 1;
    int n = 1;
    std::optional<std::vector<int64_t>> modulus; // ascending, monic degree a
    std::vector<TermSpec> f;
    std::vector<int64_t> s;
    // subset of {"sums","lfunction","polygons","checks"}; empty means all
    std::vector<std::string> tasks;
    int k_max = 2;      // sums reported for k = 1..k_max
    int guard = 2;      // zero coefficients verified past the degree
    long precision = 0; // starting p-adic precision, 0 picks the default
    int64_t R = 2;      // nondegeneracy search bound
    std::string out;    // report path, empty prints the report instead
    std::string plot;   // svg path, empty skips the figure
};

// error ConfigError; the message starts with the offending field's path
JobConfig parse_config(const std::string& json_text);
JobConfig load_config(const std::string& path); // adds IoError

struct RunOutcome {
    std::string report_json;
    std::string plot_svg; // empty unless polygons were computed
    bool checks_passed = true;
    std::string summary; // one terminal line per executed task
};
// tasks in dependency order: delta -> nondegeneracy -> sums -> L -> polygons
// -> checks.  A support spanning a proper sublattice is reduced first and the
// report carries the change of basis.  Check failures are reported, not
// thrown; computational errors propagate with task context.
RunOutcome run_job(const JobConfig& cfg);

// overlaid polyline figure with exact-rational vertex labels; deterministic
// bytes for fixed input
std::string svg_plot(const std::vector<std::pair<std::string, RatPolygon>>& series);

struct GridOptions {
    std::vector<int64_t> p_list = {2, 3, 5};
    int a_max = 2;
    int m_max = 2;
    int64_t max_points = 1000000; // largest q^k the pipeline may enumerate
};
struct GridOutcome {
    std::string csv; // header p,a,m,s,verdict
    int64_t cells = 0;
    int64_t matches = 0;
    int64_t mismatches = 0;
    int64_t skipped = 0;
};
// explicit-polygon sweep over f=[x]: one row per twist with verdict match /
// mismatch / skipped (budget)
GridOutcome gh_grid(const GridOptions& opt);

} // namespace wittsum

#endif
