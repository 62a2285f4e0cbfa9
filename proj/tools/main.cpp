#include "wittsum/job.hpp"
#include "wittsum/util.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace wittsum;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot write " + path);
    out << content;
    if (!out) fail("IoError", "short write to " + path);
}

std::vector<int64_t> parse_p_list(const std::string& text) {
    std::vector<int64_t> ps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            fail("ConfigError", "p-list: bad entry '" + item + "'");
        ps.push_back(std::stoll(item));
    }
    if (ps.empty()) fail("ConfigError", "p-list: empty");
    return ps;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact twisted exponential sums, their L-functions and polygons"};
    app.require_subcommand(1);

    std::string cfg_path, out_flag, plot_flag;
    int kmax_flag = -1, guard_flag = -1;
    long prec_flag = -1;
    auto* run = app.add_subcommand("run", "execute a job description");
    run->add_option("config", cfg_path, "job description (json)")->required();
    run->add_option("--out", out_flag, "write the report json here (default: print it)");
    run->add_option("--plot", plot_flag, "write an svg of the polygons here");
    run->add_option("--k-max", kmax_flag, "report direct sums up to this level");
    run->add_option("--precision", prec_flag, "starting p-adic working precision");
    run->add_option("--guard", guard_flag, "zero coefficients verified past the degree");

    GridOptions gopt;
    std::string grid_out;
    std::string plist_str = "2,3,5";
    auto* grid = app.add_subcommand("gh-grid",
                                    "sweep the explicit polygon prediction over f=[x] twists");
    grid->add_option("--p-list", plist_str, "comma separated primes")->capture_default_str();
    grid->add_option("--a-max", gopt.a_max, "residue degrees 1..a-max")->capture_default_str();
    grid->add_option("--m-max", gopt.m_max, "ring lengths 1..m-max")->capture_default_str();
    grid->add_option("--out", grid_out, "write the csv here (default: print it)");
    grid->add_option("--max-points", gopt.max_points, "largest q^k a cell may enumerate")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            JobConfig cfg = load_config(cfg_path);
            if (!out_flag.empty()) cfg.out = out_flag;
            if (!plot_flag.empty()) cfg.plot = plot_flag;
            if (kmax_flag != -1) {
                if (kmax_flag < 1 || kmax_flag > 16) fail("ConfigError", "k-max: expected 1..16");
                cfg.k_max = kmax_flag;
            }
            if (guard_flag != -1) {
                if (guard_flag < 0 || guard_flag > 64) fail("ConfigError", "guard: expected 0..64");
                cfg.guard = guard_flag;
            }
            if (prec_flag != -1) {
                if (prec_flag < 0 || prec_flag > 4096)
                    fail("ConfigError", "precision: expected 0..4096");
                cfg.precision = prec_flag;
            }
            RunOutcome res = run_job(cfg);
            if (!cfg.out.empty()) {
                write_file(cfg.out, res.report_json);
                std::cout << res.summary;
                std::cout << "report: " << cfg.out << "\n";
            } else {
                std::cout << res.report_json;
            }
            if (!cfg.plot.empty()) {
                if (res.plot_svg.empty()) {
                    std::cerr << "plot: no polygons were computed, skipping " << cfg.plot << "\n";
                } else {
                    write_file(cfg.plot, res.plot_svg);
                    std::cout << "plot: " << cfg.plot << "\n";
                }
            }
            return res.checks_passed ? 0 : 2;
        }
        // gh-grid
        gopt.p_list = parse_p_list(plist_str);
        GridOutcome g = gh_grid(gopt);
        if (!grid_out.empty()) {
            write_file(grid_out, g.csv);
            std::cout << "rows=" << g.cells << " match=" << g.matches
                      << " mismatch=" << g.mismatches << " skipped=" << g.skipped << "\n";
        } else {
            std::cout << g.csv;
        }
        return g.mismatches == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
