// chromacy — solver and certificate toolkit for distance-restricted
// colorings of lattice windows.
//
// Exit codes: 0 = SAT / success, 1 = UNSAT, 2 = UNKNOWN, >= 3 = usage or
// I/O error (one-line diagnostic on stderr).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chromacy/json_io.hpp"
#include "chromacy/numbounds.hpp"
#include "chromacy/report.hpp"
#include "chromacy/rng.hpp"
#include "chromacy/solver.hpp"
#include "chromacy/stochastic.hpp"
#include "chromacy/version.hpp"
#include "chromacy/witnesses.hpp"

namespace {

using namespace chromacy;

std::pair<Coord, Coord> parse_range(const std::string& spec) {
    const auto pos = spec.find("..");
    if (pos == std::string::npos)
        throw DomainError("bad window range '" + spec + "', expected LO..HI");
    try {
        return {std::stoll(spec.substr(0, pos)), std::stoll(spec.substr(pos + 2))};
    } catch (const std::exception&) {
        throw DomainError("bad window range '" + spec + "', expected LO..HI");
    }
}

Window window_from_specs(const Space& space, const std::vector<std::string>& specs) {
    if (static_cast<int>(specs.size()) != space.dim)
        throw DomainError("expected " + std::to_string(space.dim) +
                          " --window ranges, got " + std::to_string(specs.size()));
    Point lo;
    Point hi;
    for (const auto& s : specs) {
        const auto [a, b] = parse_range(s);
        lo.push_back(a);
        hi.push_back(b);
    }
    return enumerate_window(space, lo, hi);
}

Point parse_lambda(const std::string& spec) {
    Point out;
    std::string cur;
    std::stringstream ss(spec);
    while (std::getline(ss, cur, ',')) {
        try {
            out.push_back(std::stoll(cur));
        } catch (const std::exception&) {
            throw DomainError("bad --lambda component '" + cur + "'");
        }
    }
    if (out.empty()) throw DomainError("empty --lambda");
    return out;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        save_json(out_path, j);
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::sat:
        case Verdict::periodic: return 0;
        case Verdict::unsat: return 1;
        case Verdict::unknown: return 2;
    }
    return 3;
}

int emit_certificate(const Certificate& cert, const std::string& out_path) {
    emit(certificate_to_json(cert), out_path);
    if (!out_path.empty())
        std::cout << verdict_name(cert.verdict) << " certificate written to " << out_path << "\n";
    return verdict_exit(cert.verdict);
}

void print_rows(const std::vector<ReportRow>& rows, bool as_json) {
    if (as_json) {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back(Json{{"name", r.name},
                             {"expected", r.expected},
                             {"actual", r.actual},
                             {"pass", r.pass}});
        std::cout << j.dump(2) << "\n";
        return;
    }
    size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    for (const auto& r : rows) {
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name
                  << std::string(w - r.name.size() + 2, ' ') << "expected " << r.expected
                  << ", got " << r.actual << "\n";
    }
}

struct CommonOpts {
    std::string array_path;
    std::string out_path;
    std::vector<std::string> window_specs;
    std::uint64_t node_budget = SearchConfig{}.node_budget;
    double time_budget = SearchConfig{}.time_budget_s;
    bool no_symmetry = false;

    SearchConfig config() const {
        SearchConfig c;
        c.node_budget = node_budget;
        c.time_budget_s = time_budget;
        c.symmetry_breaking = !no_symmetry;
        return c;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromacy: distance-restricted coloring solver and certificate toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    long long pmax = 64;
    long long fallback_points = 0;
    std::uint64_t seed = 0;
    std::uint64_t cap = 100000;
    std::string kind;
    std::string points_path;
    std::string vectors_path;
    std::string cert_path;
    std::string lambda_spec;
    long long opt_k = 0;
    long long opt_n = 0;
    long long opt_d = 0;
    long long opt_chi = 0;
    std::uint64_t rn_cap = 0;
    bool as_json = false;

    auto add_array = [&](CLI::App* cmd) {
        cmd->add_option("--array", opt.array_path, "restriction array file (chromacy-array/1)")
            ->required();
    };
    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--window", opt.window_specs, "window range LO..HI, once per dimension")
            ->required();
    };
    auto add_search = [&](CLI::App* cmd) {
        cmd->add_option("--nodes", opt.node_budget, "search node budget");
        cmd->add_option("--time-s", opt.time_budget, "search time budget in seconds");
        cmd->add_flag("--no-symmetry", opt.no_symmetry, "disable symmetry breaking");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "write the artifact here instead of stdout");
    };

    auto* solve = app.add_subcommand("solve", "decide D-colorability of a window exhaustively");
    add_array(solve);
    add_window(solve);
    add_search(solve);
    add_out(solve);

    auto* period = app.add_subcommand("period", "search periodic colorings of Z, then fall back");
    add_array(period);
    period->add_option("--pmax", pmax, "largest period to try")->required();
    period->add_option("--fallback-points", fallback_points,
                       "fallback window size (default 10 * max entry)");
    add_search(period);
    add_out(period);

    auto* mt = app.add_subcommand("mt", "Moser-Tardos resampling search (heuristic)");
    add_array(mt);
    add_window(mt);
    mt->add_option("--seed", seed, "RNG seed")->required();
    mt->add_option("--cap", cap, "resample cap");
    add_out(mt);

    auto* witness = app.add_subcommand("witness", "emit a k-distance-set witness");
    witness->add_option("--kind", kind, "path|polygon|hypercube|icosahedron|subsets")->required();
    witness->add_option("--k", opt_k, "witness parameter k");
    witness->add_option("--n", opt_n, "subsets parameter n");
    add_out(witness);

    auto* spectrum = app.add_subcommand("spectrum", "distance spectrum of a point set");
    spectrum->add_option("--points", points_path, "point set file (chromacy-points/1)")->required();
    spectrum->add_flag("--json", as_json, "JSON output");

    auto* bound = app.add_subcommand("bound", "clique lower bound forced by a k-distance set");
    bound->add_option("--points", points_path, "point set file (chromacy-points/1)")->required();
    add_out(bound);

    auto* bounds = app.add_subcommand("bounds", "closed-form upper bounds");
    bounds->add_option("--k", opt_k, "number of forbidden distances per color")->required();
    bounds->add_option("--chi", opt_chi, "chromatic number input for the symmetric power bound");
    bounds->add_flag("--json", as_json, "JSON output");

    auto* shell = app.add_subcommand("shell", "lattice shell size: representations as n squares");
    shell->add_option("--n", opt_n, "dimension")->required();
    shell->add_option("--d", opt_d, "squared distance")->required();

    auto* rn = app.add_subcommand("rn", "is sqrt(d) in R_N (at most N representations)?");
    rn->add_option("--n", opt_n, "dimension")->required();
    rn->add_option("--cap", rn_cap, "representation cap N")->required();
    rn->add_option("--d", opt_d, "squared distance")->required();

    auto* star = app.add_subcommand("star", "property (*): pairwise distinct 2-adic valuations");
    add_array(star);

    auto* project = app.add_subcommand("project", "Wepsic projection of vector restrictions to Z");
    project->add_option("--vectors", vectors_path, "vector array file (chromacy-vectors/1)")
        ->required();
    project->add_option("--lambda", lambda_spec, "integer functional a,b,...")->required();
    add_out(project);

    auto* lift = app.add_subcommand("lift", "lift a periodic coloring through a functional");
    lift->add_option("--vectors", vectors_path, "vector array file (chromacy-vectors/1)")
        ->required();
    lift->add_option("--lambda", lambda_spec, "integer functional a,b,...")->required();
    lift->add_option("--cert", cert_path, "PERIODIC certificate for the projected array")
        ->required();
    add_window(lift);
    add_out(lift);

    auto* scale = app.add_subcommand("scale", "clear rational denominators from a line array");
    add_array(scale);
    add_out(scale);

    auto* verify = app.add_subcommand("verify", "re-check a certificate");
    verify->add_option("--cert", cert_path, "certificate file (chromacy-cert/1)")->required();

    auto* report = app.add_subcommand("report", "regenerate the lower-bound and constants table");
    report->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (*solve) {
            const auto array = array_from_json(load_json(opt.array_path));
            const auto window = window_from_specs(array.space, opt.window_specs);
            return emit_certificate(solve_window(window, array, opt.config()), opt.out_path);
        }
        if (*period) {
            const auto array = array_from_json(load_json(opt.array_path));
            return emit_certificate(search_periods(array, pmax, opt.config(), fallback_points),
                                    opt.out_path);
        }
        if (*mt) {
            const auto array = array_from_json(load_json(opt.array_path));
            const auto window = window_from_specs(array.space, opt.window_specs);
            auto [coloring, stats] = moser_tardos(window, array, seed, cap);
            Certificate cert;
            cert.array = array;
            cert.window = window;
            cert.mt = stats;
            cert.search.nodes = stats.resamples;
            if (coloring) {
                cert.verdict = Verdict::sat;
                cert.coloring = std::move(coloring);
            } else {
                cert.verdict = Verdict::unknown;
                cert.unknown_reason = "resample-cap";
            }
            return emit_certificate(cert, opt.out_path);
        }
        if (*witness) {
            WitnessKind wk;
            if (kind == "path") wk = WitnessKind::path;
            else if (kind == "polygon") wk = WitnessKind::polygon;
            else if (kind == "hypercube") wk = WitnessKind::hypercube;
            else if (kind == "icosahedron") wk = WitnessKind::icosahedron;
            else if (kind == "subsets") wk = WitnessKind::subsets;
            else throw DomainError("unknown witness kind '" + kind + "'");
            emit(pointset_to_json(make_witness(wk, opt_k, opt_n)), opt.out_path);
            return 0;
        }
        if (*spectrum) {
            const auto ps = pointset_from_json(load_json(points_path));
            const auto report_ = distance_spectrum(ps);
            if (as_json) {
                Json classes = Json::array();
                for (const auto& [value, mult] : report_.classes)
                    classes.push_back(Json{{"value", value.str()}, {"multiplicity", mult}});
                std::cout << Json{{"k", report_.k()}, {"classes", classes}}.dump(2) << "\n";
            } else {
                std::cout << "k = " << report_.k() << "\n";
                for (const auto& [value, mult] : report_.classes)
                    std::cout << "  squared distance " << value.str() << "  x" << mult << "\n";
            }
            return 0;
        }
        if (*bound) {
            const auto ps = pointset_from_json(load_json(points_path));
            const auto cb = clique_bound(ps);
            std::cout << "k = " << cb.k << ", bound = " << cb.bound << "\n";
            if (!opt.out_path.empty()) {
                if (!cb.witness)
                    throw DomainError("witness array is not lattice-representable for this set");
                save_json(opt.out_path, array_to_json(*cb.witness));
                std::cout << "witness array written to " << opt.out_path << "\n";
            }
            return 0;
        }
        if (*bounds) {
            std::vector<BoundReport> reports;
            reports.push_back({"archer-upper", opt_k, std::nullopt, BigInt(archer_bound(opt_k))});
            if (opt_chi > 0)
                reports.push_back({"symmetric-power", opt_k, opt_chi, power_bound(opt_chi, opt_k)});
            if (as_json) {
                Json j = Json::array();
                for (const auto& r : reports) {
                    Json e{{"quantity", r.quantity}, {"k", r.k}, {"value", r.value.str()}};
                    if (r.chi) e["chi"] = *r.chi;
                    j.push_back(std::move(e));
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& r : reports) {
                    std::cout << r.quantity << " k=" << r.k;
                    if (r.chi) std::cout << " chi=" << *r.chi;
                    std::cout << ": " << r.value.str() << "\n";
                }
            }
            return 0;
        }
        if (*shell) {
            std::cout << shell_count(static_cast<int>(opt_n), opt_d) << "\n";
            return 0;
        }
        if (*rn) {
            std::cout << (in_R_N(static_cast<int>(opt_n), rn_cap, opt_d) ? "true" : "false")
                      << "\n";
            return 0;
        }
        if (*star) {
            const auto array = array_from_json(load_json(opt.array_path));
            std::cout << (star_property(array) ? "true" : "false") << "\n";
            return 0;
        }
        if (*project) {
            const auto va = vector_array_from_json(load_json(vectors_path));
            emit(array_to_json(wepsic_project(va, parse_lambda(lambda_spec))), opt.out_path);
            return 0;
        }
        if (*lift) {
            const auto va = vector_array_from_json(load_json(vectors_path));
            const auto lambda = parse_lambda(lambda_spec);
            const auto cert = certificate_from_json(load_json(cert_path));
            if (cert.verdict != Verdict::periodic || !cert.periodic)
                throw DomainError("lift needs a PERIODIC certificate");
            const auto projected = wepsic_project(va, lambda);
            if (!periodic_valid(*cert.periodic, projected))
                throw DomainError("certificate does not certify the projected array");
            const Space space{va.dim, Metric::euclidean};
            const auto window = window_from_specs(space, opt.window_specs);
            const auto coloring = wepsic_lift(*cert.periodic, lambda, window);
            const auto violations = verify_vector_coloring(window, va, coloring);
            Json j{{"window", Json{{"lo", window.lo}, {"hi", window.hi}}},
                   {"colors", coloring.colors},
                   {"vector_violations", violations.violations.size()}};
            emit(j, opt.out_path);
            if (!violations.clean()) {
                std::cerr << "lift produced " << violations.violations.size()
                          << " vector violations\n";
                return 3;
            }
            return 0;
        }
        if (*scale) {
            const auto array = array_from_json(load_json(opt.array_path));
            const auto [scaled, multiplier] = scale_to_integers(array);
            emit(array_to_json(scaled), opt.out_path);
            std::cout << "L = " << multiplier << "\n";
            return 0;
        }
        if (*verify) {
            const auto cert = certificate_from_json(load_json(cert_path));
            if (!verify_certificate(cert)) {
                std::cerr << "certificate FAILED re-verification\n";
                return 3;
            }
            std::cout << "certificate verified: " << verdict_name(cert.verdict) << "\n";
            return 0;
        }
        if (*report) {
            const auto rows = report_full_table();
            print_rows(rows, as_json);
            for (const auto& r : rows)
                if (!r.pass) return 3;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
