#include "lattice/http.hpp"
#include "lattice/service.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

using namespace lattice;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitPort = 4;

// Pattern arguments are read verbatim; "-" reads the grid from stdin.
std::string pattern_text(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
}

// '#' in I, '.' outside, with the certificate point marked by its kind.
std::string overlay(const Classification& c) {
    std::optional<LatticePoint> mark;
    char symbol = '?';
    if (auto* v = std::get_if<ViolatingPoint>(&c.certificate)) mark = v->point, symbol = 'V';
    if (auto* q = std::get_if<QuadrupleFreeCertificate>(&c.certificate)) mark = q->point, symbol = 'F';
    std::string out;
    for (int beta = 3; beta >= 0; --beta) {
        out += std::to_string(beta) + ' ';
        for (int alpha = 0; alpha < 4; ++alpha) {
            const LatticePoint p{PauliIndex(alpha), PauliIndex(beta)};
            out += mark && *mark == p ? symbol : c.pattern.contains(p) ? 'x' : '.';
        }
        out += '\n';
    }
    out += "  0123\n";
    return out;
}

void print_human(const Classification& c) {
    const auto& f = c.flags;
    std::cout << overlay(c);
    std::cout << "mask " << hex_mask(c.pattern) << ", N_I = " << c.pattern.size() << '\n';
    std::cout << verdict_name(c.verdict);
    if (auto* v = std::get_if<ViolatingPoint>(&c.certificate))
        std::cout << ", violating point " << v->point.str() << " (cross count " << v->cross_count << ")";
    if (auto* q = std::get_if<QuadrupleFreeCertificate>(&c.certificate))
        std::cout << ", quadruple-free point " << q->point.str();
    if (auto* cov = std::get_if<Covering>(&c.certificate)) {
        std::cout << ", covering by " << cov->quadruple_indices.size() << " quadruples";
        if (cov->cardinality) std::cout << " (multiplicity " << to_string(cov->multiplicity) << ")";
    }
    std::cout << '\n';
    if (auto* cov = std::get_if<Covering>(&c.certificate)) {
        const auto& cat = catalog_all();
        for (std::size_t j = 0; j < cov->quadruple_indices.size(); ++j)
            std::cout << "  " << to_string(cov->weights[j]) << "  "
                      << cat.all[static_cast<std::size_t>(cov->quadruple_indices[j])].str() << '\n';
    }
    auto point = [](const std::optional<LatticePoint>& p) { return p ? p->str() : std::string("-"); };
    std::cout << "ppt " << (f.ppt ? "yes" : "no") << ", ppt2 " << point(f.ppt2_point) << ", ppt3 "
              << point(f.ppt3_point) << ", quadruple-free " << point(f.quadruple_free_point) << ", lp "
              << (f.lp_feasible ? "feasible" : "infeasible") << ", min quadruples through " << f.min_quadruples_through
              << '\n';
    if (f.spectral)
        std::cout << "spectral ppt " << (f.spectral->ppt ? "yes" : "no") << ", min eigenvalue " << f.spectral->margin
                  << '\n';
}

int cmd_classify(const std::string& arg, bool spectral, bool as_json) {
    Pattern I;
    try {
        I = parse_pattern_input(pattern_text(arg));
        if (I.empty()) throw std::invalid_argument("empty pattern");
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    if (as_json) {
        std::cout << classify_result(I, spectral).dump() << '\n';
        return 0;
    }
    ClassifyOptions opt;
    opt.spectral = spectral;
    print_human(classify(I, opt));
    return 0;
}

int cmd_census(bool orbits, const std::string& prefix, unsigned jobs) {
    CensusOptions opt;
    opt.orbits = orbits;
    opt.jobs = jobs;
    const auto r = census(opt);
    {
        std::ofstream js(prefix + ".json");
        std::ofstream csv(prefix + ".csv");
        if (!js || !csv) {
            std::cerr << "error: cannot write " << prefix << ".json / .csv\n";
            return kExitIo;
        }
        js << census_json(r).dump(1) << '\n';
        write_census_csv(csv, r);
        if (!js || !csv) {
            std::cerr << "error: write failed for " << prefix << '\n';
            return kExitIo;
        }
    }
    std::cout << "patterns: " << r.total << " (" << r.orbit_count << " orbits)\n";
    for (auto v : kVerdicts)
        std::cout << "  " << verdict_name(v) << ": " << r.verdict_totals.at(v) << " (" << r.orbit_totals.at(v)
                  << " orbits)\n";
    std::cout << "spectral agreement: " << r.spectral_agreement << '/' << r.spectral_checked << '\n';
    std::cout << "final equivalence: " << r.equivalence_holds << '/' << r.ppt_patterns << '\n';
    std::cout << "lp feasible without distinct-quadruple covering: " << r.lp_without_integer << '\n';
    if (!orbits) std::cout << "orbit invariance violations: " << r.orbit_invariance_violations << '\n';
    std::cout << "wrote " << prefix << ".json and " << prefix << ".csv\n";
    return 0;
}

int cmd_quadruples(const std::string& point_arg) {
    std::optional<LatticePoint> point;
    if (!point_arg.empty()) {
        try {
            point = parse_point(point_arg);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitParse;
        }
    }
    const auto& cat = catalog_all();
    std::vector<int> list;
    if (point) list = cat.through[static_cast<std::size_t>(point->bit())];
    else
        for (std::size_t q = 0; q < cat.all.size(); ++q) list.push_back(static_cast<int>(q));
    for (int q : list) {
        const auto& quad = cat.all[static_cast<std::size_t>(q)];
        std::cout << '#' << q << ' ' << hex_mask(quad.pattern()) << ' ' << quad.str() << '\n'
                  << render(quad.pattern()) << "\n\n";
    }
    std::cout << list.size() << " quadruples\n";
    return 0;
}

int cmd_witness(const std::string& arg, const std::string& family, const std::vector<std::string>& kv) {
    try {
        const Pattern I = parse_pattern_input(pattern_text(arg));
        if (I.empty()) throw std::invalid_argument("empty pattern");
        // key=value pairs; for phiv, "a,b=x" sets |v_ab|^2
        json params = json::object();
        for (const auto& item : kv) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("parameter '" + item + "' is not key=value");
            const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            if (key.find(',') != std::string::npos) params["v_sq"][key] = value;
            else if (key == "point") params[key] = value;
            else if (key == "restarts" || key == "seed") params[key] = std::stoull(value);
            else params[key] = value;
        }
        std::cout << witness_result(I, family, params).dump() << '\n';
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
}

int cmd_serve(const std::string& bind, int port, const std::string& census_path) {
    httplib::Server server;
    install_routes(server, ServerConfig{census_path});
    if (!server.bind_to_port(bind, port)) {
        std::cerr << "error: cannot bind " << bind << ':' << port << '\n';
        return kExitPort;
    }
    std::cout << "listening on " << bind << ':' << port << std::endl;
    server.listen_after_bind();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice-state entanglement classifier"};
    app.require_subcommand(1);

    std::string pattern;
    bool spectral = false, as_json = false;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a pattern (grid text, 0xMASK, (a,b) list, fixture:NAME, or - for stdin)");
    classify_cmd->add_option("pattern", pattern)->required();
    classify_cmd->add_flag("--spectral", spectral, "Also run the dense eigenvalue check");
    classify_cmd->add_flag("--json", as_json, "Print the JSON payload");

    bool orbits = false;
    std::string out = "census";
    unsigned jobs = 1;
    auto* census_cmd = app.add_subcommand("census", "Classify all 65535 nonempty patterns");
    census_cmd->add_flag("--orbits", orbits, "One representative per symmetry orbit");
    census_cmd->add_option("--out", out, "Output prefix for .json and .csv");
    census_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string point;
    auto* quad_cmd = app.add_subcommand("quadruples", "List the 60 special quadruples, or the 15 through a point");
    quad_cmd->add_option("point", point);

    std::string family;
    std::vector<std::string> params;
    auto* witness_cmd = app.add_subcommand("witness", "Evaluate a witness family on a pattern");
    witness_cmd->add_option("pattern", pattern)->required();
    witness_cmd->add_option("family", family, "delta, gamma or phiv")->required();
    witness_cmd->add_option("params", params, "key=value, e.g. t=0.01, point=0,0, 1,2=1");

    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string census_path = "census.json";
    auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API over HTTP");
    serve_cmd->add_option("--port", port);
    serve_cmd->add_option("--bind", bind);
    serve_cmd->add_option("--census", census_path, "Cached census JSON for /census/summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    if (*classify_cmd) return cmd_classify(pattern, spectral, as_json);
    if (*census_cmd) return cmd_census(orbits, out, jobs);
    if (*quad_cmd) return cmd_quadruples(point);
    if (*witness_cmd) return cmd_witness(pattern, family, params);
    if (*serve_cmd) return cmd_serve(bind, port, census_path);
    return kExitParse;
}
