#include "spheregh/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "spheregh/bounds.hpp"
#include "spheregh/constructions.hpp"
#include "spheregh/finite_gh.hpp"
#include "spheregh/nets.hpp"

namespace sgh {

namespace {

constexpr double kTwoPiThirds = 2 * M_PI / 3;

double convert_target(double t, Flavor from, Flavor to) {
    if (from == to) return t;
    if (from == Flavor::Geodesic) return 2 * std::sin(t / 2);
    return 2 * std::asin(std::min(1.0, t / 2));
}

Flavor native_flavor(const std::string& id) { return id == "heptagonE" ? Flavor::Euclidean : Flavor::Geodesic; }

std::vector<std::vector<double>> coords_of(const NetSpec& net) {
    std::vector<std::vector<double>> v;
    v.reserve(net.points.size());
    for (const auto& p : net.points) v.push_back(p.coords());
    return v;
}

}  // namespace

ConstructionInfo construction_info(const std::string& id) {
    static const std::regex simplex_re(R"(phi_m1_m:m=(\d+))");
    static const std::regex psi_re(R"(psi:(\d+)-(\d+))");
    std::smatch m;
    if (id == "phi21") return {id, "simplex Voronoi map S^2 -> S^1", "adaptive", kTwoPiThirds, false, 0.01};
    if (id == "phi31") return {id, "rotation map S^3 -> S^1", "net", kTwoPiThirds, false, 0.05};
    if (id == "phi32") return {id, "tetrahedral map S^3 -> S^2", "adaptive", zeta(2), false, 0.05};
    if (id == "heptagonE") return {id, "heptagon correspondence S^1_E ~ H(S^2)_E", "adaptive", std::sqrt(3.0), true, 0.01};
    if (id == "hexagonD") return {id, "hexagon correspondence S^1 ~ S^2", "adaptive", kTwoPiThirds, false, 0.01};
    if (std::regex_match(id, m, simplex_re)) {
        const int k = std::stoi(m[1]);
        if (k < 1 || k > 4) throw std::invalid_argument("phi_m1_m supports 1 <= m <= 4");
        return {id, "simplex Voronoi map S^" + std::to_string(k + 1) + " -> S^" + std::to_string(k), "adaptive",
                eta(k), false, k <= 2 ? 0.02 : 0.05};
    }
    if (std::regex_match(id, m, psi_re)) {
        const int a = std::stoi(m[1]), b = std::stoi(m[2]);
        if (a < 1 || a >= b || a > 3) throw std::invalid_argument("psi needs 1 <= m < n and m <= 3");
        return {id, "antipode preserving filling map S^" + std::to_string(a) + " -> S^" + std::to_string(b), "net",
                M_PI, true, a == 1 ? 0.001 : (a == 2 ? 0.02 : 0.08)};
    }
    throw std::invalid_argument("unknown construction id: " + id);
}

std::vector<ConstructionInfo> construction_catalog() {
    std::vector<ConstructionInfo> v;
    for (const char* id : {"phi21", "phi_m1_m:m=2", "phi_m1_m:m=3", "phi31", "phi32", "psi:1-2", "heptagonE", "hexagonD"})
        v.push_back(construction_info(id));
    return v;
}

CertifyRun certify_construction(const std::string& id, double mesh, std::optional<Flavor> flavor, std::uint64_t seed,
                                double max_seconds) {
    CertifyRun run;
    run.info = construction_info(id);
    if (mesh <= 0) mesh = run.info.default_mesh;
    const Flavor native = native_flavor(id);
    const Flavor f = flavor.value_or(native);
    run.target = convert_target(run.info.target, native, f);
    if (run.info.method == "adaptive") {
        BlockCorrespondence R;
        if (id == "phi21") R = phi_m_plus_1_to_m_block(1);
        else if (id == "phi32") R = phi32_block();
        else if (id == "heptagonE") R = heptagon_correspondence_E().R;
        else if (id == "hexagonD") R = hexagon_correspondence().R;
        else R = phi_m_plus_1_to_m_block(std::stoi(id.substr(id.find('=') + 1)));
        R.flavor = f;
        BlockCertifyOptions o;
        o.mesh = mesh;
        o.tolerance = 0.8 * mesh;
        o.seed = seed;
        o.max_seconds = max_seconds;
        run.certificate = certify_block_distortion(R, o);
    } else {
        MapCertifyOptions o;
        o.seed = seed;
        o.max_seconds = max_seconds;
        if (id == "phi31") {
            o.slack = 0.6 * mesh;
            run.certificate = certify_map_distortion(phi31_map(), build_net(3, mesh), f, o);
        } else {
            const auto dash = id.find('-');
            const int a = std::stoi(id.substr(4, dash - 4)), b = std::stoi(id.substr(dash + 1));
            const SphereMap g = psi_mn(a, b);
            const NetSpec net = build_net(a, mesh);
            run.certificate = certify_map_distortion(id, b, g.f, coords_of(net), net.mesh, f, o);
        }
    }
    run.certificate.construction_id = id;
    const auto& c = run.certificate;
    const bool within = run.info.strict ? c.upper_bound < run.target : c.upper_bound <= run.target + c.padding + 1e-12;
    run.pass = c.complete && within;
    return run;
}

namespace {

struct Emitter {
    std::ostream& out;
    std::ostream& err;
    std::string path;

    bool emit(const std::string& text) const {
        if (path.empty() || path == "-") {
            out << text;
            if (!text.empty() && text.back() != '\n') out << '\n';
            return true;
        }
        std::ofstream f(path);
        if (!f) {
            err << "error: cannot write " << path << "\n";
            return false;
        }
        f << text;
        if (!text.empty() && text.back() != '\n') f << '\n';
        return static_cast<bool>(f);
    }
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int polygon_arg(const std::string& s) {
    if (s == "S1" || s == "s1" || s == "circle") return kCircle;
    return std::stoi(s);
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gromov-Hausdorff distances between spheres: bounds, certificates and finite computations"};
    app.require_subcommand(1);

    int max_dim = 4;
    std::string flavor_s = "geodesic";
    std::string format = "csv";
    std::string out_path;
    double mesh = 0.0;
    std::uint64_t seed = 1;
    int restarts = 64;
    double max_seconds = 600.0;
    std::string construction;
    std::vector<std::string> inputs;
    std::string pm, pn;
    bool flavor_given = false;

    const auto flavor_opt = [&](CLI::App* sub) {
        return sub->add_option("--flavor", flavor_s, "geodesic or euclidean")
            ->check(CLI::IsMember({"geodesic", "euclidean"}))
            ->envname("SPHEREGH_FLAVOR");
    };
    const auto common = [&](CLI::App* sub, const std::string& default_format) {
        sub->add_option("--out", out_path, "output file (default stdout)")->envname("SPHEREGH_OUT");
        sub->add_option("--format", format, "csv, json or pretty")
            ->check(CLI::IsMember({"csv", "json", "pretty"}))
            ->envname("SPHEREGH_FORMAT")
            ->default_str(default_format);
        sub->add_option("--seed", seed, "random seed")->envname("SPHEREGH_SEED");
    };

    auto* bounds = app.add_subcommand("bounds", "table of lower and upper bounds for d_GH(S^m, S^n)");
    bounds->add_option("--max-dim", max_dim, "largest sphere dimension")
        ->check(CLI::PositiveNumber)
        ->envname("SPHEREGH_MAX_DIM");
    flavor_opt(bounds);
    common(bounds, "csv");

    auto* certify = app.add_subcommand("certify", "certify the distortion of a construction");
    certify->add_option("construction", construction, "construction id")->required();
    certify->add_option("--mesh", mesh, "net mesh in radians")->check(CLI::PositiveNumber)->envname("SPHEREGH_MESH");
    auto* cf = flavor_opt(certify);
    certify->add_option("--max-seconds", max_seconds, "time budget")->envname("SPHEREGH_MAX_SECONDS");
    common(certify, "json");

    auto* fgh = app.add_subcommand("finite-gh", "Gromov-Hausdorff distance between finite metric spaces");
    fgh->add_option("inputs", inputs, "two metric space JSON files")->required()->expected(2);
    fgh->add_option("--restarts", restarts, "heuristic restarts")
        ->check(CLI::PositiveNumber)
        ->envname("SPHEREGH_RESTARTS");
    common(fgh, "json");

    auto* poly = app.add_subcommand("polygon", "distance between regular polygons (S1 for the circle)");
    poly->add_option("m", pm)->required();
    poly->add_option("n", pn)->required();
    flavor_opt(poly);
    common(poly, "json");

    auto* hooks = app.add_subcommand("hooks", "list certifiable constructions and their targets");
    common(hooks, "pretty");

    try {
        format.clear();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }
    flavor_given = cf->count() > 0 || std::getenv("SPHEREGH_FLAVOR") != nullptr;
    const Emitter emit{out, err, out_path};

    try {
        const Flavor flavor = flavor_from_string(flavor_s);
        if (bounds->parsed()) {
            if (format.empty()) format = "csv";
            const GMatrix g = assemble_g_matrix(max_dim, flavor);
            const std::string text = format == "json" ? g.to_json() : format == "pretty" ? g.to_pretty() : g.to_csv();
            return emit.emit(text) ? kExitOk : kExitInputError;
        }
        if (certify->parsed()) {
            const auto run = certify_construction(construction, mesh,
                                                  flavor_given ? std::optional<Flavor>(flavor) : std::nullopt, seed,
                                                  max_seconds);
            const auto& c = run.certificate;
            std::string text;
            if (format == "pretty" || format == "csv") {
                std::ostringstream os;
                os << std::setprecision(10);
                if (format == "csv") {
                    os << "construction_id,flavor,net_mesh,lower_estimate,upper_bound,padding,target,pass\n";
                    os << c.construction_id << ',' << to_string(c.flavor) << ',' << c.net_mesh << ','
                       << c.lower_estimate << ',' << c.upper_bound << ',' << c.padding << ',' << run.target << ','
                       << (run.pass ? "true" : "false") << '\n';
                } else {
                    os << c.construction_id << " (" << to_string(c.flavor) << ", mesh " << c.net_mesh << ")\n"
                       << "  distortion in [" << c.lower_estimate << ", " << c.upper_bound << "]\n"
                       << "  target " << run.target << (run.info.strict ? " (strict)" : "") << ": "
                       << (run.pass ? "pass" : "FAIL") << "\n";
                }
                text = os.str();
            } else {
                auto j = nlohmann::json::parse(c.to_json());
                j["target"] = run.target;
                j["strict"] = run.info.strict;
                j["pass"] = run.pass;
                text = j.dump(2);
            }
            if (!emit.emit(text)) return kExitInputError;
            return run.pass ? kExitOk : kExitCertificationFailed;
        }
        if (fgh->parsed()) {
            const auto X = FiniteMetricSpace::from_json(read_file(inputs[0]));
            const auto Y = FiniteMetricSpace::from_json(read_file(inputs[1]));
            const bool exact = gh_exact_feasible(X.size(), Y.size());
            const GHResult r = exact ? gh_exact_small(X, Y) : gh_heuristic(X, Y, restarts, seed);
            auto j = nlohmann::json::parse(r.to_json());
            j["method"] = exact ? "exhaustive" : "heuristic";
            return emit.emit(j.dump(2)) ? kExitOk : kExitInputError;
        }
        if (poly->parsed()) {
            const int m = polygon_arg(pm), n = polygon_arg(pn);
            const PolygonGH r = polygon_gh(m, n, flavor);
            nlohmann::json j{{"m", pm}, {"n", pn}, {"flavor", to_string(flavor)}, {"value", r.value},
                             {"exact", r.exact}, {"method", r.method}};
            return emit.emit(j.dump(2)) ? kExitOk : kExitInputError;
        }
        if (hooks->parsed()) {
            nlohmann::json j = nlohmann::json::array();
            std::ostringstream os;
            os << std::setprecision(10);
            for (const auto& c : construction_catalog()) {
                j.push_back({{"id", c.id}, {"description", c.description}, {"method", c.method},
                             {"target", c.target}, {"strict", c.strict}, {"default_mesh", c.default_mesh}});
                os << std::left << std::setw(14) << c.id << std::setw(10) << c.method << "target "
                   << std::setw(14) << c.target << (c.strict ? "strict  " : "        ") << c.description << "\n";
            }
            return emit.emit(format == "json" ? j.dump(2) : os.str()) ? kExitOk : kExitInputError;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace sgh
