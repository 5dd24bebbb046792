#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spheregh/bounds.hpp"
#include "spheregh/cli.hpp"
#include "spheregh/constructions.hpp"
#include "spheregh/finite_gh.hpp"

namespace py = pybind11;
using namespace sgh;

namespace {

SpherePoint point(const std::vector<double>& v) { return SpherePoint::normalized(v); }

py::dict report(const BoundReport& r) {
    py::dict d;
    d["m"] = r.m;
    d["n"] = r.n;
    d["flavor"] = to_string(r.flavor);
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["lower_provenance"] = to_string(r.lower_provenance);
    d["upper_provenance"] = to_string(r.upper_provenance);
    d["exact"] = r.exact;
    d["conservative"] = r.conservative;
    return d;
}

py::dict gh_result(const GHResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["exact"] = r.exact;
    d["witness_phi"] = r.phi;
    d["witness_psi"] = r.psi;
    d["nodes_explored"] = r.nodes_explored;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gromov-Hausdorff distances between spheres";

    py::enum_<Flavor>(m, "Flavor").value("GEODESIC", Flavor::Geodesic).value("EUCLIDEAN", Flavor::Euclidean);

    m.def("geodesic_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
        return geodesic_distance(point(a), point(b));
    });
    m.def("euclidean_distance", [](const std::vector<double>& a, const std::vector<double>& b) {
        return euclidean_distance(point(a), point(b));
    });

    m.def("zeta", &zeta);
    m.def("eta", &eta);
    m.def("ls_lower_bound", &ls_lower_bound);
    m.def("euclidean_lower_bound", &euclidean_lower_bound);
    m.def("colding_bound", [](int a, int b) {
        const auto c = colding_bound(a, b);
        return py::dict(py::arg("value") = c.value, py::arg("inner_sup") = c.inner_sup,
                        py::arg("best_rho") = c.best_rho, py::arg("error_budget") = c.error_budget);
    });
    m.def("covering_radius", [](int a, int k) {
        const auto c = covering_radius(a, k);
        return py::make_tuple(c.value, c.exactness == Exactness::Exact);
    });
    m.def(
        "g_matrix",
        [](int max_dim, Flavor f) {
            py::list out;
            for (const auto& c : assemble_g_matrix(max_dim, f).cells) out.append(report(c));
            return out;
        },
        py::arg("max_dim"), py::arg("flavor") = Flavor::Geodesic);
    m.def("g_matrix_csv", [](int max_dim, Flavor f) { return assemble_g_matrix(max_dim, f).to_csv(); },
          py::arg("max_dim"), py::arg("flavor") = Flavor::Geodesic);

    m.def("helmet_contains", [](const std::vector<double>& x) { return helmet_contains(point(x)); });
    m.def("regular_simplex", [](int k) {
        std::vector<std::vector<double>> out;
        for (const auto& u : regular_simplex(k).u) out.push_back(u.coords());
        return out;
    });
    m.def("phi_21", [](const std::vector<double>& p) { return phi_21(point(p)).coords(); });
    m.def("phi_m_plus_1_to_m", [](int k, const std::vector<double>& p) {
        return phi_m_plus_1_to_m(k, point(p)).coords();
    });
    m.def("phi_31", [](const std::vector<double>& q) { return phi_31(point(q)).coords(); });
    m.def("phi_32", [](const std::vector<double>& p) { return phi_32(point(p)).coords(); });
    m.def("psi_12", [](double t, int depth) { return psi_12(t, depth).coords(); }, py::arg("t"),
          py::arg("depth") = kDefaultFillingDepth);
    m.def("rotation_apply", [](double a, const std::vector<double>& q) { return rotation_apply(a, point(q)).coords(); });
    m.def("rotation_decompose", [](const std::vector<double>& q) {
        const auto d = rotation_decompose(point(q));
        return py::make_tuple(d.p.coords(), d.alpha);
    });

    m.def("gh_exact_small", [](const std::vector<std::vector<double>>& X, const std::vector<std::vector<double>>& Y) {
        return gh_result(gh_exact_small(FiniteMetricSpace(X), FiniteMetricSpace(Y)));
    });
    m.def(
        "gh_heuristic",
        [](const std::vector<std::vector<double>>& X, const std::vector<std::vector<double>>& Y, int restarts,
           std::uint64_t seed) {
            return gh_result(gh_heuristic(FiniteMetricSpace(X), FiniteMetricSpace(Y), restarts, seed));
        },
        py::arg("X"), py::arg("Y"), py::arg("restarts") = 64, py::arg("seed") = 1);
    m.def("polygon_space", [](int n, Flavor f) { return polygon_space(n, f).matrix(); }, py::arg("n"),
          py::arg("flavor") = Flavor::Geodesic);
    m.def(
        "polygon_gh",
        [](int a, int b, Flavor f) {
            const auto r = polygon_gh(a, b, f);
            return py::make_tuple(r.value, r.exact, r.method);
        },
        py::arg("m"), py::arg("n"), py::arg("flavor") = Flavor::Geodesic);
    m.def(
        "ultrametric_quotient",
        [](const std::vector<std::vector<double>>& X, double tol) {
            const auto q = ultrametric_quotient(FiniteMetricSpace(X), tol);
            return py::make_tuple(q.space.matrix(), q.class_of);
        },
        py::arg("X"), py::arg("merge_tolerance") = kDefaultMergeTolerance);

    m.attr("CIRCLE") = kCircle;

    m.def(
        "_certify",
        [](const std::string& id, double mesh, std::uint64_t seed, double max_seconds) {
            CertifyRun run;
            {
                py::gil_scoped_release nogil;
                run = certify_construction(id, mesh, std::nullopt, seed, max_seconds);
            }
            return py::make_tuple(run.certificate.to_json(), run.target, run.pass);
        },
        py::arg("id"), py::arg("mesh") = 0.0, py::arg("seed") = 1, py::arg("max_seconds") = 600.0);
}
