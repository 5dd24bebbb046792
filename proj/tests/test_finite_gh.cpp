#include <cmath>
#include <random>

#include <doctest.h>
#include <json.hpp>

#include "spheregh/finite_gh.hpp"
#include "spheregh/nets.hpp"

using namespace sgh;

namespace {

FiniteMetricSpace random_space(std::mt19937_64& rng, int n) {
    // Shortest-path closure of random weights is always a metric.
    std::uniform_real_distribution<double> U(0.5, 2.0);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = U(rng);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return FiniteMetricSpace(d);
}

}  // namespace

TEST_CASE("small spaces") {
    const FiniteMetricSpace pt(std::vector<std::vector<double>>{{0.0}});
    const FiniteMetricSpace two({{0, 2}, {2, 0}});
    CHECK(gh_exact_small(pt, two).value == doctest::Approx(1.0));
    CHECK(gh_exact_small(two, two).value == 0.0);
    CHECK(gh_lower_diam(pt, two) == doctest::Approx(1.0));
    const auto r = gh_exact_small(pt, polygon_space(4));
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(M_PI / 2));
    CHECK(r.phi.size() == 1);
    CHECK(r.psi.size() == 4);
    const auto j = nlohmann::json::parse(r.to_json());
    for (const char* k : {"value", "exact", "witness_phi", "witness_psi", "nodes_explored"}) CHECK(j.contains(k));
}

TEST_CASE("adjacent polygons") {
    for (int m = 2; m <= 4; ++m) {
        const auto r = gh_exact_small(polygon_space(m), polygon_space(m + 1));
        CHECK(r.value == doctest::Approx(M_PI / (m + 1)).epsilon(1e-12));
        CHECK(2 * r.value <= 2 * M_PI / (m + 1) + 1e-12);
    }
}

TEST_CASE("polygon closed forms agree with exhaustive search") {
    CHECK(polygon_gh(2, 3).value == doctest::Approx(M_PI / 3));
    CHECK(polygon_gh(2, 4).value == doctest::Approx(M_PI / 4));
    CHECK(polygon_gh(2, 5).value == doctest::Approx(2 * M_PI / 5));
    CHECK(polygon_gh(2, 6).value == doctest::Approx(M_PI / 3));
    for (int n = 3; n <= 6; ++n) {
        const auto p = polygon_gh(2, n);
        CHECK(p.exact);
        CHECK(gh_exact_small(polygon_space(2), polygon_space(n)).value == doctest::Approx(p.value).epsilon(1e-12));
    }
    CHECK(polygon_gh(5, 5).value == 0.0);
    CHECK(polygon_gh(6, kCircle).value == doctest::Approx(M_PI / 6));
    CHECK(polygon_gh(6, kCircle, Flavor::Euclidean).value == doctest::Approx(std::sin(M_PI / 6)));
    const auto p37 = polygon_gh(3, 7);
    CHECK(!p37.method.empty());
    CHECK(p37.value > 0.0);
}

TEST_CASE("symmetry and triangle inequality") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        const auto X = random_space(rng, 4), Y = random_space(rng, 4), Z = random_space(rng, 3);
        const double xy = gh_exact_small(X, Y).value, yx = gh_exact_small(Y, X).value;
        CHECK(xy == doctest::Approx(yx).epsilon(1e-12));
        const double xz = gh_exact_small(X, Z).value, yz = gh_exact_small(Y, Z).value;
        CHECK(xz <= xy + yz + 1e-12);
        CHECK(gh_lower_diam(X, Y) <= xy + 1e-12);
    }
}

TEST_CASE("heuristic matches exact on random 5-point spaces") {
    std::mt19937_64 rng(22);
    int agree = 0;
    for (int t = 0; t < 100; ++t) {
        const auto X = random_space(rng, 5), Y = random_space(rng, 5);
        const double e = gh_exact_small(X, Y).value;
        const double h = gh_heuristic(X, Y).value;
        CHECK(h >= e - 1e-12);
        if (h <= e + 1e-9) ++agree;
    }
    CHECK(agree >= 95);
}

TEST_CASE("exhaustive guard") {
    CHECK(!gh_exact_feasible(10, 10));
    CHECK(gh_exact_feasible(5, 5));
    CHECK_THROWS_AS(gh_exact_small(polygon_space(10), polygon_space(10)), std::length_error);
}

TEST_CASE("ultrametric quotient") {
    const auto net = build_net(1, 2 * M_PI / 500);
    const auto S = FiniteMetricSpace::from_points(net.points, Flavor::Geodesic);
    REQUIRE(S.size() == 500);
    const auto U = ultrametric_quotient(S, 0.021);
    CHECK(U.space.size() <= 2);
    CHECK(U.class_of.size() == 500);
    const auto P = ultrametric_quotient(polygon_space(6));
    CHECK(P.space.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) CHECK(P.space(i, j) == doctest::Approx(M_PI / 3));
    for (int n = 3; n <= 8; ++n) CHECK(gh_lower_via_quotient(S, polygon_space(n), 0.021) >= M_PI / n - 0.03);
}
