#include <cmath>
#include <random>

#include <doctest.h>

#include "spheregh/metric_core.hpp"

using namespace sgh;

TEST_CASE("sphere points") {
    CHECK_THROWS_AS(SpherePoint({1.0, 1.0}), std::invalid_argument);
    const auto p = SpherePoint::normalized({3.0, 4.0});
    CHECK(p[0] == doctest::Approx(0.6));
    CHECK(p.dim() == 1);
    const auto e = p.embed(3);
    CHECK(e.ambient() == 4);
    CHECK(e[3] == 0.0);
    CHECK((-p)[1] == doctest::Approx(-0.8));
    CHECK(SpherePoint::basis(2, 2, -1.0)[2] == -1.0);
}

TEST_CASE("geodesic and chordal distances") {
    const auto a = SpherePoint::basis(2, 0), b = SpherePoint::basis(2, 1);
    CHECK(geodesic_distance(a, b) == doctest::Approx(M_PI / 2));
    CHECK(geodesic_distance(a, -a) == doctest::Approx(M_PI));
    CHECK(euclidean_distance(a, -a) == doctest::Approx(2.0));
    CHECK(geodesic_distance(a, a) == 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, M_PI);
    for (int i = 0; i < 1000; ++i) {
        const double t = U(rng);
        CHECK(angle_from_chord(chord_from_angle(t)) == doctest::Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("finite metric space validation") {
    CHECK_THROWS_AS(FiniteMetricSpace({{0, 1}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteMetricSpace({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteMetricSpace(std::vector<std::vector<double>>{{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteMetricSpace({{0, -1}, {-1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteMetricSpace::from_json("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(FiniteMetricSpace::from_json("[1,2]"), std::invalid_argument);

    const FiniteMetricSpace X({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    CHECK(X.diameter() == 2.0);
    const auto Y = FiniteMetricSpace::from_json(X.to_json());
    CHECK(Y.labels() == X.labels());
    CHECK(Y.matrix() == X.matrix());
}

TEST_CASE("relation distortion") {
    const FiniteMetricSpace X({{0, 1}, {1, 0}});
    const FiniteMetricSpace Y({{0, 3}, {3, 0}});
    std::vector<std::pair<std::size_t, std::size_t>> rel{{0, 0}, {1, 1}};
    CHECK(distortion_of_relation(rel, X, Y).value == doctest::Approx(2.0));
    rel = {{0, 0}, {1, 0}};
    CHECK(distortion_of_relation(rel, X, Y).value == doctest::Approx(1.0));

    std::vector<std::pair<SpherePoint, SpherePoint>> iso;
    for (int i = 0; i < 12; ++i) {
        const double t = 2 * M_PI * i / 12;
        const auto p = SpherePoint::normalized({std::cos(t), std::sin(t)});
        iso.emplace_back(p, p.embed(2));
    }
    CHECK(distortion_of_relation(iso, Flavor::Geodesic, Flavor::Geodesic).value < 1e-12);
}

TEST_CASE("codistortion of the identity is zero") {
    std::vector<double> s{0.0, 0.5, 1.0, 2.0};
    const auto id = [](double v) { return v; };
    const auto d = [](double a, double b) { return std::abs(a - b); };
    CHECK(codistortion(id, id, s, s, d, d) == 0.0);
    const auto shift = [](double v) { return v + 0.25; };
    CHECK(codistortion(shift, id, s, s, d, d) == doctest::Approx(0.25));
}

TEST_CASE("flavor names") {
    CHECK(flavor_from_string(to_string(Flavor::Euclidean)) == Flavor::Euclidean);
    CHECK(flavor_from_string("geodesic") == Flavor::Geodesic);
    CHECK_THROWS(flavor_from_string("taxicab"));
}
