#include <cmath>
#include <sstream>

#include <doctest.h>

#include "spheregh/bounds.hpp"

using namespace sgh;

TEST_CASE("normalized ball volume against closed forms") {
    for (double r : {0.1, 0.7, 1.5, 2.9}) {
        CHECK(normalized_ball_volume(1, r) == doctest::Approx(r / M_PI).epsilon(1e-10));
        CHECK(normalized_ball_volume(2, r) == doctest::Approx((1 - std::cos(r)) / 2).epsilon(1e-10));
        const double v3 = (r - std::sin(r) * std::cos(r)) / M_PI;
        CHECK(normalized_ball_volume(3, r) == doctest::Approx(v3).epsilon(1e-10));
    }
    CHECK(normalized_ball_volume(4, M_PI / 2) == doctest::Approx(0.5));
    CHECK(invert_volume(2, normalized_ball_volume(2, 1.1)) == doctest::Approx(1.1).epsilon(1e-9));
}

TEST_CASE("colding bound for (1, 2)") {
    const auto c = colding_bound(1, 2);
    CHECK(c.inner_sup >= 0.1605);
    CHECK(c.inner_sup <= 0.1625);
    CHECK(c.value >= 0.0802);
    CHECK(c.value <= 0.0813);
    const double nu = ls_lower_bound(1, 2);
    CHECK(nu == doctest::Approx(M_PI / 6));
    CHECK(nu / c.value >= 6.2);
    CHECK(nu / c.value <= 6.8);
}

TEST_CASE("covering radii") {
    CHECK(covering_radius(1, 5).value == doctest::Approx(M_PI / 5));
    CHECK(covering_radius(2, 2).value == doctest::Approx(M_PI / 2));
    CHECK(covering_radius(2, 4).value == doctest::Approx(std::acos(1.0 / 3)));
    CHECK(covering_radius(2, 4).exactness == Exactness::Exact);
    const auto oct = covering_radius(2, 6);
    CHECK(oct.exactness == Exactness::UpperBound);
    CHECK(oct.value >= std::acos(1 / std::sqrt(3.0)) - 1e-9);
    CHECK(oct.value <= std::acos(1 / std::sqrt(3.0)) + 0.05);
}

TEST_CASE("simplex constants") {
    CHECK(zeta(1) == doctest::Approx(2 * M_PI / 3));
    CHECK(zeta(2) == doctest::Approx(std::acos(-1.0 / 3)));
    CHECK(eta(1) == doctest::Approx(2 * M_PI / 3));
    CHECK(eta(2) == doctest::Approx(std::acos(-1 / std::sqrt(3.0))));
    CHECK(eta(3) == doctest::Approx(std::acos(-2.0 / 3)));
    for (int m = 1; m < 8; ++m) {
        CHECK(eta(m) >= zeta(m) - 1e-12);
        CHECK(eta(m) < M_PI);
    }
}

TEST_CASE("euclidean bounds") {
    CHECK(euclidean_lower_bound(1) == doctest::Approx(0.5));
    CHECK(euclidean_lower_bound(2) == doctest::Approx((2 - std::sqrt(4.0 / 3)) / 2));
    CHECK(euclidean_distortion_transfer(M_PI) == doctest::Approx(2.0));
    CHECK(euclidean_distortion_transfer(M_PI / 3) == doctest::Approx(1.0));
    CHECK(interval_sphere_lower_bound() == doctest::Approx(M_PI / 3));
}

TEST_CASE("g-matrix exact cells") {
    const auto g = assemble_g_matrix(4, Flavor::Geodesic);
    for (int n = 1; n <= 4; ++n) {
        CHECK(std::abs(g.at(0, n).lower - M_PI / 2) < 1e-12);
        CHECK(g.at(0, n).exact);
    }
    CHECK(std::abs(g.at(1, 2).lower - M_PI / 3) < 1e-12);
    CHECK(std::abs(g.at(1, 3).upper - M_PI / 3) < 1e-12);
    CHECK(std::abs(g.at(2, 3).lower - zeta(2) / 2) < 1e-12);
    CHECK(g.at(2, 3).exact);
    for (const auto& c : g.cells) CHECK(c.lower <= c.upper + 1e-12);
    CHECK(g.at(3, 4).upper == doctest::Approx(eta(3) / 2));
    CHECK(g.at(1, 4).upper == doctest::Approx(M_PI / 2));
    CHECK(g.infinity.size() == 5);
    CHECK_THROWS(g.at(3, 2));
}

TEST_CASE("g-matrix serializations") {
    const auto g = assemble_g_matrix(3, Flavor::Euclidean);
    const std::string csv = g.to_csv();
    CHECK(csv.rfind("m,n,flavor,lower,upper,lower_provenance,upper_provenance,exactness\n", 0) == 0);
    std::istringstream is(csv);
    std::string line;
    int rows = -1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == static_cast<int>(g.cells.size()));
    CHECK(g.to_json().find("\"infinity\"") != std::string::npos);
    CHECK(!g.to_pretty().empty());
    CHECK(g.at(1, 2).lower == doctest::Approx(0.5));
    CHECK(g.at(0, 2).upper == doctest::Approx(1.0));
}
