#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "spheregh/bounds.hpp"
#include "spheregh/constructions.hpp"
#include "spheregh/distortion.hpp"
#include "spheregh/nets.hpp"

using namespace sgh;

namespace {

PiecewiseMap circle_identity() {
    PiecewiseMap::Region all{"all", [](const double*) { return true; },
                             [](const double* x, double* o) { o[0] = x[0], o[1] = x[1]; }};
    return PiecewiseMap("id", 1, 1, {all}, true);
}

}  // namespace

TEST_CASE("nets cover the sphere") {
    const auto n1 = build_net(1, 0.1);
    CHECK(n1.points.size() == static_cast<std::size_t>(std::ceil(2 * M_PI / 0.1)));
    const auto n2 = build_net(2, 0.1);
    std::vector<std::vector<double>> pts;
    for (const auto& p : n2.points) pts.push_back(p.coords());
    CHECK(coverage_radius(pts, 2, 0.02) <= 0.1 + 0.02);
    CHECK_THROWS_AS(build_net(3, 0.001, 1000), std::length_error);
}

TEST_CASE("identity map has small certified distortion") {
    const auto cert = certify_map_distortion(circle_identity(), build_net(1, 0.05), Flavor::Geodesic);
    CHECK(cert.complete);
    CHECK(cert.lower_estimate < 1e-12);
    CHECK(cert.upper_bound <= 0.1 + 1e-12);
    CHECK(cert.upper_bound >= cert.lower_estimate);
}

TEST_CASE("phi21 block certificate at coarse mesh") {
    BlockCertifyOptions o;
    o.mesh = 0.05;
    const auto cert = certify_block_distortion(phi_m_plus_1_to_m_block(1), o);
    CHECK(cert.complete);
    CHECK(cert.method == "adaptive");
    CHECK(cert.lower_estimate >= 2 * M_PI / 3 - 0.05);
    CHECK(cert.lower_estimate <= 2 * M_PI / 3 + 1e-9);
    CHECK(cert.upper_bound <= 2 * M_PI / 3 + 0.05);
    CHECK(cert.padding == doctest::Approx(cert.upper_bound - cert.lower_estimate));

    const auto j = nlohmann::json::parse(cert.to_json());
    for (const char* k : {"construction_id", "method", "flavor", "net_mesh", "lower_estimate", "upper_bound",
                          "padding", "witness", "terms", "complete", "pairs_examined", "wall_time_s"})
        CHECK(j.contains(k));
    CHECK(j["witness"].contains("term"));
}

TEST_CASE("euclidean certificate respects the transfer bound") {
    BlockCertifyOptions o;
    o.mesh = 0.05;
    const auto g = certify_block_distortion(phi_m_plus_1_to_m_block(1), o);
    auto B = phi_m_plus_1_to_m_block(1);
    B.flavor = Flavor::Euclidean;
    const auto e = certify_block_distortion(B, o);
    CHECK(e.lower_estimate <= euclidean_distortion_transfer(g.upper_bound) + 1e-9);
    CHECK(e.upper_bound <= euclidean_distortion_transfer(g.upper_bound) + e.padding + 1e-9);
}

TEST_CASE("budget exhaustion marks the certificate incomplete") {
    BlockCertifyOptions o;
    o.mesh = 0.001;
    o.max_seconds = 0.05;
    const auto cert = certify_block_distortion(phi_m_plus_1_to_m_block(2), o);
    CHECK(!cert.complete);
    CHECK(cert.upper_bound >= cert.lower_estimate);
}

TEST_CASE("modulus of discontinuity") {
    auto net = build_net(2, 0.05);
    build_adjacency(net, 0.12);
    const auto f = phi21_map();
    const auto fn = [&f](const double* x, double* o) { f.apply(x, o); };
    const double delta = modulus_of_discontinuity_lower(fn, 1, net);
    CHECK(delta >= zeta(1) - 0.1);
    BlockCertifyOptions o;
    o.mesh = 0.05;
    const auto cert = certify_block_distortion(phi_m_plus_1_to_m_block(1), o);
    CHECK(delta <= cert.upper_bound + 1e-9);

    auto circle = build_net(1, 0.05);
    build_adjacency(circle, 0.11);
    const auto id = circle_identity();
    const auto g = [&id](const double* x, double* o) { id.apply(x, o); };
    CHECK(modulus_of_discontinuity_lower(g, 1, circle) <= 0.25);
}

TEST_CASE("region distances") {
    SphereRegion east;
    east.dim = 1;
    east.constraints = wedge(1, -0.1, 0.1);
    SphereRegion north;
    north.dim = 1;
    north.constraints = wedge(1, M_PI / 2 - 0.1, M_PI / 2 + 0.1);
    const auto lo = extremal_distance({east}, {north}, false, Flavor::Geodesic);
    CHECK(lo.lower <= M_PI / 2 - 0.2 + 1e-6);
    CHECK(lo.upper >= M_PI / 2 - 0.2 - 1e-6);
    const auto hi = extremal_distance({east}, {north}, true, Flavor::Geodesic);
    CHECK(hi.upper == doctest::Approx(M_PI / 2 + 0.2).epsilon(1e-5));
    const auto pr = point_region_distance({1.0, 0.0}, {north}, false, Flavor::Euclidean);
    CHECK(pr.lower == doctest::Approx(chord_from_angle(M_PI / 2 - 0.1)).epsilon(1e-5));
}

TEST_CASE("coverage radius of half a circle") {
    std::vector<std::vector<double>> half;
    for (int i = 0; i <= 500; ++i) half.push_back({std::cos(M_PI * i / 500), std::sin(M_PI * i / 500)});
    CHECK(coverage_radius(half, 1, 0.01, 4.0) >= M_PI / 2 - 0.01);
}
