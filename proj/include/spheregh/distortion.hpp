#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spheregh/correspondence.hpp"
#include "spheregh/metric_core.hpp"
#include "spheregh/nets.hpp"

namespace sgh {

struct Witness {
    std::vector<double> x, x2, y, y2;
    std::string term;
};

struct TermBound {
    std::string term;
    double lower = 0.0;
    double upper = 0.0;
};

struct DistortionCertificate {
    std::string construction_id;
    std::string method;  // "net" or "adaptive"
    Flavor flavor = Flavor::Geodesic;
    double net_mesh = 0.0;
    double lower_estimate = 0.0;
    double upper_bound = 0.0;
    double padding = 0.0;  // upper_bound - lower_estimate
    Witness witness;
    std::vector<TermBound> terms;
    std::string attaining_term;
    bool complete = true;  // false when a budget stopped the search early
    std::uint64_t pairs_examined = 0;
    double wall_time_s = 0.0;

    std::string to_json() const;
};

struct MapCertifyOptions {
    double slack = 0.0;              // node pairs within slack of the incumbent are not refined
    std::uint64_t pair_budget = 4'000'000'000ull;
    double max_seconds = 600.0;
    std::uint64_t seed = 1;
};

// Distortion of graph(f) over a source net. lower_estimate is the exact net maximum
// (up to slack), upper_bound adds 2 * mesh for the source side.
DistortionCertificate certify_map_distortion(const PiecewiseMap& f, const NetSpec& source_net, Flavor flavor,
                                             const MapCertifyOptions& opts = {});
DistortionCertificate certify_map_distortion(const std::string& id, int target_dim,
                                             const std::function<void(const double*, double*)>& f,
                                             const std::vector<std::vector<double>>& source_points, double mesh,
                                             Flavor flavor, const MapCertifyOptions& opts = {});

struct BlockCertifyOptions {
    double mesh = 0.02;
    double tolerance = -1.0;   // target gap upper - lower; defaults to mesh
    double min_radius = -1.0;  // boxes are not split below this; defaults to mesh / 64
    std::uint64_t max_pairs = 4'000'000'000ull;
    double max_seconds = 600.0;
    std::uint64_t seed = 1;
};

// Best-first branch and bound over box pairs of the pieces; each pair is bounded by
// distance intervals from box centers and radii.
DistortionCertificate certify_block_distortion(const BlockCorrespondence& R, const BlockCertifyOptions& opts = {});

struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// inf (maximize = false) or sup (maximize = true) of the distance between two unions of regions.
DistanceBounds extremal_distance(const std::vector<SphereRegion>& A, const std::vector<SphereRegion>& B,
                                 bool maximize, Flavor flavor, double tol = 1e-6);
DistanceBounds point_region_distance(const std::vector<double>& p, const std::vector<SphereRegion>& B,
                                     bool maximize, Flavor flavor, double tol = 1e-6);

// max over net vertices of diam f(star(v)); an estimate of the modulus of discontinuity.
double modulus_of_discontinuity_lower(const std::function<void(const double*, double*)>& f, int target_dim,
                                      const NetSpec& net, Flavor flavor = Flavor::Geodesic);

// Upper estimate of the Hausdorff distance from a point set to all of S^dim
// (probe net maximum of nearest-point distance, plus the probe mesh).
double coverage_radius(const std::vector<std::vector<double>>& points, int dim, double probe_mesh,
                       double search_radius = 0.3);

}  // namespace sgh
