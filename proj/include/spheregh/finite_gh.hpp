#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spheregh/metric_core.hpp"

namespace sgh {

struct GHResult {
    double value = 0.0;
    bool exact = false;
    std::vector<std::size_t> phi;  // X -> Y
    std::vector<std::size_t> psi;  // Y -> X
    std::uint64_t nodes_explored = 0;

    std::string to_json() const;
};

inline constexpr double kExhaustiveGuard = 1e8;

// 1/2 min over (phi, psi) of max{dis phi, dis psi, codis(phi, psi)}.
// Throws std::length_error when |Y|^|X| * |X|^|Y| exceeds the guard.
GHResult gh_exact_small(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double guard = kExhaustiveGuard);
bool gh_exact_feasible(std::size_t nx, std::size_t ny, double guard = kExhaustiveGuard);

// Local search with random restarts; an upper bound.
GHResult gh_heuristic(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, int restarts = 64,
                      std::uint64_t seed = 1);

double gh_lower_diam(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

struct UltrametricQuotient {
    FiniteMetricSpace space;
    std::vector<std::size_t> class_of;  // quotient map on the points of X
    double merge_tolerance = 0.0;
};

inline constexpr double kDefaultMergeTolerance = 1e-9;

// Single-linkage ultrametric via a minimum spanning tree; points at u-distance below
// merge_tolerance are identified.
UltrametricQuotient ultrametric_quotient(const FiniteMetricSpace& X,
                                         double merge_tolerance = kDefaultMergeTolerance);

// Lower bound gh(U(X), U(Y)) - merge_tolerance. Quotients too large for the exhaustive
// search fall back to the diameter bound.
double gh_lower_via_quotient(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                             double merge_tolerance = kDefaultMergeTolerance);

inline constexpr int kCircle = 0;  // stands for S^1 itself in polygon_gh

FiniteMetricSpace polygon_space(int n, Flavor flavor = Flavor::Geodesic);

struct PolygonGH {
    double value = 0.0;
    bool exact = false;  // closed form
    std::string method;  // "closed-form", "exhaustive" or "heuristic"
};

PolygonGH polygon_gh(int m, int n, Flavor flavor = Flavor::Geodesic);

}  // namespace sgh
