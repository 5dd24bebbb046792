#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spheregh/metric_core.hpp"

namespace sgh {

// Every point of S^dim lies within `mesh` (geodesic) of some net point.
struct NetSpec {
    int dim = 0;
    double mesh = 0.0;
    std::vector<SpherePoint> points;
    std::vector<std::vector<std::uint32_t>> adjacency;  // empty until build_adjacency
};

inline constexpr std::size_t kDefaultNetBudget = 4'000'000;

// S^0: both points. S^1: ceil(2 pi / delta) equally spaced points.
// S^k, k >= 2: cell centers of an equiangular cube-sphere grid whose largest
// cell radius is <= delta. Throws std::length_error naming the smallest
// feasible delta when the net would exceed max_points.
NetSpec build_net(int dim, double delta, std::size_t max_points = kDefaultNetBudget);

// Links net points at geodesic distance <= radius.
void build_adjacency(NetSpec& net, double radius);

// Neighbor queries on arbitrary point sets via a uniform ambient grid hash.
class PointHash {
public:
    PointHash(const std::vector<std::vector<double>>& pts, double cell);
    // Indices of points within Euclidean distance r <= cell of q.
    void query(const double* q, double r, std::vector<std::uint32_t>& out) const;
    // Smallest Euclidean distance from q to the set; infinity when nothing lies within `cell`.
    double nearest(const double* q) const;

private:
    std::vector<std::vector<double>> pts_;
    double cell_;
    std::size_t dim_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> order_;
    std::uint64_t key_of(const long long* c) const;
    void visit(const double* q, const std::vector<long long>& base, std::size_t axis, std::vector<long long>& c,
               double r, std::vector<std::uint32_t>& out) const;
};

namespace cube {

// Face f of the cube in R^{k+1}: axis f / 2, sign + for even f.
int face_count(int k);
// Point of S^k at equiangular coordinates a[0..k-1] in [-pi/4, pi/4] on face f.
void face_point(int k, int face, const double* a, double* out);
// Equiangular coordinates of x on its dominant face; returns that face.
int locate(int k, const double* x, double* a);
// Center of the box [lo, hi] on face f and the largest angle from it to a corner.
double box_radius(int k, int face, const double* lo, const double* hi, double* center);

}  // namespace cube

}  // namespace sgh
