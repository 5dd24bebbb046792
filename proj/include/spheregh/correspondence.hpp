#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spheregh/metric_core.hpp"

namespace sgh {

// Closed halfspace {x : <normal, x> >= offset}.
struct Halfspace {
    std::vector<double> normal;
    double offset = 0.0;
};

// Intersection of closed halfspaces with S^dim. No constraints = whole sphere.
struct SphereRegion {
    int dim = 0;
    std::vector<Halfspace> constraints;

    bool contains(const double* x, double tol = 0.0) const;
    // Conservative: false only when the geodesic ball B(center, radius) misses some constraint.
    bool may_intersect(const double* center, double radius) const;
    SphereRegion negated() const;
};

Halfspace coordinate_halfspace(int dim, int axis, double sign, double offset = 0.0);
// Points whose azimuth in the (axis0, axis1) plane lies in [a, b], b - a < pi.
std::vector<Halfspace> wedge(int dim, double a, double b, int axis0 = 0, int axis1 = 1);

// Isometric inclusion of the parameter sphere as a coordinate subsphere, or a constant point.
struct Embedding {
    enum class Kind { Constant, Inclusion };
    Kind kind = Kind::Inclusion;
    int target_dim = 0;
    std::vector<double> point;  // Constant only

    static Embedding constant(const SpherePoint& p);
    static Embedding inclusion(int target_dim);
    void apply(const double* param, int param_dim, double* out) const;
    double lipschitz() const { return kind == Kind::Inclusion ? 1.0 : 0.0; }
};

// {(x(p), y(p)) : p in region}.
struct CorrespondencePiece {
    std::string name;
    SphereRegion region;
    Embedding x;
    Embedding y;
};

struct BlockCorrespondence {
    std::string id;
    int x_dim = 0;
    int y_dim = 0;
    Flavor flavor = Flavor::Geodesic;
    std::vector<CorrespondencePiece> pieces;
    // Restricts the spaces when they are proper subsets of spheres (e.g. a closed hemisphere).
    SphereRegion x_domain;
    SphereRegion y_domain;
    // Names the distortion term of a piece pair; defaults to block_term.
    std::function<std::string(const CorrespondencePiece&, const CorrespondencePiece&, bool same)> term;
    // Piece pairs (a <= b) that represent all others up to a symmetry acting isometrically on
    // both sides. Empty means every pair is examined.
    std::vector<std::pair<int, int>> representative_pairs;

    std::string term_of(std::size_t a, std::size_t b) const;
    // Index of a piece whose `side` projection contains p, or -1. side 0 = X, 1 = Y.
    int covering_piece(int side, const double* p, double tol = 1e-12) const;
    // Throws std::runtime_error naming the first uncovered sample.
    void check_coverage(int side, const std::vector<SpherePoint>& samples) const;
};

// "A": same block, "B": two blocks, "C": block and identity part, "I": identity parts.
std::string block_term(const CorrespondencePiece& a, const CorrespondencePiece& b, bool same);

// Map between spheres given by first-matching region and per-region rule.
class PiecewiseMap {
public:
    using Predicate = std::function<bool(const double*)>;
    using Rule = std::function<void(const double*, double*)>;
    struct Region {
        std::string name;
        Predicate contains;
        Rule rule;
    };

    PiecewiseMap() = default;
    PiecewiseMap(std::string id, int source_dim, int target_dim, std::vector<Region> regions, bool antipode_preserving);

    const std::string& id() const { return id_; }
    int source_dim() const { return source_dim_; }
    int target_dim() const { return target_dim_; }
    bool antipode_preserving() const { return antipode_preserving_; }
    const std::vector<Region>& regions() const { return regions_; }

    int region_of(const double* x) const;
    void apply(const double* x, double* out) const;
    SpherePoint operator()(const SpherePoint& x) const;

private:
    std::string id_;
    int source_dim_ = 0;
    int target_dim_ = 0;
    std::vector<Region> regions_;
    bool antipode_preserving_ = false;
};

// phi* = phi on C and -phi(-x) on -C. Throws if a sample lies in both C and -C.
PiecewiseMap odd_extend(const PiecewiseMap& phi, const PiecewiseMap::Predicate& C,
                        const std::vector<SpherePoint>& samples = {});

}  // namespace sgh
