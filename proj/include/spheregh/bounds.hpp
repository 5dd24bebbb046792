#pragma once

#include <string>
#include <vector>

#include "spheregh/metric_core.hpp"

namespace sgh {

enum class LowerProvenance { Colding, CoveringRadius, SimplexZeta, DiamDifference, Combined, EuclideanBU, Exact };
enum class UpperProvenance { HalfMaxDiam, EtaConstruction, CertifiedCorrespondence, Exact };
enum class Exactness { Exact, UpperBound };

std::string to_string(LowerProvenance p);
std::string to_string(UpperProvenance p);
std::string to_string(Exactness e);

inline constexpr int kInfiniteDim = -1;

struct BoundReport {
    int m = 0;
    int n = 0;  // kInfiniteDim for the infinite-dimensional sphere
    Flavor flavor = Flavor::Geodesic;
    double lower = 0.0;
    double upper = 0.0;
    LowerProvenance lower_provenance = LowerProvenance::Exact;
    UpperProvenance upper_provenance = UpperProvenance::Exact;
    bool exact = false;
    bool conservative = false;  // lower bound consumed a net-based covering radius
    std::string note;
};

// v_m(rho): normalized volume of a geodesic ball of radius rho in S^m.
double normalized_ball_volume(int m, double rho);
// rho with |v_n(rho) - t| <= 1e-9.
double invert_volume(int n, double t);

struct ColdingResult {
    double value = 0.0;       // mu_{m,n}, already reduced by error_budget / 2
    double inner_sup = 0.0;   // sup of v_n^{-1}(v_m(rho/2)) - rho before halving
    double best_rho = 0.0;
    double error_budget = 0.0;
};
ColdingResult colding_bound(int m, int n);
double colding_lower_bound(int m, int n);

struct CoveringRadius {
    double value = 0.0;
    Exactness exactness = Exactness::Exact;
};
CoveringRadius covering_radius(int m, int k);

double ls_lower_bound(int m, int n);
double zeta(int m);
double eta(int m);
double combined_lower_bound(int m, int n);
double euclidean_lower_bound(int m);
double euclidean_distortion_transfer(double dis_geodesic);
double interval_sphere_lower_bound();

struct GMatrix {
    int max_dim = 0;
    Flavor flavor = Flavor::Geodesic;
    std::vector<BoundReport> cells;     // finite cells, m < n <= max_dim, row-major
    std::vector<BoundReport> infinity;  // (m, infinity) for m = 0..max_dim, symbolic

    const BoundReport& at(int m, int n) const;
    std::string to_csv() const;
    std::string to_json() const;
    std::string to_pretty() const;
};

GMatrix assemble_g_matrix(int max_dim, Flavor flavor);

}  // namespace sgh
