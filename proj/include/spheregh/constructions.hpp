#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "spheregh/correspondence.hpp"
#include "spheregh/metric_core.hpp"

namespace sgh {

// A(S^n): last coordinate > 0, or = 0 and the equator projection lies in A(S^{n-1}); A(S^0) = {1}.
bool helmet_contains(int n, const double* x);
bool helmet_contains(const SpherePoint& x);

struct RegularSimplexFrame {
    int m = 0;
    std::vector<SpherePoint> u;  // m + 2 vertices on S^m
};

RegularSimplexFrame regular_simplex(int m);

// Index of the nearest vertex (largest inner product, lowest index on ties).
int voronoi_label(const std::vector<SpherePoint>& u, const double* x, std::size_t len);

void rotation_apply(double alpha, const double* q, double* out);
SpherePoint rotation_apply(double alpha, const SpherePoint& q);

struct RotationDecomposition {
    SpherePoint p;  // fourth coordinate 0, third nonzero
    double alpha = 0.0;
};

// q = T_alpha p with alpha in [0, pi). Throws std::domain_error on the embedded S^1.
RotationDecomposition rotation_decompose(const SpherePoint& q);

struct TetraFrame {
    std::array<SpherePoint, 4> u;
    std::array<std::array<SpherePoint, 4>, 4> uij;  // uij[i][i] unused
    double r = 0.0;
    double alpha = 0.0;

    // Throws std::invalid_argument when cos^2(alpha) leaves [(sqrt3 - 1)/(3 + sqrt3), 7/9].
    static TetraFrame make(double alpha);
    static double default_alpha();
    static double min_cos2();
    static double max_cos2();
};

PiecewiseMap phi21_map();
SpherePoint phi_21(const SpherePoint& p);

PiecewiseMap phi_m_plus_1_to_m_map(int m);
SpherePoint phi_m_plus_1_to_m(int m, const SpherePoint& p);

PiecewiseMap phi31_map();
SpherePoint phi_31(const SpherePoint& q);

PiecewiseMap phi32_map(double alpha = TetraFrame::default_alpha());
SpherePoint phi_32(const SpherePoint& p, double alpha = TetraFrame::default_alpha());

// Closure of the graph in block form, for certify_block_distortion.
BlockCorrespondence phi_m_plus_1_to_m_block(int m);
BlockCorrespondence phi32_block(double alpha = TetraFrame::default_alpha());

struct SphereMap {
    std::string id;
    int source_dim = 0;
    int target_dim = 0;
    std::function<void(const double*, double*)> f;
    bool antipode_preserving = false;

    SpherePoint operator()(const SpherePoint& x) const;
};

inline constexpr int kDefaultFillingDepth = 8;

// S^1 -> S^2, antipode preserving, surjective up to 2^-depth.
SpherePoint psi_12(double t, int depth = kDefaultFillingDepth);
SphereMap psi_12_map(int depth = kDefaultFillingDepth);
SphereMap suspend(const SphereMap& f);
SphereMap psi_mn(int m, int n, int depth = kDefaultFillingDepth);

struct HeptagonCondition {
    int index = 0;  // 1..7
    std::string statement;
    double threshold = 0.0;
    double value = 0.0;  // certified side of the bound: lower for ">", upper for "<"
    bool holds = false;
};

struct HeptagonCorrespondence {
    BlockCorrespondence R;  // S^1 versus the closed upper hemisphere of S^2, Euclidean
    std::array<SpherePoint, 7> u;
    std::array<SpherePoint, 7> a;
    std::array<std::vector<SphereRegion>, 7> A;
    std::vector<HeptagonCondition> conditions;
    double split_alpha = 0.866;
};

double heptagon_rho(int k);
// Throws std::runtime_error when any of the seven conditions fails.
HeptagonCorrespondence heptagon_correspondence_E();

struct HexagonCorrespondence {
    BlockCorrespondence R;
    std::array<SpherePoint, 6> x;
    std::array<SpherePoint, 6> y;
    double theta0 = 0.0;
    std::vector<std::vector<double>> dX, dY;              // computed
    std::vector<std::vector<double>> dX_expected, dY_expected;
};

HexagonCorrespondence hexagon_correspondence();

}  // namespace sgh
