#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgh {

enum class Flavor { Geodesic, Euclidean };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

// Unit vector in R^{dim+1}.
class SpherePoint {
public:
    SpherePoint() = default;
    // Throws if the norm differs from 1 by more than 1e-12.
    explicit SpherePoint(std::vector<double> coords);

    static SpherePoint normalized(std::vector<double> coords);
    static SpherePoint basis(int dim, int axis, double sign = 1.0);

    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    std::size_t ambient() const { return coords_.size(); }
    const std::vector<double>& coords() const { return coords_; }
    const double* data() const { return coords_.data(); }
    double operator[](std::size_t i) const { return coords_[i]; }

    SpherePoint operator-() const;
    // Equator inclusion S^dim -> S^{dim+k}.
    SpherePoint embed(int target_dim) const;

private:
    std::vector<double> coords_;
};

double dot(const double* a, const double* b, std::size_t n);
double clamped_acos(double c);
double geodesic_raw(const double* a, const double* b, std::size_t n);
double chord_from_angle(double angle);
double angle_from_chord(double chord);
double metric_raw(Flavor f, const double* a, const double* b, std::size_t n);

double geodesic_distance(const SpherePoint& x, const SpherePoint& y);
double euclidean_distance(const SpherePoint& x, const SpherePoint& y);
double sphere_distance(Flavor f, const SpherePoint& x, const SpherePoint& y);

class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    // Validates symmetry, zero diagonal, non-negativity and the triangle
    // inequality (tolerance 1e-9); violations throw std::invalid_argument.
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> dist);
    explicit FiniteMetricSpace(std::vector<std::vector<double>> dist);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }
    double operator()(std::size_t i, std::size_t j) const { return dist_[i][j]; }
    double diameter() const;

    std::string to_json() const;
    static FiniteMetricSpace from_json(const std::string& text);
    static FiniteMetricSpace from_points(const std::vector<SpherePoint>& pts, Flavor f);

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> dist_;
};

struct RelationDistortion {
    double value = 0.0;
    std::size_t first = 0;   // index of (x, y) in the relation
    std::size_t second = 0;  // index of (x', y')
};

// Exact maximum of |dX(x,x') - dY(y,y')| over all pairs of pairs.
template <class A, class B, class DX, class DY>
RelationDistortion distortion_of_relation(const std::vector<std::pair<A, B>>& rel, DX dX, DY dY) {
    if (rel.empty()) throw std::invalid_argument("relation is empty");
    RelationDistortion best;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        for (std::size_t j = i + 1; j < rel.size(); ++j) {
            double v = dX(rel[i].first, rel[j].first) - dY(rel[i].second, rel[j].second);
            if (v < 0) v = -v;
            if (v > best.value) best = {v, i, j};
        }
    }
    return best;
}

RelationDistortion distortion_of_relation(const std::vector<std::pair<SpherePoint, SpherePoint>>& rel,
                                          Flavor fx, Flavor fy);
RelationDistortion distortion_of_relation(const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                          const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

// Maximum over sampled (x, y) of |dX(x, psi(y)) - dY(phi(x), y)|.
template <class SX, class SY, class Phi, class Psi, class DX, class DY>
double codistortion(Phi phi, Psi psi, const std::vector<SX>& sampleX, const std::vector<SY>& sampleY, DX dX,
                    DY dY) {
    if (sampleX.empty() || sampleY.empty()) throw std::invalid_argument("codistortion needs non-empty samples");
    std::vector<SX> psiY;
    psiY.reserve(sampleY.size());
    for (const auto& y : sampleY) psiY.push_back(psi(y));
    double best = 0.0;
    for (const auto& x : sampleX) {
        auto fx = phi(x);
        for (std::size_t j = 0; j < sampleY.size(); ++j) {
            double v = dX(x, psiY[j]) - dY(fx, sampleY[j]);
            if (v < 0) v = -v;
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace sgh
