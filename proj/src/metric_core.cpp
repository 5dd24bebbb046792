#include "spheregh/metric_core.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace sgh {

std::string to_string(Flavor f) { return f == Flavor::Geodesic ? "geodesic" : "euclidean"; }

Flavor flavor_from_string(const std::string& s) {
    if (s == "geodesic") return Flavor::Geodesic;
    if (s == "euclidean") return Flavor::Euclidean;
    throw std::invalid_argument("unknown flavor: " + s);
}

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("sphere point needs at least one coordinate");
    double n2 = dot(coords_.data(), coords_.data(), coords_.size());
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw std::invalid_argument("sphere point is not a unit vector");
}

SpherePoint SpherePoint::normalized(std::vector<double> coords) {
    double n = std::sqrt(dot(coords.data(), coords.data(), coords.size()));
    if (!(n > 0)) throw std::invalid_argument("cannot normalize the zero vector");
    for (double& c : coords) c /= n;
    return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::basis(int dim, int axis, double sign) {
    if (axis < 0 || axis > dim) throw std::invalid_argument("axis out of range");
    std::vector<double> c(dim + 1, 0.0);
    c[axis] = sign < 0 ? -1.0 : 1.0;
    return SpherePoint(std::move(c));
}

SpherePoint SpherePoint::operator-() const {
    SpherePoint p;
    p.coords_ = coords_;
    for (double& c : p.coords_) c = -c;
    return p;
}

SpherePoint SpherePoint::embed(int target_dim) const {
    if (target_dim < dim()) throw std::invalid_argument("cannot embed into a lower-dimensional sphere");
    SpherePoint p;
    p.coords_ = coords_;
    p.coords_.resize(target_dim + 1, 0.0);
    return p;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double geodesic_raw(const double* a, const double* b, std::size_t n) { return clamped_acos(dot(a, b, n)); }

double chord_from_angle(double angle) { return 2.0 * std::sin(0.5 * angle); }

double angle_from_chord(double chord) { return 2.0 * std::asin(std::clamp(0.5 * chord, 0.0, 1.0)); }

double metric_raw(Flavor f, const double* a, const double* b, std::size_t n) {
    if (f == Flavor::Geodesic) return geodesic_raw(a, b, n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

static void check_dims(const SpherePoint& x, const SpherePoint& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("sphere points have different dimensions");
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
    check_dims(x, y);
    double dm = 0.0, dp = 0.0;
    for (std::size_t i = 0; i < x.ambient(); ++i) {
        dm += (x[i] - y[i]) * (x[i] - y[i]);
        dp += (x[i] + y[i]) * (x[i] + y[i]);
    }
    return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

double euclidean_distance(const SpherePoint& x, const SpherePoint& y) {
    check_dims(x, y);
    return metric_raw(Flavor::Euclidean, x.data(), y.data(), x.ambient());
}

double sphere_distance(Flavor f, const SpherePoint& x, const SpherePoint& y) {
    return f == Flavor::Geodesic ? geodesic_distance(x, y) : euclidean_distance(x, y);
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw std::invalid_argument("finite metric space must be non-empty");
    if (dist_.size() != n) throw std::invalid_argument("distance matrix size does not match labels");
    for (const auto& row : dist_)
        if (row.size() != n) throw std::invalid_argument("distance matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_[i][i] != 0.0) throw std::invalid_argument("distance matrix has a non-zero diagonal entry");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(dist_[i][j] >= 0.0)) throw std::invalid_argument("negative or NaN distance");
            if (std::abs(dist_[i][j] - dist_[j][i]) > 1e-12) throw std::invalid_argument("distance matrix not symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist_[i][k] > dist_[i][j] + dist_[j][k] + 1e-9)
                    throw std::invalid_argument("triangle inequality violated at (" + labels_[i] + ", " +
                                                labels_[j] + ", " + labels_[k] + ")");
}

static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = std::to_string(i);
    return l;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist)
    : FiniteMetricSpace(default_labels(dist.size()), dist) {}

double FiniteMetricSpace::diameter() const {
    double d = 0.0;
    for (const auto& row : dist_)
        for (double v : row) d = std::max(d, v);
    return d;
}

std::string FiniteMetricSpace::to_json() const {
    nlohmann::json j;
    j["labels"] = labels_;
    j["dist"] = dist_;
    return j.dump(2);
}

FiniteMetricSpace FiniteMetricSpace::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dist")) throw std::invalid_argument("expected an object with a 'dist' field");
    std::vector<std::vector<double>> dist;
    try {
        dist = j.at("dist").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad 'dist' field: ") + e.what());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    } else {
        labels = default_labels(dist.size());
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::from_points(const std::vector<SpherePoint>& pts, Flavor f) {
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = sphere_distance(f, pts[i], pts[j]);
    return FiniteMetricSpace(default_labels(n), std::move(d));
}

RelationDistortion distortion_of_relation(const std::vector<std::pair<SpherePoint, SpherePoint>>& rel, Flavor fx,
                                          Flavor fy) {
    return distortion_of_relation(
        rel, [fx](const SpherePoint& a, const SpherePoint& b) { return sphere_distance(fx, a, b); },
        [fy](const SpherePoint& a, const SpherePoint& b) { return sphere_distance(fy, a, b); });
}

RelationDistortion distortion_of_relation(const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                          const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
    for (const auto& [a, b] : rel)
        if (a >= X.size() || b >= Y.size()) throw std::invalid_argument("relation index out of range");
    return distortion_of_relation(
        rel, [&X](std::size_t a, std::size_t b) { return X(a, b); },
        [&Y](std::size_t a, std::size_t b) { return Y(a, b); });
}

}  // namespace sgh
