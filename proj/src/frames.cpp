#include <cmath>
#include <stdexcept>

#include "spheregh/constructions.hpp"

namespace sgh {

bool helmet_contains(int n, const double* x) {
    for (int k = n; k >= 1; --k) {
        if (x[k] > 0) return true;
        if (x[k] < 0) return false;
    }
    return x[0] > 0;
}

bool helmet_contains(const SpherePoint& x) { return helmet_contains(x.dim(), x.data()); }

namespace {

std::vector<std::vector<double>> simplex_coords(int m) {
    if (m == 0) return {{1.0}, {-1.0}};
    const auto lower = simplex_coords(m - 1);
    const double h = -1.0 / (m + 1);
    const double s = std::sqrt(1.0 - h * h);
    std::vector<std::vector<double>> out;
    std::vector<double> first(m + 1, 0.0);
    first[0] = 1.0;
    out.push_back(first);
    for (const auto& w : lower) {
        std::vector<double> v{h};
        for (double c : w) v.push_back(s * c);
        out.push_back(v);
    }
    return out;
}

}  // namespace

RegularSimplexFrame regular_simplex(int m) {
    if (m < 1) throw std::invalid_argument("regular_simplex needs m >= 1");
    RegularSimplexFrame f;
    f.m = m;
    for (auto& c : simplex_coords(m)) f.u.push_back(SpherePoint::normalized(std::move(c)));
    return f;
}

int voronoi_label(const std::vector<SpherePoint>& u, const double* x, std::size_t len) {
    int best = 0;
    double bv = dot(u[0].data(), x, len);
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double v = dot(u[i].data(), x, len);
        if (v > bv) {
            bv = v;
            best = static_cast<int>(i);
        }
    }
    return best;
}

void rotation_apply(double alpha, const double* q, double* out) {
    const double c = std::cos(alpha), s = std::sin(alpha);
    const double x = q[0], y = q[1], z = q[2], w = q[3];
    out[0] = c * x - s * y;
    out[1] = s * x + c * y;
    out[2] = c * z - s * w;
    out[3] = s * z + c * w;
}

SpherePoint rotation_apply(double alpha, const SpherePoint& q) {
    if (q.ambient() != 4) throw std::invalid_argument("rotation acts on S^3");
    std::vector<double> out(4);
    rotation_apply(alpha, q.data(), out.data());
    return SpherePoint::normalized(std::move(out));
}

RotationDecomposition rotation_decompose(const SpherePoint& q) {
    if (q.ambient() != 4) throw std::invalid_argument("rotation acts on S^3");
    const double zq = q[2], wq = q[3];
    const double r2 = zq * zq + wq * wq;
    if (r2 < 1e-20) throw std::domain_error("point lies on the embedded S^1; decomposition is not unique");
    double alpha = std::atan2(wq, zq);
    double z = std::sqrt(r2);
    if (alpha < 0) {
        alpha += M_PI;
        z = -z;
    }
    if (alpha >= M_PI) {
        alpha -= M_PI;
        z = -z;
    }
    const double c = std::cos(alpha), s = std::sin(alpha);
    RotationDecomposition d;
    d.alpha = alpha;
    d.p = SpherePoint::normalized({c * q[0] + s * q[1], -s * q[0] + c * q[1], z, 0.0});
    return d;
}

double TetraFrame::min_cos2() { return (std::sqrt(3.0) - 1.0) / (3.0 + std::sqrt(3.0)); }
double TetraFrame::max_cos2() { return 7.0 / 9.0; }
double TetraFrame::default_alpha() { return std::acos(std::sqrt(7.0 / 9.0)); }

TetraFrame TetraFrame::make(double alpha) {
    const double c2 = std::cos(alpha) * std::cos(alpha);
    if (!(alpha >= 0 && alpha <= M_PI / 2) || c2 < min_cos2() - 1e-12 || c2 > max_cos2() + 1e-12)
        throw std::invalid_argument("alpha outside the admissible window");
    TetraFrame t;
    t.alpha = alpha;
    t.r = std::acos(2.0 * std::sqrt(2.0) / 3.0);
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    t.u = {SpherePoint::normalized({1.0, 0.0, 0.0}), SpherePoint::normalized({-1.0 / 3, 2 * r2 / 3, 0.0}),
           SpherePoint::normalized({-1.0 / 3, -r2 / 3, r2 / r3}),
           SpherePoint::normalized({-1.0 / 3, -r2 / 3, -r2 / r3})};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                t.uij[i][j] = t.u[i];
                continue;
            }
            const double d = -dot(t.u[j].data(), t.u[i].data(), 3);
            double w[3], n2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                w[k] = -t.u[j][k] - d * t.u[i][k];
                n2 += w[k] * w[k];
            }
            const double nn = std::sqrt(n2);
            std::vector<double> v(3);
            for (int k = 0; k < 3; ++k) v[k] = std::cos(t.r) * t.u[i][k] + std::sin(t.r) * w[k] / nn;
            t.uij[i][j] = SpherePoint::normalized(std::move(v));
        }
    }
    return t;
}

}  // namespace sgh
