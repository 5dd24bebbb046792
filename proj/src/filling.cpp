#include <array>
#include <cmath>
#include <stdexcept>

#include "spheregh/constructions.hpp"

namespace sgh {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sierpinski(double s, Vec3 A, Vec3 B, Vec3 C, int levels) {
    for (int l = 0; l < levels; ++l) {
        const Vec3 M{0.5 * (A[0] + B[0]), 0.5 * (A[1] + B[1]), 0.5 * (A[2] + B[2])};
        if (s < 0.5) {
            s = 2 * s;
            const Vec3 a = A, c = C;
            A = a;
            B = c;
            C = M;
        } else {
            s = 2 * s - 1;
            const Vec3 b = B, c = C;
            A = c;
            B = b;
            C = M;
        }
    }
    return {A[0] + s * (B[0] - A[0]), A[1] + s * (B[1] - A[1]), A[2] + s * (B[2] - A[2])};
}

struct Face {
    Vec3 A, B, C;
};

const std::array<Face, 4>& faces() {
    static const std::array<Face, 4> f{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                        {{0, 1, 0}, {0, 0, 1}, {-1, 0, 0}},
                                        {{0, 0, 1}, {0, -1, 0}, {1, 0, 0}},
                                        {{0, -1, 0}, {-1, 0, 0}, {0, 0, 1}}}};
    return f;
}

}  // namespace

SpherePoint SphereMap::operator()(const SpherePoint& x) const {
    if (x.dim() != source_dim) throw std::invalid_argument("point dimension does not match map source");
    std::vector<double> out(target_dim + 1);
    f(x.data(), out.data());
    return SpherePoint::normalized(std::move(out));
}

SpherePoint psi_12(double t, int depth) {
    if (depth < 0) throw std::invalid_argument("filling depth must be non-negative");
    t = std::fmod(t, 2 * M_PI);
    if (t < 0) t += 2 * M_PI;
    bool flip = false;
    if (t >= M_PI) {
        t -= M_PI;
        flip = true;
    }
    const double q = M_PI / 4;
    int k = static_cast<int>(std::floor(t / q));
    if (k > 3) k = 3;
    const double s = t - k * q;
    const Face& F = faces()[k];
    Vec3 p;
    if (s <= M_PI / 12) {
        p = F.A;
    } else if (s >= M_PI / 6) {
        p = F.B;
    } else {
        p = sierpinski((s - M_PI / 12) / (M_PI / 12), F.A, F.B, F.C, 2 * depth);
    }
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double sg = flip ? -1.0 : 1.0;
    return SpherePoint::normalized({sg * p[0] / n, sg * p[1] / n, sg * p[2] / n});
}

SphereMap psi_12_map(int depth) {
    SphereMap m;
    m.id = "psi:1-2";
    m.source_dim = 1;
    m.target_dim = 2;
    m.antipode_preserving = true;
    m.f = [depth](const double* x, double* out) {
        const auto p = psi_12(std::atan2(x[1], x[0]), depth);
        for (int k = 0; k < 3; ++k) out[k] = p[k];
    };
    return m;
}

SphereMap suspend(const SphereMap& f) {
    SphereMap s;
    s.id = "S(" + f.id + ")";
    s.source_dim = f.source_dim + 1;
    s.target_dim = f.target_dim + 1;
    s.antipode_preserving = f.antipode_preserving;
    const int a = f.source_dim, b = f.target_dim;
    auto inner = f.f;
    s.f = [inner, a, b](const double* x, double* out) {
        double r2 = 0.0;
        for (int k = 0; k <= a; ++k) r2 += x[k] * x[k];
        const double r = std::sqrt(r2);
        const double c = x[a + 1];
        if (r < 1e-15) {
            for (int k = 0; k <= b; ++k) out[k] = 0.0;
            out[b + 1] = c > 0 ? 1.0 : -1.0;
            return;
        }
        std::vector<double> p(a + 1), y(b + 1);
        for (int k = 0; k <= a; ++k) p[k] = x[k] / r;
        inner(p.data(), y.data());
        for (int k = 0; k <= b; ++k) out[k] = y[k] * r;
        out[b + 1] = c;
    };
    return s;
}

SphereMap psi_mn(int m, int n, int depth) {
    if (m < 1 || m >= n) throw std::invalid_argument("psi_mn needs 0 < m < n");
    std::vector<SphereMap> factors;
    SphereMap step = psi_12_map(depth);
    for (int k = 1; k < n; ++k) {
        if (k >= m) factors.push_back(step);
        step = suspend(step);
    }
    if (factors.size() == 1) return factors.front();
    SphereMap c;
    c.id = "psi:" + std::to_string(m) + "-" + std::to_string(n);
    c.source_dim = m;
    c.target_dim = n;
    c.antipode_preserving = true;
    c.f = [factors](const double* x, double* out) {
        std::vector<double> cur(x, x + factors.front().source_dim + 1);
        for (const auto& g : factors) {
            std::vector<double> next(g.target_dim + 1);
            g.f(cur.data(), next.data());
            cur = std::move(next);
        }
        std::copy(cur.begin(), cur.end(), out);
    };
    return c;
}

}  // namespace sgh
