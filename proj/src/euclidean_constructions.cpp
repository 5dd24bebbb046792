#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spheregh/constructions.hpp"
#include "spheregh/distortion.hpp"

namespace sgh {

double heptagon_rho(int k) { return std::sqrt(2.0 - 2.0 * std::cos(k * M_PI / 7.0)); }

namespace {

int cyclic_gap(int i, int j) {
    const int d = std::abs(i - j) % 7;
    return std::min(d, 7 - d);
}

SpherePoint circle_point(double angle) { return SpherePoint::normalized({std::cos(angle), std::sin(angle)}); }

// Region index (1..7) of each grid cell, column-major over x in [-1,0], [0,0.4], [0.4,1]
// and rows y in [-1,-s], [-s,0], [0,s], [s,1].
constexpr int kLabels[3][4] = {{6, 4, 4, 2}, {5, 5, 3, 2}, {7, 5, 3, 1}};

}  // namespace

HeptagonCorrespondence heptagon_correspondence_E() {
    HeptagonCorrespondence H;
    const double alpha = H.split_alpha;
    const double s = std::sqrt(1.0 - alpha * alpha);
    const double r3 = std::sqrt(3.0);
    const double rho5 = heptagon_rho(5), rho6 = heptagon_rho(6);

    for (int i = 0; i < 7; ++i) H.u[i] = circle_point(2 * M_PI * i / 7.0);
    const double t1 = s + 2 - r3;
    const double t5 = s + rho6 - r3;
    const double t6 = s + (rho6 - r3) + (rho5 - r3);
    const auto root = [](double t) { return std::sqrt(1.0 - t * t); };
    H.a = {SpherePoint::normalized({root(t1), t1, 0.0}), SpherePoint::normalized({0.0, t1, root(t1)}),
           SpherePoint::normalized({0.0, s, alpha}),     SpherePoint::normalized({0.0, 0.0, 1.0}),
           SpherePoint::normalized({0.0, -t5, root(t5)}), SpherePoint::normalized({0.0, -t6, root(t6)}),
           SpherePoint::normalized({root(t6), -t6, 0.0})};

    BlockCorrespondence& R = H.R;
    R.id = "heptagonE";
    R.flavor = Flavor::Euclidean;
    R.x_dim = 1;
    R.y_dim = 2;
    R.x_domain.dim = 1;
    R.y_domain.dim = 2;
    R.y_domain.constraints.push_back(coordinate_halfspace(2, 2, 1.0));

    const auto column = [](int c) {
        std::vector<Halfspace> h;
        if (c == 0) h.push_back(coordinate_halfspace(2, 0, -1.0, 0.0));
        if (c == 1) {
            h.push_back(coordinate_halfspace(2, 0, 1.0, 0.0));
            h.push_back(coordinate_halfspace(2, 0, -1.0, -0.4));
        }
        if (c == 2) h.push_back(coordinate_halfspace(2, 0, 1.0, 0.4));
        return h;
    };
    const auto row = [s](int r) {
        std::vector<Halfspace> h;
        if (r == 0) h.push_back(coordinate_halfspace(2, 1, -1.0, s));
        if (r == 1) {
            h.push_back(coordinate_halfspace(2, 1, 1.0, -s));
            h.push_back(coordinate_halfspace(2, 1, -1.0, 0.0));
        }
        if (r == 2) {
            h.push_back(coordinate_halfspace(2, 1, 1.0, 0.0));
            h.push_back(coordinate_halfspace(2, 1, -1.0, -s));
        }
        if (r == 3) h.push_back(coordinate_halfspace(2, 1, 1.0, s));
        return h;
    };
    for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 4; ++r) {
            const int label = kLabels[c][r] - 1;
            CorrespondencePiece p;
            p.name = "A" + std::to_string(label + 1) + "[" + std::to_string(c) + std::to_string(r) + "]";
            p.region.dim = 2;
            p.region.constraints.push_back(coordinate_halfspace(2, 2, 1.0));
            for (auto& h : column(c)) p.region.constraints.push_back(h);
            for (auto& h : row(r)) p.region.constraints.push_back(h);
            p.x = Embedding::constant(H.u[label]);
            p.y = Embedding::inclusion(2);
            H.A[label].push_back(p.region);
            R.pieces.push_back(std::move(p));
        }
    }
    for (int i = 0; i < 7; ++i) {
        const double th = 2 * M_PI * i / 7.0;
        CorrespondencePiece p;
        p.name = "arc" + std::to_string(i + 1);
        p.region.dim = 1;
        p.region.constraints = wedge(1, th - M_PI / 7, th + M_PI / 7);
        p.x = Embedding::inclusion(1);
        p.y = Embedding::constant(H.a[i]);
        R.pieces.push_back(std::move(p));
    }

    const Flavor E = Flavor::Euclidean;
    const auto add = [&](int idx, const std::string& what, double thr, double value, bool greater) {
        HeptagonCondition c;
        c.index = idx;
        c.statement = what;
        c.threshold = thr;
        c.value = value;
        c.holds = greater ? value > thr : value < thr;
        H.conditions.push_back(c);
    };
    // Each condition keeps its worst case over the index pairs it quantifies.
    double c1 = 1e9, c2 = 1e9, c3 = 1e9, c4 = 1e9, c5 = 1e9, c6 = 0, c7 = 0;
    for (int i = 0; i < 7; ++i) {
        c6 = std::max(c6, extremal_distance(H.A[i], H.A[i], true, E).upper);
        for (int j = 0; j < 7; ++j) {
            if (i == j) continue;
            const int g = cyclic_gap(i, j);
            const double aa = euclidean_distance(H.a[i], H.a[j]);
            if (g == 3 && i < j) c1 = std::min(c1, extremal_distance(H.A[i], H.A[j], false, E).lower);
            if (g == 2) c2 = std::min(c2, aa);
            if (g == 3) c3 = std::min(c3, aa);
            if (g == 2) c4 = std::min(c4, point_region_distance(H.a[j].coords(), H.A[i], false, E).lower);
            if (g == 3) c5 = std::min(c5, point_region_distance(H.a[j].coords(), H.A[i], false, E).lower);
            if (g == 1) c7 = std::max(c7, aa);
        }
    }
    add(1, "d(A_i, A_j) > rho6 - sqrt3 for |i - j| = 3", rho6 - r3, c1, true);
    add(2, "d(a_i, a_j) > rho6 - sqrt3 for |i - j| = 2", rho6 - r3, c2, true);
    add(3, "d(a_i, a_j) > 2 - sqrt3 for |i - j| = 3", 2 - r3, c3, true);
    add(4, "d(A_i, a_j) > rho5 - sqrt3 for |i - j| = 2", rho5 - r3, c4, true);
    add(5, "d(A_i, a_j) > 2 - sqrt3 for |i - j| = 3", 2 - r3, c5, true);
    add(6, "diam A_i < sqrt3", r3, c6, false);
    add(7, "d(a_i, a_j) < sqrt3 for |i - j| = 1", r3, c7, false);
    for (const auto& c : H.conditions)
        if (!c.holds) {
            std::ostringstream os;
            os << "heptagon condition " << c.index << " fails: " << c.statement << " (value " << c.value << ")";
            throw std::runtime_error(os.str());
        }
    for (int i = 0; i < 7; ++i) {
        bool inside = false;
        for (const auto& r : H.A[i]) inside = inside || r.contains(H.a[i].data(), 1e-12);
        if (!inside) throw std::runtime_error("heptagon point a_" + std::to_string(i + 1) + " is not in its region");
    }
    return H;
}

HexagonCorrespondence hexagon_correspondence() {
    HexagonCorrespondence X;
    X.theta0 = std::asin(1.0 / std::sqrt(3.0));
    const double t0 = X.theta0;
    const auto Phi = [](double ph, double th) {
        return SpherePoint::normalized({std::cos(ph) * std::sin(th), std::sin(ph) * std::sin(th), std::cos(th)});
    };
    const double cphi[6] = {M_PI / 3, 2 * M_PI / 3, M_PI, 4 * M_PI / 3, 5 * M_PI / 3, 2 * M_PI};
    for (int i = 0; i < 6; ++i) {
        X.x[i] = circle_point(-i * M_PI / 3);
        X.y[i] = Phi(cphi[i], i % 2 == 0 ? t0 : M_PI - t0);
    }
    BlockCorrespondence& R = X.R;
    R.id = "hexagonD";
    R.x_dim = 1;
    R.y_dim = 2;
    R.x_domain.dim = 1;
    R.y_domain.dim = 2;
    for (int i = 0; i < 6; ++i) {
        const double c = -i * M_PI / 3;
        CorrespondencePiece p;
        p.name = "A" + std::to_string(i + 1);
        p.region.dim = 1;
        p.region.constraints = wedge(1, c - M_PI / 6, c + M_PI / 6);
        p.x = Embedding::inclusion(1);
        p.y = Embedding::constant(X.y[i]);
        R.pieces.push_back(std::move(p));
    }
    for (int i = 0; i < 6; ++i) {
        const double a = i * M_PI / 3;
        CorrespondencePiece p;
        p.name = "B" + std::to_string(i + 1);
        p.region.dim = 2;
        p.region.constraints = wedge(2, a, a + 2 * M_PI / 3);
        p.region.constraints.push_back(coordinate_halfspace(2, 2, i % 2 == 0 ? 1.0 : -1.0));
        p.x = Embedding::constant(X.x[i]);
        p.y = Embedding::inclusion(2);
        R.pieces.push_back(std::move(p));
    }
    R.term = [](const CorrespondencePiece& a, const CorrespondencePiece& b, bool) {
        const bool ca = a.y.kind == Embedding::Kind::Constant, cb = b.y.kind == Embedding::Kind::Constant;
        if (ca && cb) return std::string("alpha");
        if (!ca && !cb) return std::string("beta");
        return std::string("gamma");
    };

    const double step[4] = {0.0, M_PI / 3, 2 * M_PI / 3, M_PI};
    const double ystep[6] = {0.0, 2 * M_PI / 3, M_PI / 3, M_PI, M_PI / 3, 2 * M_PI / 3};
    X.dX.assign(6, std::vector<double>(6));
    X.dY = X.dX_expected = X.dY_expected = X.dX;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            X.dX[i][j] = geodesic_distance(X.x[i], X.x[j]);
            X.dY[i][j] = geodesic_distance(X.y[i], X.y[j]);
            const int g = std::abs(i - j);
            X.dX_expected[i][j] = step[std::min(g, 6 - g)];
            X.dY_expected[i][j] = ystep[g];
        }
    }
    return X;
}

}  // namespace sgh
