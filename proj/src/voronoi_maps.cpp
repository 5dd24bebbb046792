#include <cmath>
#include <memory>
#include <stdexcept>

#include "spheregh/constructions.hpp"

namespace sgh {

namespace {

std::vector<double> padded(const SpherePoint& p, int dim) {
    std::vector<double> v(p.coords());
    v.resize(dim + 1, 0.0);
    return v;
}

Halfspace difference_halfspace(const std::vector<double>& a, const std::vector<double>& b) {
    Halfspace h;
    h.normal.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) h.normal[k] = a[k] - b[k];
    return h;
}

}  // namespace

PiecewiseMap phi_m_plus_1_to_m_map(int m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    auto frame = std::make_shared<RegularSimplexFrame>(regular_simplex(m));
    const int n = m + 1;
    std::vector<PiecewiseMap::Region> regions;
    regions.push_back({"E",
                       [n](const double* x) { return x[n] == 0.0 && helmet_contains(n - 1, x); },
                       [m](const double* x, double* out) {
                           double s = 0.0;
                           for (int k = 0; k <= m; ++k) s += x[k] * x[k];
                           s = std::sqrt(s);
                           for (int k = 0; k <= m; ++k) out[k] = x[k] / s;
                       }});
    for (int i = 0; i < m + 2; ++i) {
        regions.push_back({"N" + std::to_string(i + 1),
                           [frame, n, i](const double* x) {
                               return x[n] > 0.0 && voronoi_label(frame->u, x, n) == i;
                           },
                           [frame, i, m](const double* x, double* out) {
                               (void)x;
                               for (int k = 0; k <= m; ++k) out[k] = frame->u[i][k];
                           }});
    }
    std::string id = m == 1 ? "phi21" : "phi_m1_m:m=" + std::to_string(m);
    PiecewiseMap half(id, n, m, std::move(regions), false);
    PiecewiseMap full = odd_extend(half, [n](const double* x) { return helmet_contains(n, x); });
    return PiecewiseMap(id, n, m, full.regions(), true);
}

PiecewiseMap phi21_map() { return phi_m_plus_1_to_m_map(1); }

SpherePoint phi_m_plus_1_to_m(int m, const SpherePoint& p) {
    if (p.dim() != m + 1) throw std::invalid_argument("point must lie on S^{m+1}");
    static thread_local std::vector<PiecewiseMap> cache;
    if (cache.size() <= static_cast<std::size_t>(m)) cache.resize(m + 1);
    if (cache[m].source_dim() == 0) cache[m] = phi_m_plus_1_to_m_map(m);
    return cache[m](p);
}

SpherePoint phi_21(const SpherePoint& p) { return phi_m_plus_1_to_m(1, p); }

PiecewiseMap phi31_map() {
    auto inner = std::make_shared<PiecewiseMap>(phi21_map());
    std::vector<PiecewiseMap::Region> regions;
    regions.push_back({"S2", [](const double* q) { return q[3] == 0.0; },
                       [inner](const double* q, double* out) { inner->apply(q, out); }});
    regions.push_back({"rotated", [](const double* q) { return q[3] != 0.0; },
                       [inner](const double* q, double* out) {
                           const auto d = rotation_decompose(SpherePoint::normalized({q[0], q[1], q[2], q[3]}));
                           double v[2];
                           inner->apply(d.p.data(), v);
                           const double c = std::cos(d.alpha), s = std::sin(d.alpha);
                           out[0] = c * v[0] - s * v[1];
                           out[1] = s * v[0] + c * v[1];
                       }});
    return PiecewiseMap("phi31", 3, 1, std::move(regions), true);
}

SpherePoint phi_31(const SpherePoint& q) {
    if (q.dim() != 3) throw std::invalid_argument("point must lie on S^3");
    static const PiecewiseMap f = phi31_map();
    return f(q);
}

PiecewiseMap phi32_map(double alpha) {
    auto t = std::make_shared<TetraFrame>(TetraFrame::make(alpha));
    const double ca = std::cos(alpha);
    std::vector<SpherePoint> u(t->u.begin(), t->u.end());
    auto labels = std::make_shared<std::vector<SpherePoint>>(u);
    std::vector<PiecewiseMap::Region> regions;
    regions.push_back({"E", [](const double* x) { return x[3] == 0.0 && helmet_contains(2, x); },
                       [](const double* x, double* out) {
                           const double s = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
                           for (int k = 0; k < 3; ++k) out[k] = x[k] / s;
                       }});
    for (int i = 0; i < 4; ++i) {
        regions.push_back({"top" + std::to_string(i + 1),
                           [labels, ca, i](const double* x) {
                               return x[3] > 0.0 && x[3] >= ca && voronoi_label(*labels, x, 3) == i;
                           },
                           [t, i](const double*, double* out) {
                               for (int k = 0; k < 3; ++k) out[k] = t->u[i][k];
                           }});
    }
    for (int i = 0; i < 4; ++i) {
        std::vector<SpherePoint> sub;
        std::vector<int> js;
        for (int j = 0; j < 4; ++j)
            if (j != i) {
                sub.push_back(t->uij[i][j]);
                js.push_back(j);
            }
        auto subl = std::make_shared<std::vector<SpherePoint>>(sub);
        for (int s = 0; s < 3; ++s) {
            const int j = js[s];
            regions.push_back({"bot" + std::to_string(i + 1) + std::to_string(j + 1),
                               [labels, subl, ca, i, s](const double* x) {
                                   return x[3] > 0.0 && x[3] < ca && voronoi_label(*labels, x, 3) == i &&
                                          voronoi_label(*subl, x, 3) == s;
                               },
                               [t, i, j](const double*, double* out) {
                                   for (int k = 0; k < 3; ++k) out[k] = t->uij[i][j][k];
                               }});
        }
    }
    PiecewiseMap half("phi32", 3, 2, std::move(regions), false);
    PiecewiseMap full = odd_extend(half, [](const double* x) { return helmet_contains(3, x); });
    return PiecewiseMap("phi32", 3, 2, full.regions(), true);
}

SpherePoint phi_32(const SpherePoint& p, double alpha) {
    if (p.dim() != 3) throw std::invalid_argument("point must lie on S^3");
    static thread_local double cached_alpha = -1.0;
    static thread_local PiecewiseMap f;
    if (alpha != cached_alpha) {
        f = phi32_map(alpha);
        cached_alpha = alpha;
    }
    return f(p);
}

BlockCorrespondence phi_m_plus_1_to_m_block(int m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    const auto frame = regular_simplex(m);
    const int n = m + 1;
    BlockCorrespondence R;
    R.id = m == 1 ? "phi21" : "phi_m1_m:m=" + std::to_string(m);
    R.x_dim = n;
    R.y_dim = m;
    R.x_domain.dim = n;
    R.y_domain.dim = m;
    CorrespondencePiece id;
    id.name = "E";
    id.region.dim = m;
    id.x = Embedding::inclusion(n);
    id.y = Embedding::inclusion(m);
    R.pieces.push_back(id);
    for (int sign : {1, -1}) {
        for (int i = 0; i < m + 2; ++i) {
            CorrespondencePiece p;
            p.name = std::string(sign > 0 ? "" : "-") + "N" + std::to_string(i + 1);
            p.region.dim = n;
            p.region.constraints.push_back(coordinate_halfspace(n, n, 1.0));
            const auto ui = padded(frame.u[i], n);
            for (int j = 0; j < m + 2; ++j)
                if (j != i) p.region.constraints.push_back(difference_halfspace(ui, padded(frame.u[j], n)));
            if (sign < 0) p.region = p.region.negated();
            p.x = Embedding::inclusion(n);
            p.y = Embedding::constant(sign > 0 ? frame.u[i] : -frame.u[i]);
            R.pieces.push_back(std::move(p));
        }
    }
    // Pieces: 0 = E, 1.. = N_i, m + 3.. = -N_i. Simplex symmetries and the antipodal map act on both sides.
    const int neg = m + 3;
    R.representative_pairs = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {1, neg}, {1, neg + 1}};
    return R;
}

BlockCorrespondence phi32_block(double alpha) {
    const auto t = TetraFrame::make(alpha);
    const double ca = std::cos(alpha);
    BlockCorrespondence R;
    R.id = "phi32";
    R.x_dim = 3;
    R.y_dim = 2;
    R.x_domain.dim = 3;
    R.y_domain.dim = 2;
    CorrespondencePiece id;
    id.name = "E";
    id.region.dim = 2;
    id.x = Embedding::inclusion(3);
    id.y = Embedding::inclusion(2);
    R.pieces.push_back(id);
    for (int sign : {1, -1}) {
        const std::string pre = sign > 0 ? "" : "-";
        for (int i = 0; i < 4; ++i) {
            std::vector<Halfspace> vor;
            const auto ui = padded(t.u[i], 3);
            for (int j = 0; j < 4; ++j)
                if (j != i) vor.push_back(difference_halfspace(ui, padded(t.u[j], 3)));
            CorrespondencePiece top;
            top.name = pre + "top" + std::to_string(i + 1);
            top.region.dim = 3;
            top.region.constraints = vor;
            top.region.constraints.push_back(coordinate_halfspace(3, 3, 1.0, ca));
            if (sign < 0) top.region = top.region.negated();
            top.x = Embedding::inclusion(3);
            top.y = Embedding::constant(sign > 0 ? t.u[i] : -t.u[i]);
            R.pieces.push_back(top);
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                CorrespondencePiece bot;
                bot.name = pre + "bot" + std::to_string(i + 1) + std::to_string(j + 1);
                bot.region.dim = 3;
                bot.region.constraints = vor;
                bot.region.constraints.push_back(coordinate_halfspace(3, 3, 1.0, 0.0));
                bot.region.constraints.push_back(coordinate_halfspace(3, 3, -1.0, -ca));
                const auto uij = padded(t.uij[i][j], 3);
                for (int k = 0; k < 4; ++k)
                    if (k != i && k != j)
                        bot.region.constraints.push_back(difference_halfspace(uij, padded(t.uij[i][k], 3)));
                if (sign < 0) bot.region = bot.region.negated();
                bot.x = Embedding::inclusion(3);
                bot.y = Embedding::constant(sign > 0 ? t.uij[i][j] : -t.uij[i][j]);
                R.pieces.push_back(std::move(bot));
            }
        }
    }
    return R;
}

}  // namespace sgh
