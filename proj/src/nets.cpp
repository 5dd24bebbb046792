#include "spheregh/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sgh {

namespace cube {

int face_count(int k) { return 2 * (k + 1); }

void face_point(int k, int face, const double* a, double* out) {
    const int axis = face / 2;
    const double sign = (face % 2 == 0) ? 1.0 : -1.0;
    double n2 = 1.0;
    int j = 0;
    for (int i = 0; i <= k; ++i) {
        if (i == axis) {
            out[i] = sign;
        } else {
            out[i] = std::tan(a[j++]);
            n2 += out[i] * out[i];
        }
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i <= k; ++i) out[i] *= inv;
}

int locate(int k, const double* x, double* a) {
    int axis = 0;
    for (int i = 1; i <= k; ++i)
        if (std::abs(x[i]) > std::abs(x[axis])) axis = i;
    const double s = x[axis];
    int j = 0;
    for (int i = 0; i <= k; ++i)
        if (i != axis) a[j++] = std::atan(x[i] / std::abs(s));
    return 2 * axis + (s < 0 ? 1 : 0);
}

double box_radius(int k, int face, const double* lo, const double* hi, double* center) {
    double mid[16], corner[16], p[17];
    for (int i = 0; i < k; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
    face_point(k, face, mid, center);
    double r = 0.0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        for (int i = 0; i < k; ++i) corner[i] = (mask >> i) & 1u ? hi[i] : lo[i];
        face_point(k, face, corner, p);
        r = std::max(r, geodesic_raw(center, p, static_cast<std::size_t>(k + 1)));
    }
    return r;
}

}  // namespace cube

namespace {

double max_cell_radius(int k, int K) {
    const double w = (M_PI / 2) / K;
    std::vector<int> idx(k, 0);
    double lo[16], hi[16], c[17];
    double r = 0.0;
    // By symmetry of the face, only one orthant with sorted indices is needed.
    const int half = (K + 1) / 2;
    while (true) {
        bool sorted = true;
        for (int i = 1; i < k; ++i)
            if (idx[i] < idx[i - 1]) sorted = false;
        if (sorted) {
            for (int i = 0; i < k; ++i) {
                lo[i] = -M_PI / 4 + idx[i] * w;
                hi[i] = lo[i] + w;
            }
            r = std::max(r, cube::box_radius(k, 0, lo, hi, c));
        }
        int i = 0;
        while (i < k && ++idx[i] == half) idx[i++] = 0;
        if (i == k) break;
    }
    return r;
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

NetSpec build_net(int dim, double delta, std::size_t max_points) {
    if (dim < 0) throw std::invalid_argument("sphere dimension must be non-negative");
    if (!(delta > 0)) throw std::invalid_argument("net mesh must be positive");
    NetSpec net;
    net.dim = dim;
    if (dim == 0) {
        net.points = {SpherePoint({1.0}), SpherePoint({-1.0})};
        net.mesh = 0.0;
        return net;
    }
    if (dim == 1) {
        const std::size_t n = static_cast<std::size_t>(std::ceil(2 * M_PI / delta - 1e-9));
        if (n > max_points)
            throw std::length_error("net too large; smallest feasible mesh is " +
                                    std::to_string(2 * M_PI / static_cast<double>(max_points)));
        net.points.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = 2 * M_PI * static_cast<double>(i) / static_cast<double>(n);
            net.points.push_back(SpherePoint::normalized({std::cos(t), std::sin(t)}));
        }
        net.mesh = M_PI / static_cast<double>(n);
        return net;
    }
    if (dim > 15) throw std::invalid_argument("net dimension too large");
    const int faces = cube::face_count(dim);
    int K = std::max(1, static_cast<int>(std::floor(M_PI / (4 * delta))));
    double r = max_cell_radius(dim, K);
    while (r > delta) {
        ++K;
        if (static_cast<double>(faces) * std::pow(K, dim) > static_cast<double>(max_points)) {
            int Kmax = K - 1;
            while (Kmax > 1 && static_cast<double>(faces) * std::pow(Kmax, dim) > static_cast<double>(max_points))
                --Kmax;
            throw std::length_error("net too large; smallest feasible mesh is " +
                                    std::to_string(max_cell_radius(dim, Kmax)));
        }
        r = max_cell_radius(dim, K);
    }
    net.mesh = r;
    const double w = (M_PI / 2) / K;
    const std::size_t per_face = ipow(static_cast<std::size_t>(K), dim);
    net.points.reserve(per_face * faces);
    std::vector<double> a(dim), out(dim + 1);
    for (int f = 0; f < faces; ++f) {
        for (std::size_t cell = 0; cell < per_face; ++cell) {
            std::size_t c = cell;
            for (int i = 0; i < dim; ++i) {
                a[i] = -M_PI / 4 + (static_cast<double>(c % K) + 0.5) * w;
                c /= K;
            }
            cube::face_point(dim, f, a.data(), out.data());
            net.points.push_back(SpherePoint::normalized(out));
        }
    }
    return net;
}

PointHash::PointHash(const std::vector<std::vector<double>>& pts, double cell) : pts_(pts), cell_(cell) {
    if (!(cell > 0)) throw std::invalid_argument("hash cell must be positive");
    dim_ = pts_.empty() ? 0 : pts_[0].size();
    keys_.resize(pts_.size());
    std::vector<long long> c(dim_);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        for (std::size_t d = 0; d < dim_; ++d) c[d] = static_cast<long long>(std::floor(pts_[i][d] / cell_));
        keys_[i] = key_of(c.data());
    }
    order_.resize(pts_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) { return keys_[a] < keys_[b]; });
    std::vector<std::uint64_t> sorted(keys_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) sorted[i] = keys_[order_[i]];
    keys_ = std::move(sorted);
}

std::uint64_t PointHash::key_of(const long long* c) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t d = 0; d < dim_; ++d) {
        h ^= static_cast<std::uint64_t>(c[d] + (1ll << 20));
        h *= 1099511628211ull;
    }
    return h;
}

void PointHash::visit(const double* q, const std::vector<long long>& base, std::size_t axis,
                      std::vector<long long>& c, double r, std::vector<std::uint32_t>& out) const {
    if (axis == dim_) {
        const std::uint64_t k = key_of(c.data());
        auto [b, e] = std::equal_range(keys_.begin(), keys_.end(), k);
        for (auto it = b; it != e; ++it) {
            const std::uint32_t idx = order_[static_cast<std::size_t>(it - keys_.begin())];
            double s = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) {
                const double t = pts_[idx][d] - q[d];
                s += t * t;
            }
            if (s <= r * r) out.push_back(idx);
        }
        return;
    }
    for (long long o = -1; o <= 1; ++o) {
        c[axis] = base[axis] + o;
        visit(q, base, axis + 1, c, r, out);
    }
}

void PointHash::query(const double* q, double r, std::vector<std::uint32_t>& out) const {
    if (r > cell_) throw std::invalid_argument("query radius exceeds hash cell");
    std::vector<long long> base(dim_), c(dim_);
    for (std::size_t d = 0; d < dim_; ++d) base[d] = static_cast<long long>(std::floor(q[d] / cell_));
    const std::size_t before = out.size();
    visit(q, base, 0, c, r, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(before), out.end());
    out.erase(std::unique(out.begin() + static_cast<std::ptrdiff_t>(before), out.end()), out.end());
}

double PointHash::nearest(const double* q) const {
    std::vector<std::uint32_t> cand;
    query(q, cell_, cand);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t i : cand) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            const double t = pts_[i][d] - q[d];
            s += t * t;
        }
        best = std::min(best, std::sqrt(s));
    }
    return best;
}

void build_adjacency(NetSpec& net, double radius) {
    const double chord = chord_from_angle(std::min(radius, M_PI));
    std::vector<std::vector<double>> pts;
    pts.reserve(net.points.size());
    for (const auto& p : net.points) pts.push_back(p.coords());
    PointHash hash(pts, chord);
    net.adjacency.assign(net.points.size(), {});
    std::vector<std::uint32_t> buf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        buf.clear();
        hash.query(pts[i].data(), chord, buf);
        for (std::uint32_t j : buf)
            if (j != i) net.adjacency[i].push_back(j);
    }
}

}  // namespace sgh
