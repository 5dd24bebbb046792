#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "spheregh/distortion.hpp"

namespace sgh {

std::string DistortionCertificate::to_json() const {
    nlohmann::json j;
    j["construction_id"] = construction_id;
    j["method"] = method;
    j["flavor"] = to_string(flavor);
    j["net_mesh"] = net_mesh;
    j["lower_estimate"] = lower_estimate;
    j["upper_bound"] = upper_bound;
    j["padding"] = padding;
    j["witness"] = {{"x", witness.x}, {"x'", witness.x2}, {"y", witness.y}, {"y'", witness.y2}, {"term", witness.term}};
    j["attaining_term"] = attaining_term;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : terms) j["terms"].push_back({{"term", t.term}, {"lower", t.lower}, {"upper", t.upper}});
    j["complete"] = complete;
    j["pairs_examined"] = pairs_examined;
    j["wall_time_s"] = wall_time_s;
    return j.dump(2);
}

namespace {

struct Node {
    std::uint32_t begin = 0, end = 0;
    std::int32_t left = -1, right = -1;
    double sr = 0.0, ir = 0.0;
    std::uint32_t sc = 0, ic = 0;  // offsets into center pools
};

class DualTree {
public:
    DualTree(std::vector<double> src, std::size_t sa, std::vector<double> img, std::size_t ta, Flavor f,
             const MapCertifyOptions& o)
        : src_(std::move(src)), img_(std::move(img)), sa_(sa), ta_(ta), flavor_(f), opts_(o) {
        n_ = src_.size() / sa_;
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), 0u);
        build(0, static_cast<std::uint32_t>(n_));
    }

    void run() {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(opts_.seed);
        std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
        for (int i = 0; i < 200000 && n_ > 1; ++i) leaf_pair(pick(rng), pick(rng));
        struct Item {
            std::int32_t a, b;
        };
        std::vector<Item> stack{{0, 0}};
        std::uint64_t steps = 0;
        while (!stack.empty()) {
            const Item it = stack.back();
            stack.pop_back();
            if ((++steps & 8191u) == 0) {
                const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (el > opts_.max_seconds || pairs_ > opts_.pair_budget) {
                    complete_ = false;
                    for (const auto& s : stack) pruned_ = std::max(pruned_, bound(s.a, s.b));
                    pruned_ = std::max(pruned_, bound(it.a, it.b));
                    break;
                }
            }
            const double ub = bound(it.a, it.b);
            if (ub <= L_ + opts_.slack) {
                pruned_ = std::max(pruned_, ub);
                continue;
            }
            const Node& A = nodes_[it.a];
            const Node& B = nodes_[it.b];
            const bool la = A.left < 0, lb = B.left < 0;
            if (la && lb) {
                for (std::uint32_t i = A.begin; i < A.end; ++i)
                    for (std::uint32_t j = (it.a == it.b ? i + 1 : B.begin); j < B.end; ++j) leaf_pair(perm_[i], perm_[j]);
                continue;
            }
            std::vector<Item> kids;
            if (it.a == it.b) {
                kids = {{A.left, A.left}, {A.left, A.right}, {A.right, A.right}};
            } else if (!la && (lb || A.sr >= B.sr)) {
                kids = {{A.left, it.b}, {A.right, it.b}};
            } else {
                kids = {{it.a, B.left}, {it.a, B.right}};
            }
            std::sort(kids.begin(), kids.end(),
                      [&](const Item& p, const Item& q) { return bound(p.a, p.b) < bound(q.a, q.b); });
            for (const auto& k : kids) stack.push_back(k);
        }
    }

    double L_ = 0.0;
    double pruned_ = 0.0;
    bool complete_ = true;
    std::uint64_t pairs_ = 0;
    std::size_t wi_ = 0, wj_ = 0;

private:
    std::vector<double> src_, img_;
    std::size_t sa_, ta_, n_;
    Flavor flavor_;
    MapCertifyOptions opts_;
    std::vector<std::uint32_t> perm_;
    std::vector<Node> nodes_;
    std::vector<double> pool_;

    const double* sp(std::size_t i) const { return &src_[i * sa_]; }
    const double* ip(std::size_t i) const { return &img_[i * ta_]; }

    void leaf_pair(std::size_t i, std::size_t j) {
        ++pairs_;
        const double v =
            std::abs(metric_raw(flavor_, sp(i), sp(j), sa_) - metric_raw(flavor_, ip(i), ip(j), ta_));
        if (v > L_) {
            L_ = v;
            wi_ = i;
            wj_ = j;
        }
    }

    double conv(double angle) const {
        angle = std::clamp(angle, 0.0, M_PI);
        return flavor_ == Flavor::Geodesic ? angle : chord_from_angle(angle);
    }

    double bound(std::int32_t a, std::int32_t b) const {
        const Node& A = nodes_[a];
        const Node& B = nodes_[b];
        const double dx = geodesic_raw(&pool_[A.sc], &pool_[B.sc], sa_);
        const double dy = geodesic_raw(&pool_[A.ic], &pool_[B.ic], ta_);
        const double rx = A.sr + B.sr, ry = A.ir + B.ir;
        return std::max(conv(dx + rx) - conv(dy - ry), conv(dy + ry) - conv(dx - rx));
    }

    std::uint32_t ball(std::uint32_t begin, std::uint32_t end, bool image, double& radius) {
        const std::size_t amb = image ? ta_ : sa_;
        std::vector<double> c(amb, 0.0);
        for (std::uint32_t i = begin; i < end; ++i) {
            const double* p = image ? ip(perm_[i]) : sp(perm_[i]);
            for (std::size_t d = 0; d < amb; ++d) c[d] += p[d];
        }
        double n2 = 0.0;
        for (double v : c) n2 += v * v;
        if (n2 < 1e-20) {
            const double* p = image ? ip(perm_[begin]) : sp(perm_[begin]);
            c.assign(p, p + amb);
        } else {
            for (double& v : c) v /= std::sqrt(n2);
        }
        radius = 0.0;
        for (std::uint32_t i = begin; i < end; ++i)
            radius = std::max(radius, geodesic_raw(c.data(), image ? ip(perm_[i]) : sp(perm_[i]), amb));
        radius += 1e-12;
        const std::uint32_t off = static_cast<std::uint32_t>(pool_.size());
        pool_.insert(pool_.end(), c.begin(), c.end());
        return off;
    }

    std::int32_t build(std::uint32_t begin, std::uint32_t end) {
        const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        Node nd;
        nd.begin = begin;
        nd.end = end;
        nd.sc = ball(begin, end, false, nd.sr);
        nd.ic = ball(begin, end, true, nd.ir);
        if (end - begin > 24) {
            std::size_t axis = 0;
            double spread = -1.0;
            for (std::size_t d = 0; d < sa_; ++d) {
                double lo = 1e9, hi = -1e9;
                for (std::uint32_t i = begin; i < end; ++i) {
                    lo = std::min(lo, sp(perm_[i])[d]);
                    hi = std::max(hi, sp(perm_[i])[d]);
                }
                if (hi - lo > spread) {
                    spread = hi - lo;
                    axis = d;
                }
            }
            const std::uint32_t mid = begin + (end - begin) / 2;
            std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                             [&](std::uint32_t p, std::uint32_t q) { return sp(p)[axis] < sp(q)[axis]; });
            nd.left = build(begin, mid);
            nd.right = build(mid, end);
        }
        nodes_[id] = nd;
        return id;
    }
};

}  // namespace

DistortionCertificate certify_map_distortion(const std::string& id, int target_dim,
                                             const std::function<void(const double*, double*)>& f,
                                             const std::vector<std::vector<double>>& source_points, double mesh,
                                             Flavor flavor, const MapCertifyOptions& opts) {
    if (source_points.size() < 2) throw std::invalid_argument("map certification needs at least two net points");
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t sa = source_points.front().size();
    const std::size_t ta = static_cast<std::size_t>(target_dim + 1);
    std::vector<double> src, img(source_points.size() * ta);
    src.reserve(source_points.size() * sa);
    for (std::size_t i = 0; i < source_points.size(); ++i) {
        if (source_points[i].size() != sa) throw std::invalid_argument("net points of mixed dimension");
        src.insert(src.end(), source_points[i].begin(), source_points[i].end());
        f(source_points[i].data(), &img[i * ta]);
        double n2 = 0.0;
        for (std::size_t d = 0; d < ta; ++d) n2 += img[i * ta + d] * img[i * ta + d];
        if (!(std::abs(n2 - 1.0) < 1e-9)) throw std::domain_error("map produced a non-unit image");
    }
    DualTree tree(src, sa, img, ta, flavor, opts);
    tree.run();
    DistortionCertificate c;
    c.construction_id = id;
    c.method = "net";
    c.flavor = flavor;
    c.net_mesh = mesh;
    c.lower_estimate = tree.L_;
    const double cap = flavor == Flavor::Geodesic ? M_PI : 2.0;
    c.upper_bound = std::min(cap, std::max(tree.L_, tree.pruned_) + 2 * mesh);
    c.upper_bound = std::max(c.upper_bound, c.lower_estimate);
    c.padding = c.upper_bound - c.lower_estimate;
    c.witness.x = source_points[tree.wi_];
    c.witness.x2 = source_points[tree.wj_];
    c.witness.y.assign(&img[tree.wi_ * ta], &img[tree.wi_ * ta] + ta);
    c.witness.y2.assign(&img[tree.wj_ * ta], &img[tree.wj_ * ta] + ta);
    c.witness.term = "graph";
    c.attaining_term = "graph";
    c.terms.push_back({"graph", c.lower_estimate, c.upper_bound});
    c.complete = tree.complete_;
    c.pairs_examined = tree.pairs_;
    c.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

DistortionCertificate certify_map_distortion(const PiecewiseMap& f, const NetSpec& source_net, Flavor flavor,
                                             const MapCertifyOptions& opts) {
    if (source_net.dim != f.source_dim()) throw std::invalid_argument("net dimension does not match map source");
    std::vector<std::vector<double>> pts;
    pts.reserve(source_net.points.size());
    for (const auto& p : source_net.points) pts.push_back(p.coords());
    return certify_map_distortion(
        f.id(), f.target_dim(), [&f](const double* x, double* out) { f.apply(x, out); }, pts, source_net.mesh,
        flavor, opts);
}

double modulus_of_discontinuity_lower(const std::function<void(const double*, double*)>& f, int target_dim,
                                      const NetSpec& net, Flavor flavor) {
    if (net.adjacency.size() != net.points.size()) throw std::invalid_argument("net has no adjacency");
    const std::size_t ta = static_cast<std::size_t>(target_dim + 1);
    std::vector<double> img(net.points.size() * ta);
    for (std::size_t i = 0; i < net.points.size(); ++i) f(net.points[i].data(), &img[i * ta]);
    double best = 0.0;
    std::vector<std::uint32_t> star;
    for (std::size_t v = 0; v < net.points.size(); ++v) {
        star.assign(net.adjacency[v].begin(), net.adjacency[v].end());
        star.push_back(static_cast<std::uint32_t>(v));
        for (std::size_t a = 0; a < star.size(); ++a)
            for (std::size_t b = a + 1; b < star.size(); ++b)
                best = std::max(best, metric_raw(flavor, &img[star[a] * ta], &img[star[b] * ta], ta));
    }
    return best;
}

double coverage_radius(const std::vector<std::vector<double>>& points, int dim, double probe_mesh,
                       double search_radius) {
    if (points.empty()) return M_PI;
    NetSpec probe = build_net(dim, probe_mesh);
    PointHash hash(points, chord_from_angle(search_radius));
    double worst = 0.0;
    for (const auto& q : probe.points) {
        const double c = hash.nearest(q.data());
        const double a = std::isfinite(c) ? angle_from_chord(c) : M_PI;
        worst = std::max(worst, a);
    }
    return std::min(M_PI, worst + probe.mesh);
}

}  // namespace sgh
