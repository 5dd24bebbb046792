#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "cellkit.hpp"
#include "spheregh/distortion.hpp"

namespace sgh {

using detail::Box;
using detail::BoxStore;
using detail::kMaxAmb;

namespace {

struct PairNode {
    double ub;
    std::int32_t a, b;
};

struct ByUb {
    bool operator()(const PairNode& p, const PairNode& q) const { return p.ub < q.ub; }
};

double to_metric(Flavor f, double angle) {
    angle = std::clamp(angle, 0.0, M_PI);
    return f == Flavor::Geodesic ? angle : chord_from_angle(angle);
}

class BlockEngine {
public:
    BlockEngine(const BlockCorrespondence& R, const BlockCertifyOptions& o)
        : R_(R), opts_(o), rng_(o.seed) {
        if (R.pieces.empty()) throw std::invalid_argument("correspondence has no pieces");
        if (R.x_dim + 1 > kMaxAmb || R.y_dim + 1 > kMaxAmb)
            throw std::invalid_argument("sphere dimension too large for the engine");
        tau_ = o.tolerance > 0 ? o.tolerance : o.mesh;
        floor_ = o.min_radius > 0 ? o.min_radius : o.mesh / 64;
        const std::size_t P = R.pieces.size();
        term_of_.assign(P * P, 0);
        for (std::size_t a = 0; a < P; ++a) {
            for (std::size_t b = 0; b < P; ++b) {
                const std::string t = R.term_of(a, b);
                auto it = std::find(terms_.begin(), terms_.end(), t);
                if (it == terms_.end()) {
                    terms_.push_back(t);
                    it = terms_.end() - 1;
                }
                term_of_[a * P + b] = static_cast<int>(it - terms_.begin());
            }
        }
        term_lower_.assign(terms_.size(), 0.0);
        term_upper_.assign(terms_.size(), 0.0);
        isometric_.resize(P);
        for (std::size_t a = 0; a < P; ++a)
            isometric_[a] = R.pieces[a].x.kind == Embedding::Kind::Inclusion &&
                            R.pieces[a].y.kind == Embedding::Kind::Inclusion;
    }

    DistortionCertificate run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t P = R_.pieces.size();
        std::vector<std::vector<std::int32_t>> roots(P);
        for (std::size_t p = 0; p < P; ++p) store_.roots(static_cast<int>(p), R_.pieces[p].region, roots[p]);
        std::vector<std::pair<int, int>> pairs = R_.representative_pairs;
        if (pairs.empty())
            for (std::size_t a = 0; a < P; ++a)
                for (std::size_t b = a; b < P; ++b) pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        for (const auto& [pa, pb] : pairs) {
            const auto& ra = roots.at(pa);
            const auto& rb = roots.at(pb);
            for (std::size_t i = 0; i < ra.size(); ++i)
                for (std::size_t j = pa == pb ? i : 0; j < rb.size(); ++j) consider(ra[i], rb[j], 1e300);
        }
        polish(400);
        std::uint64_t pops = 0;
        bool complete = true;
        while (!heap_.empty()) {
            const PairNode top = heap_.front();
            if (top.ub <= L_ + tau_) break;
            if (pairs_ >= opts_.max_pairs) {
                complete = false;
                break;
            }
            if ((pops & 4095u) == 0) {
                const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (el > opts_.max_seconds) {
                    complete = false;
                    break;
                }
            }
            if (pops % 50000 == 49999) polish(200);
            ++pops;
            std::pop_heap(heap_.begin(), heap_.end(), ByUb());
            heap_.pop_back();
            if (heap_.size() < kHeapCap) {
                refine(top);
                continue;
            }
            // Past the cap the subtree is finished depth-first against the incumbent.
            depth_first_ = true;
            stack_.push_back(top);
            while (!stack_.empty()) {
                const PairNode p = stack_.back();
                stack_.pop_back();
                if ((++pops & 4095u) == 0) {
                    if (pops % 200000 < 4096) polish(200);
                    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    if (el > opts_.max_seconds || pairs_ >= opts_.max_pairs) {
                        complete = false;
                        for (const auto& q : stack_) heap_.push_back(q);
                        heap_.push_back(p);
                        stack_.clear();
                        break;
                    }
                }
                if (p.ub <= L_ + tau_) {
                    settle(p.a, p.b, p.ub);
                    continue;
                }
                refine(p);
            }
            depth_first_ = false;
            if (!complete) break;
        }
        polish(1500);
        double upper = std::max(L_, settled_);
        for (const auto& p : heap_) {
            upper = std::max(upper, p.ub);
            bump_upper(p.a, p.b, p.ub);
        }
        DistortionCertificate c;
        c.construction_id = R_.id;
        c.method = "adaptive";
        c.flavor = R_.flavor;
        c.net_mesh = opts_.mesh;
        c.lower_estimate = L_;
        c.upper_bound = upper;
        c.padding = upper - L_;
        c.witness = witness_;
        c.attaining_term = witness_.term;
        for (std::size_t t = 0; t < terms_.size(); ++t)
            c.terms.push_back({terms_[t], term_lower_[t], std::max(term_upper_[t], term_lower_[t])});
        c.complete = complete;
        c.pairs_examined = pairs_;
        c.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return c;
    }

private:
    const BlockCorrespondence& R_;
    BlockCertifyOptions opts_;
    std::mt19937_64 rng_;
    BoxStore store_;
    std::vector<PairNode> heap_;
    std::vector<PairNode> stack_;
    bool depth_first_ = false;
    static constexpr std::size_t kHeapCap = 2'000'000;
    std::vector<std::string> terms_;
    std::vector<int> term_of_;
    std::vector<double> term_lower_, term_upper_;
    std::vector<char> isometric_;
    double tau_ = 0.0, floor_ = 0.0;
    double L_ = 0.0;
    double settled_ = 0.0;
    std::uint64_t pairs_ = 0;
    Witness witness_;
    int wpa_ = -1, wpb_ = -1;
    std::vector<double> wsa_, wsb_;

    int term(int pa, int pb) const { return term_of_[static_cast<std::size_t>(pa) * R_.pieces.size() + pb]; }

    void bump_upper(std::int32_t a, std::int32_t b, double ub) {
        const int t = term(store_.boxes[a].owner, store_.boxes[b].owner);
        term_upper_[t] = std::max(term_upper_[t], ub);
    }

    void settle(std::int32_t a, std::int32_t b, double ub) {
        settled_ = std::max(settled_, ub);
        bump_upper(a, b, ub);
    }

    double bound(std::int32_t ia, std::int32_t ib) const {
        const Box& a = store_.boxes[ia];
        const Box& b = store_.boxes[ib];
        const auto& pa = R_.pieces[a.owner];
        const auto& pb = R_.pieces[b.owner];
        if (isometric_[a.owner] && isometric_[b.owner]) return 0.0;
        double xa[kMaxAmb], xb[kMaxAmb], ya[kMaxAmb], yb[kMaxAmb];
        pa.x.apply(a.c, a.k, xa);
        pb.x.apply(b.c, b.k, xb);
        pa.y.apply(a.c, a.k, ya);
        pb.y.apply(b.c, b.k, yb);
        const double dx = geodesic_raw(xa, xb, R_.x_dim + 1);
        const double dy = geodesic_raw(ya, yb, R_.y_dim + 1);
        const double rx = pa.x.lipschitz() * a.r + pb.x.lipschitz() * b.r;
        const double ry = pa.y.lipschitz() * a.r + pb.y.lipschitz() * b.r;
        const Flavor f = R_.flavor;
        const double x_lo = to_metric(f, dx - rx), x_hi = to_metric(f, dx + rx);
        const double y_lo = to_metric(f, dy - ry), y_hi = to_metric(f, dy + ry);
        return std::max(x_hi - y_lo, y_hi - x_lo);
    }

    double value(int pa, const double* sa, int ka, int pb, const double* sb, int kb) const {
        double xa[kMaxAmb], xb[kMaxAmb], ya[kMaxAmb], yb[kMaxAmb];
        R_.pieces[pa].x.apply(sa, ka, xa);
        R_.pieces[pb].x.apply(sb, kb, xb);
        R_.pieces[pa].y.apply(sa, ka, ya);
        R_.pieces[pb].y.apply(sb, kb, yb);
        const double dX = metric_raw(R_.flavor, xa, xb, R_.x_dim + 1);
        const double dY = metric_raw(R_.flavor, ya, yb, R_.y_dim + 1);
        return std::abs(dX - dY);
    }

    void record(int pa, const double* sa, int ka, int pb, const double* sb, int kb, double v) {
        const int t = term(pa, pb);
        term_lower_[t] = std::max(term_lower_[t], v);
        if (v <= L_) return;
        L_ = v;
        wpa_ = pa;
        wpb_ = pb;
        wsa_.assign(sa, sa + ka + 1);
        wsb_.assign(sb, sb + kb + 1);
        witness_.x.assign(R_.x_dim + 1, 0.0);
        witness_.x2.assign(R_.x_dim + 1, 0.0);
        witness_.y.assign(R_.y_dim + 1, 0.0);
        witness_.y2.assign(R_.y_dim + 1, 0.0);
        R_.pieces[pa].x.apply(sa, ka, witness_.x.data());
        R_.pieces[pb].x.apply(sb, kb, witness_.x2.data());
        R_.pieces[pa].y.apply(sa, ka, witness_.y.data());
        R_.pieces[pb].y.apply(sb, kb, witness_.y2.data());
        witness_.term = terms_[t];
    }

    void consider(std::int32_t a, std::int32_t b, double parent_ub) {
        if (a < 0 || b < 0) return;
        ++pairs_;
        const Box& A = store_.boxes[a];
        const Box& B = store_.boxes[b];
        if (A.has_sample && B.has_sample) {
            const double v = value(A.owner, A.s, A.k, B.owner, B.s, B.k);
            record(A.owner, A.s, A.k, B.owner, B.s, B.k, v);
        }
        const double ub = std::min(parent_ub, bound(a, b));
        if (ub <= L_ + tau_) {
            settle(a, b, ub);
            return;
        }
        if (depth_first_) {
            stack_.push_back({ub, a, b});
            return;
        }
        heap_.push_back({ub, a, b});
        std::push_heap(heap_.begin(), heap_.end(), ByUb());
    }

    void refine(const PairNode& p) {
        const Box& A = store_.boxes[p.a];
        const Box& B = store_.boxes[p.b];
        const bool sa = A.k > 0 && A.r > floor_;
        const bool sb = B.k > 0 && B.r > floor_;
        if (!sa && !sb) {
            settle(p.a, p.b, p.ub);
            return;
        }
        if (p.a == p.b) {
            store_.split(p.a, R_.pieces[A.owner].region);
            const std::int32_t c0 = store_.boxes[p.a].child[0], c1 = store_.boxes[p.a].child[1];
            consider(c0, c0, p.ub);
            consider(c0, c1, p.ub);
            consider(c1, c1, p.ub);
            return;
        }
        const bool split_a = sa && (!sb || A.r >= B.r);
        const std::int32_t s = split_a ? p.a : p.b;
        const std::int32_t o = split_a ? p.b : p.a;
        store_.split(s, R_.pieces[store_.boxes[s].owner].region);
        const std::int32_t c0 = store_.boxes[s].child[0], c1 = store_.boxes[s].child[1];
        consider(c0, o, p.ub);
        consider(c1, o, p.ub);
    }

    void perturb(const std::vector<double>& base, int k, double step, std::vector<double>& out) {
        std::normal_distribution<double> g(0.0, 1.0);
        out.resize(base.size());
        double n2 = 0.0;
        for (int i = 0; i <= k; ++i) {
            out[i] = base[i] + step * g(rng_);
            n2 += out[i] * out[i];
        }
        for (int i = 0; i <= k; ++i) out[i] /= std::sqrt(n2);
    }

    void polish(int iterations) {
        if (wpa_ < 0) return;
        const int ka = R_.pieces[wpa_].region.dim, kb = R_.pieces[wpb_].region.dim;
        std::vector<double> a = wsa_, b = wsb_, ta, tb;
        double best = L_;
        double step = 0.05;
        for (int it = 0; it < iterations; ++it) {
            ta = a;
            tb = b;
            if (ka > 0) perturb(a, ka, step, ta);
            if (kb > 0 && (it % 3 != 0 || ka == 0)) perturb(b, kb, step, tb);
            if (!R_.pieces[wpa_].region.contains(ta.data()) || !R_.pieces[wpb_].region.contains(tb.data())) {
                step = std::max(step * 0.98, 1e-9);
                continue;
            }
            const double v = value(wpa_, ta.data(), ka, wpb_, tb.data(), kb);
            if (v > best) {
                best = v;
                a = ta;
                b = tb;
                step *= 1.5;
            } else {
                step = std::max(step * 0.98, 1e-9);
            }
        }
        if (best > L_) record(wpa_, a.data(), ka, wpb_, b.data(), kb, best);
    }
};

}  // namespace

DistortionCertificate certify_block_distortion(const BlockCorrespondence& R, const BlockCertifyOptions& opts) {
    if (!(opts.mesh > 0)) throw std::invalid_argument("mesh must be positive");
    BlockEngine e(R, opts);
    return e.run();
}

namespace {

struct Side {
    std::vector<SphereRegion> regions;
    std::vector<double> point;
};

DistanceBounds extremal(const Side& A, const Side& B, bool maximize, Flavor flavor, double tol) {
    if (B.regions.empty()) throw std::invalid_argument("empty region list");
    const int n = B.regions.front().dim;
    BoxStore store;
    std::vector<std::int32_t> ra, rb;
    for (std::size_t i = 0; i < A.regions.size(); ++i) store.roots(static_cast<int>(i), A.regions[i], ra);
    const std::int32_t b_offset = static_cast<std::int32_t>(A.regions.size());
    for (std::size_t i = 0; i < B.regions.size(); ++i)
        store.roots(b_offset + static_cast<int>(i), B.regions[i], rb);
    auto region_of = [&](std::int32_t owner) -> const SphereRegion& {
        return owner < b_offset ? A.regions[owner] : B.regions[owner - b_offset];
    };
    const bool point_mode = A.regions.empty();
    constexpr std::int32_t kPoint = -2;
    if (point_mode) ra.push_back(kPoint);
    auto center = [&](std::int32_t id) { return id == kPoint ? A.point.data() : store.boxes[id].c; };
    auto radius = [&](std::int32_t id) { return id == kPoint ? 0.0 : store.boxes[id].r; };
    auto sample = [&](std::int32_t id) -> const double* {
        if (id == kPoint) return A.point.data();
        return store.boxes[id].has_sample ? store.boxes[id].s : nullptr;
    };
    // Optimize -sign * distance uniformly as a maximization.
    const double sign = maximize ? 1.0 : -1.0;
    double best = -1e300;
    std::vector<PairNode> heap;
    auto consider = [&](std::int32_t a, std::int32_t b) {
        if (b < 0 || a == -1) return;
        const double* sa = sample(a);
        const double* sb = sample(b);
        if (sa && sb) best = std::max(best, sign * metric_raw(flavor, sa, sb, n + 1));
        const double d = geodesic_raw(center(a), center(b), n + 1);
        const double r = radius(a) + radius(b);
        const double ub = maximize ? to_metric(flavor, d + r) : -to_metric(flavor, d - r);
        if (ub > best + tol) {
            heap.push_back({ub, a, b});
            std::push_heap(heap.begin(), heap.end(), ByUb());
        }
    };
    for (auto a : ra)
        for (auto b : rb) consider(a, b);
    double settled = -1e300;
    std::size_t iterations = 0;
    while (!heap.empty()) {
        const PairNode top = heap.front();
        if (top.ub <= best + tol) break;
        std::pop_heap(heap.begin(), heap.end(), ByUb());
        heap.pop_back();
        if (++iterations > 20'000'000) {
            settled = std::max(settled, top.ub);
            break;
        }
        const double rA = radius(top.a), rB = radius(top.b);
        const bool sa = top.a != kPoint && rA > 1e-12;
        const bool sb = rB > 1e-12;
        if (!sa && !sb) {
            settled = std::max(settled, top.ub);
            continue;
        }
        const bool split_a = sa && (!sb || rA >= rB);
        const std::int32_t s = split_a ? top.a : top.b;
        store.split(s, region_of(store.boxes[s].owner));
        const std::int32_t c0 = store.boxes[s].child[0], c1 = store.boxes[s].child[1];
        if (split_a) {
            consider(c0, top.b);
            consider(c1, top.b);
        } else {
            consider(top.a, c0);
            consider(top.a, c1);
        }
    }
    double top_ub = best;
    for (const auto& p : heap) top_ub = std::max(top_ub, p.ub);
    top_ub = std::max(top_ub, settled);
    DistanceBounds r;
    if (maximize) {
        r.lower = best;
        r.upper = top_ub;
    } else {
        r.lower = -top_ub;
        r.upper = -best;
    }
    return r;
}

}  // namespace

DistanceBounds extremal_distance(const std::vector<SphereRegion>& A, const std::vector<SphereRegion>& B,
                                 bool maximize, Flavor flavor, double tol) {
    if (A.empty()) throw std::invalid_argument("empty region list");
    return extremal({A, {}}, {B, {}}, maximize, flavor, tol);
}

DistanceBounds point_region_distance(const std::vector<double>& p, const std::vector<SphereRegion>& B,
                                     bool maximize, Flavor flavor, double tol) {
    return extremal({{}, p}, {B, {}}, maximize, flavor, tol);
}

}  // namespace sgh
