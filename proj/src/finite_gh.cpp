#include "spheregh/finite_gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace sgh {

std::string GHResult::to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["exact"] = exact;
    j["witness_phi"] = phi;
    j["witness_psi"] = psi;
    j["nodes_explored"] = nodes_explored;
    return j.dump(2);
}

namespace {

struct Objective {
    double worst = 0.0;
    int ties = 0;  // pairs within 1e-12 of worst
    double spread = 0.0;
    bool operator<(const Objective& o) const {
        if (worst < o.worst - 1e-12) return true;
        if (worst > o.worst + 1e-12) return false;
        if (ties != o.ties) return ties < o.ties;
        return spread < o.spread - 1e-14;
    }
};

Objective evaluate(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const std::vector<std::size_t>& phi,
                   const std::vector<std::size_t>& psi) {
    Objective o;
    const auto take = [&o](double v) {
        v = std::abs(v);
        if (v > o.worst + 1e-12) {
            o.worst = v;
            o.ties = 1;
        } else if (v >= o.worst - 1e-12) {
            ++o.ties;
        }
        const double v2 = v * v, v4 = v2 * v2;
        o.spread += v4 * v4;
    };
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) take(X(i, j) - Y(phi[i], phi[j]));
    for (std::size_t i = 0; i < Y.size(); ++i)
        for (std::size_t j = i + 1; j < Y.size(); ++j) take(Y(i, j) - X(psi[i], psi[j]));
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t y = 0; y < Y.size(); ++y) take(X(x, psi[y]) - Y(phi[x], y));
    return o;
}

class Exhaustive {
public:
    Exhaustive(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double incumbent,
               std::vector<std::size_t> phi, std::vector<std::size_t> psi)
        : X_(X), Y_(Y), best_(incumbent), best_phi_(std::move(phi)), best_psi_(std::move(psi)) {
        phi_.assign(X.size(), 0);
        psi_.assign(Y.size(), 0);
    }

    void run() { assign_phi(0, 0.0); }

private:
    const FiniteMetricSpace& X_;
    const FiniteMetricSpace& Y_;

public:
    double best_;
    std::vector<std::size_t> best_phi_, best_psi_;
    std::uint64_t nodes_ = 0;

private:
    std::vector<std::size_t> phi_, psi_;

    void assign_phi(std::size_t k, double cur) {
        if (k == X_.size()) {
            assign_psi(0, cur);
            return;
        }
        std::vector<std::pair<double, std::size_t>> cand;
        for (std::size_t y = 0; y < Y_.size(); ++y) {
            double inc = cur;
            for (std::size_t i = 0; i < k && inc < best_; ++i)
                inc = std::max(inc, std::abs(X_(i, k) - Y_(phi_[i], y)));
            if (inc < best_ - 1e-12) cand.emplace_back(inc, y);
        }
        std::sort(cand.begin(), cand.end());
        for (const auto& [inc, y] : cand) {
            if (inc >= best_ - 1e-12) break;
            ++nodes_;
            phi_[k] = y;
            assign_phi(k + 1, inc);
        }
    }

    void assign_psi(std::size_t k, double cur) {
        if (k == Y_.size()) {
            best_ = cur;
            best_phi_ = phi_;
            best_psi_ = psi_;
            return;
        }
        std::vector<std::pair<double, std::size_t>> cand;
        for (std::size_t x = 0; x < X_.size(); ++x) {
            double inc = cur;
            for (std::size_t j = 0; j < k && inc < best_; ++j)
                inc = std::max(inc, std::abs(Y_(j, k) - X_(psi_[j], x)));
            for (std::size_t xp = 0; xp < X_.size() && inc < best_; ++xp)
                inc = std::max(inc, std::abs(X_(xp, x) - Y_(phi_[xp], k)));
            if (inc < best_ - 1e-12) cand.emplace_back(inc, x);
        }
        std::sort(cand.begin(), cand.end());
        for (const auto& [inc, x] : cand) {
            if (inc >= best_ - 1e-12) break;
            ++nodes_;
            psi_[k] = x;
            assign_psi(k + 1, inc);
        }
    }
};

}  // namespace

bool gh_exact_feasible(std::size_t nx, std::size_t ny, double guard) {
    const double logc = static_cast<double>(nx) * std::log(static_cast<double>(ny)) +
                        static_cast<double>(ny) * std::log(static_cast<double>(nx));
    return logc <= std::log(guard) + 1e-12;
}

GHResult gh_exact_small(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double guard) {
    if (X.size() == 0 || Y.size() == 0) throw std::invalid_argument("metric spaces must be non-empty");
    if (!gh_exact_feasible(X.size(), Y.size(), guard))
        throw std::length_error("search space exceeds the exhaustive guard; use gh_heuristic");
    const GHResult seed = gh_heuristic(X, Y, 8, 1);
    Exhaustive e(X, Y, 2 * seed.value, seed.phi, seed.psi);
    e.run();
    GHResult r;
    r.value = 0.5 * e.best_;
    r.exact = true;
    r.phi = e.best_phi_;
    r.psi = e.best_psi_;
    r.nodes_explored = e.nodes_ + seed.nodes_explored;
    return r;
}

GHResult gh_heuristic(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, int restarts, std::uint64_t seed) {
    if (X.size() == 0 || Y.size() == 0) throw std::invalid_argument("metric spaces must be non-empty");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> px(0, X.size() - 1), py(0, Y.size() - 1);
    std::uniform_int_distribution<std::size_t> side(0, X.size() + Y.size() - 1);
    GHResult best;
    Objective best_obj{1e300, 0, 1e300};

    // First-improvement coordinate descent over single reassignments.
    const auto descend = [&](std::vector<std::size_t>& phi, std::vector<std::size_t>& psi, Objective cur) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t x = 0; x < X.size(); ++x)
                for (std::size_t y = 0; y < Y.size(); ++y) {
                    if (y == phi[x]) continue;
                    const std::size_t old = phi[x];
                    phi[x] = y;
                    ++best.nodes_explored;
                    const Objective o = evaluate(X, Y, phi, psi);
                    if (o < cur) cur = o, improved = true;
                    else phi[x] = old;
                }
            for (std::size_t y = 0; y < Y.size(); ++y)
                for (std::size_t x = 0; x < X.size(); ++x) {
                    if (x == psi[y]) continue;
                    const std::size_t old = psi[y];
                    psi[y] = x;
                    ++best.nodes_explored;
                    const Objective o = evaluate(X, Y, phi, psi);
                    if (o < cur) cur = o, improved = true;
                    else psi[y] = old;
                }
        }
        return cur;
    };

    constexpr int kKicks = 16;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        std::vector<std::size_t> phi(X.size()), psi(Y.size());
        for (auto& v : phi) v = py(rng);
        for (auto& v : psi) v = px(rng);
        Objective cur = descend(phi, psi, evaluate(X, Y, phi, psi));
        for (int k = 0; k < kKicks; ++k) {
            auto p2 = phi, q2 = psi;
            for (int t = 0; t < 2; ++t) {
                const std::size_t i = side(rng);
                if (i < X.size()) p2[i] = py(rng);
                else q2[i - X.size()] = px(rng);
            }
            const Objective o = descend(p2, q2, evaluate(X, Y, p2, q2));
            if (o < cur) cur = o, phi = std::move(p2), psi = std::move(q2);
        }
        if (cur < best_obj) {
            best_obj = cur;
            best.phi = phi;
            best.psi = psi;
        }
    }
    best.value = 0.5 * best_obj.worst;
    best.exact = false;
    return best;
}

double gh_lower_diam(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
    return 0.5 * std::abs(X.diameter() - Y.diameter());
}

UltrametricQuotient ultrametric_quotient(const FiniteMetricSpace& X, double merge_tolerance) {
    const std::size_t n = X.size();
    if (n == 0) throw std::invalid_argument("metric space must be non-empty");
    // Prim's algorithm on the dense distance matrix.
    struct Edge {
        double w;
        std::size_t a, b;
    };
    std::vector<Edge> mst;
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n, 0);
    std::vector<bool> in(n, false);
    key[0] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t v = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i] && (v == n || key[i] < key[v])) v = i;
        in[v] = true;
        if (it > 0) mst.push_back({key[v], from[v], v});
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i] && X(v, i) < key[i]) {
                key[i] = X(v, i);
                from[i] = v;
            }
    }
    std::sort(mst.begin(), mst.end(), [](const Edge& p, const Edge& q) { return p.w < q.w; });
    std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<std::size_t>> members(n);
    std::vector<std::size_t> comp(n);
    for (std::size_t i = 0; i < n; ++i) {
        comp[i] = i;
        members[i] = {i};
    }
    std::vector<std::size_t> class_of(n);
    std::iota(class_of.begin(), class_of.end(), 0);
    for (const auto& e : mst) {
        std::size_t ca = comp[e.a], cb = comp[e.b];
        if (members[ca].size() < members[cb].size()) std::swap(ca, cb);
        for (std::size_t p : members[ca])
            for (std::size_t q : members[cb]) u[p][q] = u[q][p] = e.w;
        for (std::size_t q : members[cb]) {
            comp[q] = ca;
            members[ca].push_back(q);
        }
        members[cb].clear();
        if (e.w < merge_tolerance)
            for (std::size_t q = 0; q < n; ++q) class_of[q] = comp[q];
    }
    // class_of holds the component roots as of the last merge below tolerance.
    std::vector<std::size_t> reps;
    std::vector<std::size_t> index(n, n);
    UltrametricQuotient Q;
    Q.merge_tolerance = merge_tolerance;
    Q.class_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = class_of[i];
        if (index[root] == n) {
            index[root] = reps.size();
            reps.push_back(i);
        }
        Q.class_of[i] = index[root];
    }
    std::vector<std::vector<double>> d(reps.size(), std::vector<double>(reps.size(), 0.0));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < reps.size(); ++a) {
        labels.push_back(X.labels()[reps[a]]);
        for (std::size_t b = 0; b < reps.size(); ++b) d[a][b] = a == b ? 0.0 : u[reps[a]][reps[b]];
    }
    Q.space = FiniteMetricSpace(std::move(labels), std::move(d));
    return Q;
}

double gh_lower_via_quotient(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double merge_tolerance) {
    const auto QX = ultrametric_quotient(X, merge_tolerance);
    const auto QY = ultrametric_quotient(Y, merge_tolerance);
    double v;
    if (gh_exact_feasible(QX.space.size(), QY.space.size()))
        v = gh_exact_small(QX.space, QY.space).value;
    else
        v = gh_lower_diam(QX.space, QY.space);
    return std::max(0.0, v - merge_tolerance);
}

FiniteMetricSpace polygon_space(int n, Flavor flavor) {
    if (n < 1) throw std::invalid_argument("polygon needs at least one vertex");
    std::vector<SpherePoint> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * M_PI * i / n;
        pts.push_back(SpherePoint::normalized({std::cos(t), std::sin(t)}));
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        labels.push_back("v" + std::to_string(i + 1));
        for (int j = 0; j < n; ++j) {
            const int k = std::min(std::abs(i - j), n - std::abs(i - j));
            const double g = 2 * M_PI * k / n;
            d[i][j] = flavor == Flavor::Geodesic ? g : 2 * std::sin(g / 2);
        }
    }
    return FiniteMetricSpace(std::move(labels), std::move(d));
}

PolygonGH polygon_gh(int m, int n, Flavor flavor) {
    if ((m != kCircle && m < 2) || (n != kCircle && n < 2))
        throw std::invalid_argument("polygons need at least two vertices");
    const bool geo = flavor == Flavor::Geodesic;
    if (m == n) return {0.0, true, "closed-form"};
    if (m == kCircle || n == kCircle) {
        const int k = m == kCircle ? n : m;
        return {geo ? M_PI / k : std::sin(M_PI / k), true, "closed-form"};
    }
    const int a = std::min(m, n), b = std::max(m, n);
    if (geo && b == a + 1) return {M_PI / b, true, "closed-form"};
    if (geo && a == 2) {
        if (b == 4) return {M_PI / 4, true, "closed-form"};
        if (b == 5) return {2 * M_PI / 5, true, "closed-form"};
        if (b == 6) return {M_PI / 3, true, "closed-form"};
    }
    const auto X = polygon_space(a, flavor), Y = polygon_space(b, flavor);
    if (gh_exact_feasible(a, b)) return {gh_exact_small(X, Y).value, false, "exhaustive"};
    return {gh_heuristic(X, Y).value, false, "heuristic"};
}

}  // namespace sgh
