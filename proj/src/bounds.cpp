#include "spheregh/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spheregh/nets.hpp"

namespace sgh {

std::string to_string(LowerProvenance p) {
    switch (p) {
        case LowerProvenance::Colding: return "Colding";
        case LowerProvenance::CoveringRadius: return "CoveringRadius";
        case LowerProvenance::SimplexZeta: return "SimplexZeta";
        case LowerProvenance::DiamDifference: return "DiamDifference";
        case LowerProvenance::Combined: return "Combined";
        case LowerProvenance::EuclideanBU: return "EuclideanBU";
        case LowerProvenance::Exact: return "Exact";
    }
    return "?";
}

std::string to_string(UpperProvenance p) {
    switch (p) {
        case UpperProvenance::HalfMaxDiam: return "HalfMaxDiam";
        case UpperProvenance::EtaConstruction: return "EtaConstruction";
        case UpperProvenance::CertifiedCorrespondence: return "CertifiedCorrespondence";
        case UpperProvenance::Exact: return "Exact";
    }
    return "?";
}

std::string to_string(Exactness e) { return e == Exactness::Exact ? "Exact" : "UpperBound"; }

namespace {

constexpr double kQuadTol = 1e-10;

double log_volume_constant(int m) {
    return std::lgamma((m + 1) / 2.0) - 0.5 * std::log(M_PI) - std::lgamma(m / 2.0);
}

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

void require_pair(int m, int n, const char* what) {
    if (m < 1 || m >= n) throw std::invalid_argument(std::string(what) + " requires 1 <= m < n");
}

}  // namespace

double normalized_ball_volume(int m, double rho) {
    if (m < 1) throw std::invalid_argument("ball volume requires m >= 1");
    if (!(rho >= 0.0 && rho <= M_PI)) throw std::invalid_argument("radius must lie in [0, pi]");
    if (rho == 0.0) return 0.0;
    if (rho == M_PI) return 1.0;
    const double c = std::exp(log_volume_constant(m));
    auto f = [m](double t) { return std::pow(std::sin(t), m - 1); };
    const double v = c * adaptive_simpson(f, 0.0, rho, kQuadTol / std::max(1.0, c));
    return std::clamp(v, 0.0, 1.0);
}

double invert_volume(int n, double t) {
    if (n < 1) throw std::invalid_argument("volume inversion requires n >= 1");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("volume fraction must lie in [0, 1]");
    if (t == 0.0) return 0.0;
    if (t == 1.0) return M_PI;
    double lo = 0.0, hi = M_PI;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = normalized_ball_volume(n, mid);
        if (std::abs(v - t) <= 1e-13) return mid;
        (v < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ColdingResult colding_bound(int m, int n) {
    require_pair(m, n, "Colding bound");
    auto f = [m, n](double rho) { return invert_volume(n, normalized_ball_volume(m, 0.5 * rho)) - rho; };
    constexpr int kGrid = 2048;
    const double h = M_PI / kGrid;
    int best = 1;
    double best_val = f(h);
    for (int i = 2; i <= kGrid; ++i) {
        const double v = f(i * h);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = std::max(1e-12, (best - 1) * h), b = std::min(M_PI, (best + 1) * h);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    ColdingResult r;
    r.best_rho = f1 >= f2 ? x1 : x2;
    r.inner_sup = std::max({f1, f2, best_val});
    if (best_val > std::max(f1, f2)) r.best_rho = best * h;
    const double out = r.inner_sup + r.best_rho;
    const double deriv = std::exp(log_volume_constant(n)) * std::pow(std::sin(out), n - 1);
    r.error_budget = 2 * kQuadTol / std::max(deriv, 1e-6) + 1e-12;
    r.value = 0.5 * (r.inner_sup - r.error_budget);
    return r;
}

double colding_lower_bound(int m, int n) { return colding_bound(m, n).value; }

namespace {

double net_covering_bound(int m, int k) {
    double delta = 0.5;
    NetSpec grid = build_net(m, delta);
    while (true) {
        NetSpec finer = build_net(m, delta * 0.8);
        if (finer.points.size() > 20000) break;
        delta *= 0.8;
        grid = std::move(finer);
    }
    const std::size_t N = grid.points.size();
    const std::size_t A = static_cast<std::size_t>(m + 1);
    std::vector<std::vector<double>> centers;
    std::vector<double> mind(N, 1e9);
    std::size_t next = 0;
    for (int c = 0; c < k; ++c) {
        centers.push_back(grid.points[next].coords());
        double far = -1;
        for (std::size_t i = 0; i < N; ++i) {
            mind[i] = std::min(mind[i], geodesic_raw(grid.points[i].data(), centers.back().data(), A));
            if (mind[i] > far) {
                far = mind[i];
                next = i;
            }
        }
    }
    std::vector<int> owner(N);
    auto evaluate = [&]() {
        double worst = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double best = 1e9;
            for (int c = 0; c < k; ++c) {
                const double d = geodesic_raw(grid.points[i].data(), centers[c].data(), A);
                if (d < best) {
                    best = d;
                    owner[i] = c;
                }
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    double best = evaluate();
    for (int it = 1; it <= 60; ++it) {
        // Move each center toward its farthest assigned grid point.
        std::vector<double> far(k, -1.0);
        std::vector<std::size_t> arg(k, 0);
        for (std::size_t i = 0; i < N; ++i) {
            const double d = geodesic_raw(grid.points[i].data(), centers[owner[i]].data(), A);
            if (d > far[owner[i]]) {
                far[owner[i]] = d;
                arg[owner[i]] = i;
            }
        }
        const double step = 1.0 / (it + 1.0);
        for (int c = 0; c < k; ++c) {
            if (far[c] < 0) continue;
            double n2 = 0.0;
            for (std::size_t a = 0; a < A; ++a) {
                centers[c][a] += step * (grid.points[arg[c]][a] - centers[c][a]);
                n2 += centers[c][a] * centers[c][a];
            }
            for (double& v : centers[c]) v /= std::sqrt(n2);
        }
        best = std::min(best, evaluate());
    }
    return best + grid.mesh;
}

}  // namespace

CoveringRadius covering_radius(int m, int k) {
    if (m < 0) throw std::invalid_argument("sphere dimension must be non-negative");
    if (k < 1) throw std::invalid_argument("covering radius requires k >= 1");
    if (k == 1) return {M_PI, Exactness::Exact};
    if (m == 0) return {0.0, Exactness::Exact};
    if (m == 1) return {M_PI / k, Exactness::Exact};
    if (k <= m + 1) return {M_PI / 2, Exactness::Exact};
    if (k == m + 2) return {M_PI - zeta(m), Exactness::Exact};
    static std::mutex mu;
    static std::map<std::pair<int, int>, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, k});
    if (it != cache.end()) return {it->second, Exactness::UpperBound};
    double v = M_PI - zeta(m);
    for (int j = m + 3; j <= k; ++j) {
        auto cj = cache.find({m, j});
        v = std::min(v, cj != cache.end() ? cj->second : net_covering_bound(m, j));
        cache[{m, j}] = v;
    }
    return {v, Exactness::UpperBound};
}

double ls_lower_bound(int m, int n) {
    require_pair(m, n, "covering-radius bound");
    return M_PI / 2 - covering_radius(m, n + 1).value;
}

double zeta(int m) {
    if (m < 0) throw std::invalid_argument("zeta requires m >= 0");
    return std::acos(-1.0 / (m + 1));
}

double eta(int m) {
    if (m < 1) throw std::invalid_argument("eta requires m >= 1");
    if (m % 2 == 1) return std::acos(-static_cast<double>(m + 1) / (m + 3));
    return std::acos(-std::sqrt(static_cast<double>(m) / (m + 4)));
}

double combined_lower_bound(int m, int n) {
    require_pair(m, n, "combined bound");
    return std::max(zeta(m) / 2, ls_lower_bound(m, n));
}

double euclidean_lower_bound(int m) {
    if (m < 1) throw std::invalid_argument("Euclidean bound requires m >= 1");
    return 0.5 * (2.0 - std::sqrt(2.0 - 2.0 / (m + 1)));
}

double euclidean_distortion_transfer(double dis_geodesic) {
    if (!(dis_geodesic >= 0.0 && dis_geodesic <= M_PI)) throw std::invalid_argument("distortion must lie in [0, pi]");
    return 2.0 * std::sin(dis_geodesic / 2);
}

double interval_sphere_lower_bound() { return M_PI / 3; }

namespace {

BoundReport geodesic_cell(int m, int n) {
    BoundReport r;
    r.m = m;
    r.n = n;
    r.flavor = Flavor::Geodesic;
    auto exact = [&](double v) {
        r.lower = r.upper = v;
        r.lower_provenance = LowerProvenance::Exact;
        r.upper_provenance = UpperProvenance::Exact;
        r.exact = true;
    };
    if (m == 0 || n == kInfiniteDim) {
        exact(M_PI / 2);
        return r;
    }
    if (m == 1 && (n == 2 || n == 3)) {
        exact(M_PI / 3);
        return r;
    }
    if (m == 2 && n == 3) {
        exact(zeta(2) / 2);
        return r;
    }
    const double z = zeta(m) / 2;
    const CoveringRadius cov = covering_radius(m, n + 1);
    const double nu = M_PI / 2 - cov.value;
    if (std::abs(nu - z) <= 1e-14) {
        r.lower = std::max(nu, z);
        r.lower_provenance = LowerProvenance::Combined;
    } else if (nu > z) {
        r.lower = nu;
        r.lower_provenance = LowerProvenance::CoveringRadius;
        r.conservative = cov.exactness == Exactness::UpperBound;
    } else {
        r.lower = z;
        r.lower_provenance = LowerProvenance::SimplexZeta;
    }
    if (n == m + 1) {
        r.upper = eta(m) / 2;
        r.upper_provenance = UpperProvenance::EtaConstruction;
    } else {
        r.upper = M_PI / 2;
        r.upper_provenance = UpperProvenance::HalfMaxDiam;
        r.note = "strict inequality holds; no numeric margin";
    }
    return r;
}

BoundReport euclidean_cell(int m, int n) {
    BoundReport g = geodesic_cell(m, n);
    BoundReport r;
    r.m = m;
    r.n = n;
    r.flavor = Flavor::Euclidean;
    if (m == 0 || n == kInfiniteDim) {
        r.lower = r.upper = 1.0;
        r.lower_provenance = LowerProvenance::Exact;
        r.upper_provenance = UpperProvenance::Exact;
        r.exact = true;
        return r;
    }
    r.lower = euclidean_lower_bound(m);
    r.lower_provenance = LowerProvenance::EuclideanBU;
    r.upper = std::sin(g.upper);
    r.upper_provenance =
        g.upper_provenance == UpperProvenance::Exact ? UpperProvenance::CertifiedCorrespondence : g.upper_provenance;
    r.note = g.note;
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

GMatrix assemble_g_matrix(int max_dim, Flavor flavor) {
    if (max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
    GMatrix g;
    g.max_dim = max_dim;
    g.flavor = flavor;
    auto cell = [flavor](int m, int n) { return flavor == Flavor::Geodesic ? geodesic_cell(m, n) : euclidean_cell(m, n); };
    for (int m = 0; m <= max_dim; ++m)
        for (int n = m + 1; n <= max_dim; ++n) g.cells.push_back(cell(m, n));
    for (int m = 0; m <= max_dim; ++m) g.infinity.push_back(cell(m, kInfiniteDim));
    return g;
}

const BoundReport& GMatrix::at(int m, int n) const {
    const auto& list = n == kInfiniteDim ? infinity : cells;
    for (const auto& c : list)
        if (c.m == m && c.n == n) return c;
    throw std::out_of_range("no such cell in the table");
}

std::string GMatrix::to_csv() const {
    std::ostringstream os;
    os << "m,n,flavor,lower,upper,lower_provenance,upper_provenance,exactness\n";
    for (const auto& c : cells) {
        os << c.m << ',' << c.n << ',' << to_string(c.flavor) << ',' << fmt(c.lower) << ',' << fmt(c.upper) << ','
           << to_string(c.lower_provenance) << ',' << to_string(c.upper_provenance) << ','
           << (c.exact ? "exact" : (c.conservative ? "bound-conservative" : "bound")) << '\n';
    }
    return os.str();
}

std::string GMatrix::to_json() const {
    auto enc = [](const BoundReport& c) {
        nlohmann::json j;
        j["m"] = c.m;
        if (c.n == kInfiniteDim)
            j["n"] = "inf";
        else
            j["n"] = c.n;
        j["flavor"] = to_string(c.flavor);
        j["lower"] = c.lower;
        j["upper"] = c.upper;
        j["lower_provenance"] = to_string(c.lower_provenance);
        j["upper_provenance"] = to_string(c.upper_provenance);
        j["exact"] = c.exact;
        j["conservative"] = c.conservative;
        if (!c.note.empty()) j["note"] = c.note;
        return j;
    };
    nlohmann::json out;
    out["max_dim"] = max_dim;
    out["flavor"] = to_string(flavor);
    out["cells"] = nlohmann::json::array();
    for (const auto& c : cells) out["cells"].push_back(enc(c));
    out["infinity"] = nlohmann::json::array();
    for (const auto& c : infinity) out["infinity"].push_back(enc(c));
    return out.dump(2);
}

std::string GMatrix::to_pretty() const {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%3s %3s  %-12s %-12s %-15s %-24s %s\n", "m", "n", "lower", "upper", "lower_prov",
                  "upper_prov", "exact");
    os << buf;
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof buf, "%3d %3d  %-12.9f %-12.9f %-15s %-24s %s\n", c.m, c.n, c.lower, c.upper,
                      to_string(c.lower_provenance).c_str(), to_string(c.upper_provenance).c_str(),
                      c.exact ? "yes" : "no");
        os << buf;
    }
    return os.str();
}

}  // namespace sgh
