#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "property_suites.hpp"
#include "spheregh/bounds.hpp"
#include "spheregh/cli.hpp"
#include "spheregh/constructions.hpp"
#include "spheregh/distortion.hpp"
#include "spheregh/finite_gh.hpp"
#include "spheregh/nets.hpp"

using namespace sgh;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = seconds_since(t0);
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
    std::fflush(stdout);
}

Outcome certified(const std::string& id, double mesh, double lo_min, double lo_max, double up_max, double limit_s) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto run = certify_construction(id, mesh);
    const double dt = seconds_since(t0);
    const auto& c = run.certificate;
    const bool ok = c.complete && c.lower_estimate >= lo_min && c.lower_estimate <= lo_max && c.upper_bound <= up_max &&
                    dt < limit_s;
    std::string need = lo_max < 1e8 ? fmt("lower in [%.6f, %.6f]", lo_min, lo_max) : fmt("lower >= %.6f", lo_min);
    return {ok, fmt("%s mesh %.3g: [%.6f, %.6f], need %s and upper <= %.6f%s", id.c_str(), mesh, c.lower_estimate,
                    c.upper_bound, need.c_str(), up_max, c.complete ? "" : ", INCOMPLETE")};
}

}  // namespace

int main() {
    const double third = 2 * M_PI / 3;

    criterion(1, "g-matrix exact cells", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto g = assemble_g_matrix(4, Flavor::Geodesic);
        double err = 0.0;
        for (int n = 1; n <= 4; ++n) err = std::max(err, std::abs(g.at(0, n).lower - M_PI / 2));
        for (int m = 0; m <= 4; ++m) err = std::max(err, std::abs(g.at(m, kInfiniteDim).upper - M_PI / 2));
        err = std::max(err, std::abs(g.at(1, 2).lower - M_PI / 3));
        err = std::max(err, std::abs(g.at(1, 3).upper - M_PI / 3));
        err = std::max(err, std::abs(g.at(2, 3).lower - std::acos(-1.0 / 3) / 2));
        const double dt = seconds_since(t0);
        return Outcome{err <= 1e-12 && dt < 1.0, fmt("max error %.2e in %.3f s", err, dt)};
    });

    criterion(2, "volume bound mu_{1,2}", [] {
        const auto c = colding_bound(1, 2);
        const bool ok = c.inner_sup >= 0.1605 && c.inner_sup <= 0.1625 && c.value >= 0.0802 && c.value <= 0.0813;
        return Outcome{ok, fmt("inner sup %.6f, mu %.6f", c.inner_sup, c.value)};
    });

    criterion(3, "covering bound nu over volume bound", [] {
        const double nu = ls_lower_bound(1, 2), mu = colding_lower_bound(1, 2);
        const bool ok = std::abs(nu - M_PI / 6) < 1e-12 && nu / mu >= 6.2 && nu / mu <= 6.8;
        return Outcome{ok, fmt("nu %.6f, ratio %.4f", nu, nu / mu)};
    });

    criterion(4, "phi21 distortion", [&] {
        return certified("phi21", 0.01, third - 0.05, third + 1e-9, third + 0.05, 60.0);
    });

    criterion(5, "phi_{m+1,m} distortion equals eta_m", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        for (int m = 1; m <= 3; ++m) {
            const double e = eta(m);
            const auto o = certified("phi_m1_m:m=" + std::to_string(m), m <= 2 ? 0.02 : 0.05, e - 0.05, 1e9,
                                     e + 0.05, 600.0);
            ok = ok && o.pass;
            detail += (m > 1 ? "; " : "") + o.detail;
        }
        const double dt = seconds_since(t0);
        return Outcome{ok && dt < 600.0, detail};
    });

    criterion(6, "phi31 distortion", [&] {
        return certified("phi31", 0.05, third - 0.1, 1e9, third + 0.15, 1e9);
    });

    criterion(7, "phi32 distortion", [] {
        const double z = zeta(2);
        return certified("phi32", 0.05, z - 0.1, 1e9, z + 0.15, 1e9);
    });

    criterion(8, "psi12 filling map", [] {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> T(0.0, 2 * M_PI);
        double residual = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double t = T(rng);
            const auto a = psi_12(t, 8), b = psi_12(t + M_PI, 8);
            for (int k = 0; k < 3; ++k) residual = std::max(residual, std::abs(a[k] + b[k]));
        }
        std::vector<std::vector<double>> img;
        const int samples = 400000;
        for (int i = 0; i < samples; ++i) img.push_back(psi_12(2 * M_PI * i / samples, 8).coords());
        const double cov = coverage_radius(img, 2, 0.01);
        const auto run = certify_construction("psi:1-2");
        const double dis = run.certificate.upper_bound;
        const bool ok = residual < 1e-9 && cov <= 0.05 && dis <= M_PI - 0.05 && run.certificate.complete;
        return Outcome{ok, fmt("antipode residual %.2e, coverage %.4f, distortion <= %.6f", residual, cov, dis)};
    });

    criterion(9, "heptagon correspondence", [] {
        const auto H = heptagon_correspondence_E();
        int holding = 0;
        for (const auto& c : H.conditions) holding += c.holds ? 1 : 0;
        const auto run = certify_construction("heptagonE", 0.01);
        const auto& c = run.certificate;
        const bool ok = holding == 7 && c.complete && c.upper_bound <= std::sqrt(3.0) - 0.001 + c.padding;
        return Outcome{ok, fmt("%d/7 conditions, dis_E in [%.6f, %.6f], padding %.4f", holding, c.lower_estimate,
                               c.upper_bound, c.padding)};
    });

    criterion(10, "hexagon correspondence", [&] {
        const auto X = hexagon_correspondence();
        double err = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                err = std::max({err, std::abs(X.dX[i][j] - X.dX_expected[i][j]),
                                std::abs(X.dY[i][j] - X.dY_expected[i][j])});
        auto o = certified("hexagonD", 0.01, 0.0, 1e9, third + 0.05, 1e9);
        o.pass = o.pass && err < 1e-12;
        o.detail += fmt(", matrix error %.1e", err);
        return o;
    });

    criterion(11, "finite polygon distances", [] {
        double err = 0.0;
        for (int m = 2; m <= 4; ++m)
            err = std::max(err, std::abs(gh_exact_small(polygon_space(m), polygon_space(m + 1)).value - M_PI / (m + 1)));
        const double want[] = {M_PI / 3, M_PI / 4, 2 * M_PI / 5, M_PI / 3};
        for (int n = 3; n <= 6; ++n) {
            err = std::max(err, std::abs(polygon_gh(2, n).value - want[n - 3]));
            err = std::max(err, std::abs(gh_exact_small(polygon_space(2), polygon_space(n)).value - want[n - 3]));
        }
        return Outcome{err < 1e-12, fmt("max error %.2e", err)};
    });

    criterion(12, "ultrametric quotient of a circle net", [] {
        const auto net = build_net(1, 2 * M_PI / 500);
        const auto S = FiniteMetricSpace::from_points(net.points, Flavor::Geodesic);
        const auto U = ultrametric_quotient(S, 0.021);
        bool ok = S.size() == 500 && U.space.size() <= 2;
        double worst = 1e9;
        for (int n = 3; n <= 8; ++n)
            worst = std::min(worst, gh_lower_via_quotient(S, polygon_space(n), 0.021) - (M_PI / n - 0.03));
        ok = ok && worst >= 0.0;
        return Outcome{ok, fmt("%zu quotient points, smallest margin %.4f", U.space.size(), worst)};
    });

    criterion(13, "property suites", [] {
        const int n = 10000;
        const std::vector<props::SuiteResult> suites{props::rotation_suite(n), props::tetra_suite(n),
                                                     props::chord_gap_suite(n), props::transfer_suite(n),
                                                     props::odd_extension_suite(n), props::cone_suite(n)};
        bool ok = true;
        std::string detail;
        for (const auto& s : suites) {
            ok = ok && s.ok() && s.trials == n;
            detail += fmt("%s%s %d/%d (worst %.1e)", detail.empty() ? "" : "; ", s.name.c_str(), s.trials - s.failures,
                          s.trials, s.worst);
        }
        return Outcome{ok, detail};
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
