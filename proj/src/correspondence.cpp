#include "spheregh/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sgh {

bool SphereRegion::contains(const double* x, double tol) const {
    const std::size_t n = static_cast<std::size_t>(dim + 1);
    for (const auto& h : constraints)
        if (dot(h.normal.data(), x, n) < h.offset - tol) return false;
    return true;
}

bool SphereRegion::may_intersect(const double* center, double radius) const {
    const std::size_t n = static_cast<std::size_t>(dim + 1);
    for (const auto& h : constraints) {
        const double norm = std::sqrt(dot(h.normal.data(), h.normal.data(), n));
        if (norm == 0.0) {
            if (h.offset > 0) return false;
            continue;
        }
        const double theta = clamped_acos(dot(h.normal.data(), center, n) / norm);
        const double best = norm * std::cos(std::max(0.0, theta - radius));
        if (best < h.offset - 1e-12) return false;
    }
    return true;
}

SphereRegion SphereRegion::negated() const {
    SphereRegion r = *this;
    for (auto& h : r.constraints)
        for (double& v : h.normal) v = -v;
    return r;
}

Halfspace coordinate_halfspace(int dim, int axis, double sign, double offset) {
    Halfspace h;
    h.normal.assign(dim + 1, 0.0);
    h.normal[axis] = sign;
    h.offset = offset;
    return h;
}

std::vector<Halfspace> wedge(int dim, double a, double b, int axis0, int axis1) {
    if (!(b - a < M_PI)) throw std::invalid_argument("wedge must be narrower than pi");
    Halfspace lo, hi;
    lo.normal.assign(dim + 1, 0.0);
    hi.normal.assign(dim + 1, 0.0);
    lo.normal[axis0] = -std::sin(a);
    lo.normal[axis1] = std::cos(a);
    hi.normal[axis0] = std::sin(b);
    hi.normal[axis1] = -std::cos(b);
    return {lo, hi};
}

Embedding Embedding::constant(const SpherePoint& p) {
    Embedding e;
    e.kind = Kind::Constant;
    e.target_dim = p.dim();
    e.point = p.coords();
    return e;
}

Embedding Embedding::inclusion(int target_dim) {
    Embedding e;
    e.kind = Kind::Inclusion;
    e.target_dim = target_dim;
    return e;
}

void Embedding::apply(const double* param, int param_dim, double* out) const {
    if (kind == Kind::Constant) {
        std::copy(point.begin(), point.end(), out);
        return;
    }
    for (int i = 0; i <= target_dim; ++i) out[i] = i <= param_dim ? param[i] : 0.0;
}

std::string block_term(const CorrespondencePiece& a, const CorrespondencePiece& b, bool same) {
    const bool ia = a.x.kind == Embedding::Kind::Inclusion && a.y.kind == Embedding::Kind::Inclusion;
    const bool ib = b.x.kind == Embedding::Kind::Inclusion && b.y.kind == Embedding::Kind::Inclusion;
    if (ia && ib) return "I";
    if (ia || ib) return "C";
    return same ? "A" : "B";
}

std::string BlockCorrespondence::term_of(std::size_t a, std::size_t b) const {
    return term ? term(pieces[a], pieces[b], a == b) : block_term(pieces[a], pieces[b], a == b);
}

int BlockCorrespondence::covering_piece(int side, const double* p, double tol) const {
    const int dim = side == 0 ? x_dim : y_dim;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pc = pieces[k];
        const Embedding& e = side == 0 ? pc.x : pc.y;
        if (e.kind == Embedding::Kind::Constant) {
            double s = 0.0;
            for (int i = 0; i <= dim; ++i) s = std::max(s, std::abs(e.point[i] - p[i]));
            if (s <= tol) return static_cast<int>(k);
            continue;
        }
        const int pd = pc.region.dim;
        bool on_subsphere = true;
        for (int i = pd + 1; i <= dim; ++i)
            if (std::abs(p[i]) > tol) on_subsphere = false;
        if (on_subsphere && pc.region.contains(p, tol)) return static_cast<int>(k);
    }
    return -1;
}

void BlockCorrespondence::check_coverage(int side, const std::vector<SpherePoint>& samples) const {
    const SphereRegion& domain = side == 0 ? x_domain : y_domain;
    for (const auto& s : samples) {
        if (!domain.contains(s.data(), 1e-12)) continue;
        if (covering_piece(side, s.data()) < 0) {
            std::ostringstream os;
            os << "coverage gap on the " << (side == 0 ? "X" : "Y") << " side at (";
            for (std::size_t i = 0; i < s.ambient(); ++i) os << (i ? ", " : "") << s[i];
            os << ")";
            throw std::runtime_error(os.str());
        }
    }
}

PiecewiseMap::PiecewiseMap(std::string id, int source_dim, int target_dim, std::vector<Region> regions,
                           bool antipode_preserving)
    : id_(std::move(id)),
      source_dim_(source_dim),
      target_dim_(target_dim),
      regions_(std::move(regions)),
      antipode_preserving_(antipode_preserving) {}

int PiecewiseMap::region_of(const double* x) const {
    for (std::size_t i = 0; i < regions_.size(); ++i)
        if (regions_[i].contains(x)) return static_cast<int>(i);
    return -1;
}

void PiecewiseMap::apply(const double* x, double* out) const {
    const int r = region_of(x);
    if (r < 0) throw std::domain_error("point not covered by any region of " + id_);
    regions_[r].rule(x, out);
}

SpherePoint PiecewiseMap::operator()(const SpherePoint& x) const {
    if (x.dim() != source_dim_) throw std::invalid_argument("point dimension does not match map source");
    std::vector<double> out(target_dim_ + 1);
    apply(x.data(), out.data());
    return SpherePoint::normalized(std::move(out));
}

PiecewiseMap odd_extend(const PiecewiseMap& phi, const PiecewiseMap::Predicate& C,
                        const std::vector<SpherePoint>& samples) {
    const int n = phi.source_dim();
    for (const auto& s : samples) {
        std::vector<double> neg(s.coords());
        for (double& v : neg) v = -v;
        if (C(s.data()) && C(neg.data()))
            throw std::invalid_argument("domain intersects its antipodal image");
    }
    std::vector<PiecewiseMap::Region> regions;
    for (const auto& r : phi.regions()) {
        regions.push_back({r.name, [C, pred = r.contains](const double* x) { return C(x) && pred(x); }, r.rule});
    }
    const int m = phi.target_dim();
    for (const auto& r : phi.regions()) {
        auto neg_pred = [C, pred = r.contains, n](const double* x) {
            double y[32];
            for (int i = 0; i <= n; ++i) y[i] = -x[i];
            return C(y) && pred(y);
        };
        auto neg_rule = [rule = r.rule, n, m](const double* x, double* out) {
            double y[32];
            for (int i = 0; i <= n; ++i) y[i] = -x[i];
            rule(y, out);
            for (int i = 0; i <= m; ++i) out[i] = -out[i];
        };
        regions.push_back({"-" + r.name, neg_pred, neg_rule});
    }
    return PiecewiseMap(phi.id() + "*", n, m, std::move(regions), true);
}

}  // namespace sgh
