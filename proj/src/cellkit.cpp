#include "cellkit.hpp"

#include <cmath>
#include <stdexcept>

namespace sgh::detail {

std::int32_t BoxStore::make(int owner, int k, int face, const double* lo, const double* hi,
                            const SphereRegion& region) {
    Box b;
    b.owner = owner;
    b.k = static_cast<std::int8_t>(k);
    b.face = static_cast<std::int8_t>(face);
    const int amb = k + 1;
    if (k == 0) {
        b.c[0] = face == 0 ? 1.0 : -1.0;
        b.r = 0.0;
    } else {
        for (int i = 0; i < k; ++i) {
            b.lo[i] = lo[i];
            b.hi[i] = hi[i];
        }
        b.r = cube::box_radius(k, face, b.lo, b.hi, b.c);
    }
    if (!region.may_intersect(b.c, b.r)) return -1;
    if (region.contains(b.c, 1e-13)) {
        for (int i = 0; i < amb; ++i) b.s[i] = b.c[i];
        b.has_sample = true;
    } else if (k > 0) {
        double corner[kMaxParam], p[kMaxAmb];
        for (unsigned mask = 0; mask < (1u << k) && !b.has_sample; ++mask) {
            for (int i = 0; i < k; ++i) corner[i] = (mask >> i) & 1u ? b.hi[i] : b.lo[i];
            cube::face_point(k, face, corner, p);
            if (region.contains(p, 1e-13)) {
                for (int i = 0; i < amb; ++i) b.s[i] = p[i];
                b.has_sample = true;
            }
        }
    }
    boxes.push_back(b);
    return static_cast<std::int32_t>(boxes.size() - 1);
}

void BoxStore::roots(int owner, const SphereRegion& region, std::vector<std::int32_t>& out) {
    const int k = region.dim;
    if (k > kMaxParam) throw std::invalid_argument("parameter sphere dimension too large for the engine");
    double lo[kMaxParam], hi[kMaxParam];
    for (int i = 0; i < k; ++i) {
        lo[i] = -M_PI / 4;
        hi[i] = M_PI / 4;
    }
    for (int f = 0; f < cube::face_count(k); ++f) {
        const std::int32_t id = make(owner, k, f, lo, hi, region);
        if (id >= 0) out.push_back(id);
    }
}

bool BoxStore::splittable(std::int32_t i) const { return boxes[i].k > 0; }

void BoxStore::split(std::int32_t i, const SphereRegion& region) {
    if (boxes[i].split_done || boxes[i].k == 0) return;
    const Box b = boxes[i];
    int axis = 0;
    for (int d = 1; d < b.k; ++d)
        if (b.hi[d] - b.lo[d] > b.hi[axis] - b.lo[axis]) axis = d;
    const double mid = 0.5 * (b.lo[axis] + b.hi[axis]);
    double lo[kMaxParam], hi[kMaxParam];
    for (int d = 0; d < b.k; ++d) {
        lo[d] = b.lo[d];
        hi[d] = b.hi[d];
    }
    hi[axis] = mid;
    const std::int32_t c0 = make(b.owner, b.k, b.face, lo, hi, region);
    hi[axis] = b.hi[axis];
    lo[axis] = mid;
    const std::int32_t c1 = make(b.owner, b.k, b.face, lo, hi, region);
    boxes[i].child[0] = c0;
    boxes[i].child[1] = c1;
    boxes[i].split_done = true;
}

}  // namespace sgh::detail
