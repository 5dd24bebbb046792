#pragma once

#include <cstdint>
#include <vector>

#include "spheregh/correspondence.hpp"
#include "spheregh/nets.hpp"

namespace sgh::detail {

inline constexpr int kMaxParam = 5;
inline constexpr int kMaxAmb = 6;

struct Box {
    double lo[kMaxParam];
    double hi[kMaxParam];
    double c[kMaxAmb];  // center on the parameter sphere
    double s[kMaxAmb];  // a point of the region inside the box, if any
    double r = 0.0;     // largest angle from c to the box
    std::int32_t child[2] = {-1, -1};
    std::int32_t owner = 0;  // piece or region index
    std::int8_t face = 0;
    std::int8_t k = 0;
    bool has_sample = false;
    bool split_done = false;
};

// Cube-sphere boxes over closed spherical regions, refined by bisection of the widest side.
class BoxStore {
public:
    std::vector<Box> boxes;

    void roots(int owner, const SphereRegion& region, std::vector<std::int32_t>& out);
    // Splits box i once (idempotent); children outside the region are dropped.
    void split(std::int32_t i, const SphereRegion& region);
    bool splittable(std::int32_t i) const;

private:
    std::int32_t make(int owner, int k, int face, const double* lo, const double* hi, const SphereRegion& region);
};

}  // namespace sgh::detail
