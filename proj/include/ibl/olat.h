#pragma once

#include <functional>
#include <vector>

#include "ibl/sphere.h"

namespace ibl {

// One-light-at-a-time environment set: `count` spherical-cap lights spread
// evenly over the sphere. Caps live in direction space, so every light
// carries the same flux regardless of latitude.
struct OlatSpec {
    int count = 168;
    double angular_radius = 0.1;  // radians
    double intensity = 50.0;      // radiance inside the cap
    int width = 512;
    int height = 256;
};

// Deterministic golden-angle spiral; count == 1 yields the +y pole.
std::vector<Vec3> fibonacci_sphere(int count);

// Hard-edged cap: intensity where angle(d, center) <= angular_radius, else 0.
// Errors when the cap is smaller than a pixel at the given resolution.
EnvMap make_olat_map(const Vec3& center, const OlatSpec& spec);

std::vector<EnvMap> generate_olat_set(const OlatSpec& spec);

using RelightFn = std::function<ImageF(const EnvMap&)>;

// Mean |(f(E1) + f(E2)) - f(E1 + E2)| over in-mask pixels: zero exactly when
// f distributes over summed lights.
double olat_consistency(const RelightFn& fn, const EnvMap& e1, const EnvMap& e2,
                        const ImageF* mask = nullptr);

// Mean |(Ri - Rj) - (Ri_bar - Rj_bar)| over in-mask pixels, equivalently the
// lighting-invariance of the enhancement difference.
double relative_consistency(const ImageF& ri, const ImageF& rj, const ImageF& ri_bar,
                            const ImageF& rj_bar, const ImageF* mask = nullptr);

}  // namespace ibl
