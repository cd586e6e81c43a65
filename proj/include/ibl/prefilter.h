#pragma once

#include <array>

#include "ibl/sphere.h"

namespace ibl {

inline constexpr std::array<int, 5> kSpecularExponents = {1, 16, 32, 64, 1024};

// Diffuse irradiance map plus one prefiltered map per Phong exponent.
// The diffuse map is indexed by surface normals, the specular maps by
// reflection directions. All maps share one resolution.
struct PrefilteredSet {
    EnvMap diffuse;
    std::array<EnvMap, 5> specular;  // ordered as kSpecularExponents
    int source_width = 0;
    int source_height = 0;

    const EnvMap& spec(int exponent) const;
};

// D(n) = (1/pi) * sum over env pixels of E * max(0, n.d) * domega.
// Normalized so a constant environment maps to itself.
EnvMap prefilter_diffuse_bruteforce(const EnvMap& env, int out_width, int out_height);

// Fast path: project to 9 SH coefficients, apply the clamped-cosine band
// gains divided by pi, reconstruct. Output defaults to the source size.
EnvMap prefilter_diffuse_sh(const EnvMap& env, int out_width = 0, int out_height = 0);

// S_n(r) = sum of E * max(0, r.d)^n * domega / Z_n with Z_n = 2*pi/(n+1),
// again normalized so a constant environment maps to itself.
//
// The sum is restricted to the cap where the lobe exceeds 1e-6 of its peak,
// and env texels are subdivided when the lobe is narrow relative to a texel
// (without subdivision a 1024-lobe aliases badly on coarse maps and the
// constant-map identity breaks). Linearity in E is exact either way.
EnvMap prefilter_specular(const EnvMap& env, int exponent, int out_width, int out_height);

PrefilteredSet prefilter_set(const EnvMap& env, int out_width, int out_height);

}  // namespace ibl
