#pragma once

#include <cstdint>

#include "ibl/shading.h"

namespace ibl {

// Analytic sphere scene shaded by direct summation over environment texels,
// the reference against which the prefiltered pipeline is checked.
struct OracleScene {
    double radius = 1.0;  // fraction of the half canvas, (0, 1]
    Vec3 albedo{0.8, 0.6, 0.5};
    Vec3 ks{0.0, 0.0, 0.0};
    int phong_exponent = 32;
    ViewModel view;
};

struct OracleRender {
    ImageF image;
    GBuffer gbuffer;
};

// Single-bounce local shading, no prefiltering:
//   out = albedo * (1/pi) * sum E max(0, n.w) domega
//       + ks * sum E max(0, r.w)^n domega / Z_n
OracleRender render_sphere_bruteforce(const OracleScene& scene, const EnvMap& env, int size);

enum class FixtureKind { GradientSky, SingleLobe, BandLimitedRandom };

// Deterministic test environments:
//   gradient-sky         affine ramp in y, brightest at the top
//   single-lobe          hard cap light with a known analytic flux
//   band-limited-random  seeded order-2 SH coefficients, shifted nonnegative
EnvMap make_fixture(FixtureKind kind, int width, int height, uint32_t seed = 0);

FixtureKind fixture_kind_from_name(const std::string& name);

}  // namespace ibl
