#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "ibl/oracle.h"
#include "ibl/recovery.h"
#include "ibl/shading.h"

using namespace ibl;

namespace {

// Forward-generate a diffuse-only sphere under a known environment and wrap
// it as a recovery problem.
RecoveryInput sphere_problem(const EnvMap& env, int size, Vec3 albedo = {0.8, 0.6, 0.5}) {
    OracleScene scene;
    scene.albedo = albedo;
    OracleRender render = render_sphere_bruteforce(scene, env, size);
    return RecoveryInput{render.image, render.gbuffer.albedo, render.gbuffer.normal,
                         render.gbuffer.mask};
}

}  // namespace

TEST_CASE("recover_sh round trips toolkit-generated data") {
    EnvMap env = make_fixture(FixtureKind::BandLimitedRandom, 64, 32, 17);
    ShCoeffs target = sh_project(env);

    SUBCASE("from the oracle renderer") {
        RecoveryInput input = sphere_problem(env, 64);
        ShCoeffs recovered = recover_sh(input);
        CHECK(lighting_error(recovered, target, 64) <= 1e-3);
    }

    SUBCASE("from the relight pipeline") {
        OracleScene scene;
        GBuffer g = render_sphere_bruteforce(scene, env, 64).gbuffer;
        RelightOptions opt;  // 256x128 prefilter
        ImageF relit = relight(env, g, SpecWeights::constant(64, 64, 0, 0, 0, 0, 0),
                               {{1, 1, 1}, {0, 0, 0}}, nullptr, opt);
        ShCoeffs recovered = recover_sh({relit, g.albedo, g.normal, g.mask});
        CHECK(lighting_error(recovered, target, 64) <= 1e-3);
    }
}

TEST_CASE("recover_sh of uniform ambient lighting") {
    // relit = albedo * c * gain0 * Y00 recovers coefficients (c, 0, ..., 0).
    // Normals cover the whole sphere so the system is near orthogonal.
    const int w = 40, h = 20;
    RecoveryInput input;
    input.relit = make_image(w, h, 3);
    input.albedo = make_image(w, h, 3, 1.0f);
    input.normal = make_image(w, h, 3);
    input.skin_mask = make_image(w, h, 1, 1.0f);

    const double c = 1.7;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            Vec3 n = pixel_to_direction((x + 0.5) / w, (y + 0.5) / h);
            input.normal.at(x, y, 0) = static_cast<float>((n.x + 1.0) / 2.0);
            input.normal.at(x, y, 1) = static_cast<float>((n.y + 1.0) / 2.0);
            input.normal.at(x, y, 2) = static_cast<float>((n.z + 1.0) / 2.0);
            for (int ch = 0; ch < 3; ++ch)
                input.relit.at(x, y, ch) = static_cast<float>(c * 0.2820948);
        }

    ShCoeffs rec = recover_sh(input);
    CHECK(rec.c[0][0] == doctest::Approx(c).epsilon(1e-6));
    for (int i = 1; i < 9; ++i) CHECK(std::fabs(rec.c[i][0]) < 1e-6 * c);
}

TEST_CASE("recover_sh tolerates mild noise") {
    EnvMap env = make_fixture(FixtureKind::BandLimitedRandom, 64, 32, 23);
    ShCoeffs target = sh_project(env);
    RecoveryInput clean = sphere_problem(env, 64);

    double mean = 0.0;
    size_t n = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            if (clean.skin_mask.at(x, y) <= 0.5f) continue;
            for (int c = 0; c < 3; ++c) mean += clean.relit.at(x, y, c);
            n += 3;
        }
    mean /= static_cast<double>(n);

    std::vector<double> errors;
    for (uint32_t seed = 0; seed < 10; ++seed) {
        std::mt19937 rng(seed);
        std::normal_distribution<double> noise(0.0, 0.01 * mean);
        RecoveryInput noisy = clean;
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x) {
                if (noisy.skin_mask.at(x, y) <= 0.5f) continue;
                for (int c = 0; c < 3; ++c)
                    noisy.relit.at(x, y, c) += static_cast<float>(noise(rng));
            }
        errors.push_back(lighting_error(recover_sh(noisy), target, 64));
    }
    std::sort(errors.begin(), errors.end());
    CHECK(errors[errors.size() / 2] <= 1e-2);
}

TEST_CASE("recover_sh is equivariant to albedo scaling") {
    EnvMap env = make_fixture(FixtureKind::BandLimitedRandom, 64, 32, 31);
    RecoveryInput input = sphere_problem(env, 48);
    ShCoeffs base = recover_sh(input);

    RecoveryInput scaled = input;
    const double k = 2.5;
    for (float& v : scaled.albedo.data) v = static_cast<float>(v * k);
    ShCoeffs rec = recover_sh(scaled);
    for (int i = 0; i < 9; ++i)
        for (int c = 0; c < 3; ++c)
            CHECK(rec.c[i][c] == doctest::Approx(base.c[i][c] / k).epsilon(1e-6).scale(1e-6));
}

TEST_CASE("recover_sh rejects degenerate problems") {
    // Too few pixels.
    RecoveryInput tiny;
    tiny.relit = make_image(4, 4, 3, 0.5f);
    tiny.albedo = make_image(4, 4, 3, 1.0f);
    tiny.normal = make_image(4, 4, 3, 0.5f);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) tiny.normal.at(x, y, 2) = 1.0f;
    tiny.skin_mask = make_image(4, 4, 1, 0.0f);
    for (int i = 0; i < 5; ++i) tiny.skin_mask.at(i % 4, i / 4) = 1.0f;
    CHECK_THROWS_WITH_AS(recover_sh(tiny), doctest::Contains("fewer than 9"), std::runtime_error);

    // Enough pixels but a single shared normal: rank-deficient geometry.
    tiny.skin_mask = make_image(4, 4, 1, 1.0f);
    CHECK_THROWS_WITH_AS(recover_sh(tiny), doctest::Contains("degenerate"), std::runtime_error);
}

TEST_CASE("render_diffuse_sphere basics") {
    ShCoeffs zero;
    ImageF black = render_diffuse_sphere(zero, 32);
    for (float v : black.data) CHECK(v == 0.0f);

    ShCoeffs ambient;
    for (int c = 0; c < 3; ++c) ambient.c[0][c] = 1.0;
    ImageF disk = render_diffuse_sphere(ambient, 32);
    float center = disk.at(16, 16, 0);
    CHECK(center == doctest::Approx(0.2820948).epsilon(1e-6));
    CHECK(disk.at(0, 0, 0) == 0.0f);  // corner is background
    for (int y = 12; y < 20; ++y)
        for (int x = 12; x < 20; ++x) CHECK(disk.at(x, y, 1) == center);

    // Linear in the coefficients.
    ShCoeffs mixed;
    mixed.c[2][0] = 0.4;
    mixed.c[6][1] = -0.2;
    ImageF a = render_diffuse_sphere(mixed, 32);
    ShCoeffs doubled = mixed;
    for (int i = 0; i < 9; ++i)
        for (int c = 0; c < 3; ++c) doubled.c[i][c] *= 2.0;
    ImageF b = render_diffuse_sphere(doubled, 32);
    for (size_t i = 0; i < a.data.size(); ++i)
        CHECK(b.data[i] == doctest::Approx(2.0 * a.data[i]).epsilon(1e-6).scale(1e-7));
}

TEST_CASE("intensity_match recovers global scale") {
    ShCoeffs coeffs;
    coeffs.c[0][0] = coeffs.c[0][1] = coeffs.c[0][2] = 1.0;
    coeffs.c[2][0] = 0.3;
    ImageF target = render_diffuse_sphere(coeffs, 48);

    ImageF est = target;
    for (float& v : est.data) v *= 4.0f;
    CHECK(intensity_match(est, target) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(intensity_match(target, target) == doctest::Approx(1.0));

    ImageF black = make_image(48, 48, 3, 0.0f);
    CHECK_THROWS(intensity_match(black, target));
}

TEST_CASE("lighting_error is scale invariant and detects band loss") {
    EnvMap env = make_fixture(FixtureKind::BandLimitedRandom, 64, 32, 40);
    ShCoeffs target = sh_project(env);

    CHECK(lighting_error(target, target, 64) == doctest::Approx(0.0));

    // Exactly scale-invariant in exact arithmetic; rendering in float32
    // leaves rounding on the order of 1e-7.
    ShCoeffs scaled = target;
    for (int i = 0; i < 9; ++i)
        for (int c = 0; c < 3; ++c) scaled.c[i][c] *= 2.0;
    CHECK(lighting_error(scaled, target, 64) < 1e-6);
    for (int i = 0; i < 9; ++i)
        for (int c = 0; c < 3; ++c) scaled.c[i][c] = 0.37 * target.c[i][c];
    CHECK(lighting_error(scaled, target, 64) < 1e-6);

    ShCoeffs gutted = target;
    for (int i = 4; i < 9; ++i)
        for (int c = 0; c < 3; ++c) gutted.c[i][c] = 0.0;
    CHECK(lighting_error(gutted, target, 64) > 1e-4);
}
