#include <doctest.h>

#include <cmath>

#include "ibl/sphere.h"

using namespace ibl;

namespace {

EnvMap constant_env(int w, int h, float r, float g, float b) {
    ImageF img = make_image(w, h, 3);
    for (size_t p = 0; p < img.pixel_count(); ++p) {
        img.data[p * 3 + 0] = r;
        img.data[p * 3 + 1] = g;
        img.data[p * 3 + 2] = b;
    }
    return make_envmap(std::move(img));
}

double angle_between(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

}  // namespace

TEST_CASE("pixel_to_direction fixes the lat-long convention") {
    Vec3 center = pixel_to_direction(0.5, 0.5);
    CHECK(center.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(center.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(center.z == doctest::Approx(1.0).epsilon(1e-12));

    Vec3 top = pixel_to_direction(0.5, 1e-9);
    CHECK(top.y == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(norm(pixel_to_direction(0.123, 0.77)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direction_to_pixel inverts and handles poles") {
    double u, v;
    direction_to_pixel({0.0, 0.0, 1.0}, u, v);
    CHECK(u == doctest::Approx(0.5));
    CHECK(v == doctest::Approx(0.5));

    direction_to_pixel({0.0, 1.0, 0.0}, u, v);
    CHECK(v == doctest::Approx(0.0));
    CHECK(u == 0.5);
    direction_to_pixel({0.0, -1.0, 0.0}, u, v);
    CHECK(v == doctest::Approx(1.0));
    CHECK(u == 0.5);
}

TEST_CASE("pixel-direction round trip stays within half a pixel at 256x128") {
    const int w = 256, h = 128;
    const double half_pixel = (M_PI / h) / 2.0;
    double worst = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double u = (x + 0.5) / w, v = (y + 0.5) / h;
            Vec3 d = pixel_to_direction(u, v);
            double u2, v2;
            direction_to_pixel(d, u2, v2);
            worst = std::max(worst, angle_between(d, pixel_to_direction(u2, v2)));
        }
    CHECK(worst <= half_pixel);
}

TEST_CASE("sample_bilinear basics") {
    EnvMap c = constant_env(16, 8, 0.3f, 0.6f, 0.9f);
    for (double v : {0.01, 0.3, 0.5, 0.77, 0.99})
        for (double u : {0.0, 0.25, 0.5, 0.9}) {
            Vec3 s = sample_bilinear(c, pixel_to_direction(u, v));
            CHECK(s.x == doctest::Approx(0.3).epsilon(1e-6));
            CHECK(s.y == doctest::Approx(0.6).epsilon(1e-6));
            CHECK(s.z == doctest::Approx(0.9).epsilon(1e-6));
        }

    // Exact texel center returns the texel value.
    ImageF img = make_image(8, 4, 3);
    img.at(3, 2, 0) = 5.0f;
    EnvMap env{std::move(img)};
    Vec3 s = sample_bilinear_uv(env, (3 + 0.5) / 8.0, (2 + 0.5) / 4.0);
    CHECK(s.x == doctest::Approx(5.0).epsilon(1e-12));

    // Midpoint between two texels of a horizontal ramp averages them.
    ImageF ramp = make_image(8, 4, 3);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 4; ++y) ramp.at(x, y, 0) = static_cast<float>(x);
    EnvMap renv{std::move(ramp)};
    Vec3 mid = sample_bilinear_uv(renv, (3.0 + 1.0) / 8.0, (1 + 0.5) / 4.0);
    CHECK(mid.x == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("solid angles sum to 4pi") {
    for (int h : {128, 256}) {
        int w = 2 * h;
        double sum = 0.0;
        for (int y = 0; y < h; ++y) sum += w * pixel_solid_angle(w, h, y);
        CHECK(sum == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
    }

    // Pole rows carry the least solid angle; H=1 stays positive.
    CHECK(pixel_solid_angle(64, 32, 0) < pixel_solid_angle(64, 32, 15));
    CHECK(pixel_solid_angle(64, 32, 31) < pixel_solid_angle(64, 32, 15));
    CHECK(pixel_solid_angle(2, 1, 0) > 0.0);
}

TEST_CASE("rotate_azimuth rolls columns") {
    ImageF img = make_image(16, 8, 3);
    img.at(3, 4, 0) = 2.0f;
    EnvMap env{std::move(img)};

    EnvMap same = rotate_azimuth(env, 0.0);
    CHECK(same.image.at(3, 4, 0) == 2.0f);
    EnvMap full = rotate_azimuth(env, 2.0 * M_PI);
    CHECK(full.image.at(3, 4, 0) == 2.0f);

    EnvMap half = rotate_azimuth(env, M_PI);  // W/2 = 8 columns
    CHECK(half.image.at(11, 4, 0) == 2.0f);
    CHECK(half.image.at(3, 4, 0) == 0.0f);

    // Pixel-aligned shifts keep the radiance integral exactly.
    double before = 0.0, after = 0.0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 16; ++x) {
            before += env.image.at(x, y, 0) * solid_angle(env, y);
            after += half.image.at(x, y, 0) * solid_angle(half, y);
        }
    CHECK(after == before);

    // A half-texel shift splits a single texel across two columns.
    EnvMap split = rotate_azimuth(env, 2.0 * M_PI * 0.5 / 16.0);
    CHECK(split.image.at(3, 4, 0) == doctest::Approx(1.0));
    CHECK(split.image.at(4, 4, 0) == doctest::Approx(1.0));
}

TEST_CASE("flip_horizontal is an involution preserving energy") {
    ImageF img = make_image(16, 8, 3);
    img.at(3, 4, 0) = 2.0f;
    img.at(7, 1, 1) = 1.5f;
    EnvMap env{std::move(img)};

    EnvMap flipped = flip_horizontal(env);
    CHECK(flipped.image.at(16 - 1 - 3, 4, 0) == 2.0f);

    EnvMap back = flip_horizontal(flipped);
    CHECK(std::equal(back.image.data.begin(), back.image.data.end(), env.image.data.begin()));

    double before = 0.0, after = 0.0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 16; ++x) {
            before += env.image.at(x, y, 0) * solid_angle(env, y);
            after += flipped.image.at(x, y, 0) * solid_angle(flipped, y);
        }
    CHECK(after == before);
}

TEST_CASE("sh basis constants and orthonormality") {
    CHECK(sh_basis({0.3, -0.5, 0.81})[0] == doctest::Approx(0.2820948));
    CHECK(sh_basis({0.0, 0.0, 1.0})[2] == doctest::Approx(0.4886025));
    CHECK(sh_basis({0.0, 1.0, 0.0})[1] == doctest::Approx(0.4886025));
    CHECK(sh_basis({1.0, 0.0, 0.0})[3] == doctest::Approx(0.4886025));

    // Quadrature over a 512x256 grid: integral of Y_i * Y_j is delta_ij.
    const int w = 512, h = 256;
    double gram[9][9] = {};
    for (int y = 0; y < h; ++y) {
        double domega = pixel_solid_angle(w, h, y);
        for (int x = 0; x < w; ++x) {
            auto basis = sh_basis(pixel_to_direction((x + 0.5) / w, (y + 0.5) / h));
            for (int i = 0; i < 9; ++i)
                for (int j = i; j < 9; ++j) gram[i][j] += basis[i] * basis[j] * domega;
        }
    }
    for (int i = 0; i < 9; ++i)
        for (int j = i; j < 9; ++j) {
            double expected = i == j ? 1.0 : 0.0;
            CHECK(gram[i][j] == doctest::Approx(expected).epsilon(1e-3).scale(1.0));
        }
}

TEST_CASE("sh_project recovers analytic coefficients") {
    EnvMap c = constant_env(256, 128, 0.5f, 0.5f, 0.5f);
    ShCoeffs coeffs = sh_project(c);
    CHECK(coeffs.c[0][0] == doctest::Approx(0.5 * 2.0 * std::sqrt(M_PI)).epsilon(1e-3));
    for (int i = 1; i < 9; ++i) CHECK(std::fabs(coeffs.c[i][0]) < 1e-3);

    // A pure basis rasterized then projected lands in its own slot.
    for (int slot : {1, 4, 6}) {
        ShCoeffs pure;
        for (int ch = 0; ch < 3; ++ch) pure.c[slot][ch] = 1.0;
        ShCoeffs back = sh_project(sh_reconstruct(pure, 256, 128));
        for (int i = 0; i < 9; ++i)
            CHECK(back.c[i][0] == doctest::Approx(i == slot ? 1.0 : 0.0).epsilon(1e-3).scale(1.0));
    }
}

TEST_CASE("sh_project is linear") {
    EnvMap a = constant_env(32, 16, 1.0f, 0.25f, 0.0f);
    ImageF img = make_image(32, 16, 3);
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<float>(i % 7) * 0.1f;
    EnvMap b{std::move(img)};

    ShCoeffs pa = sh_project(a), pb = sh_project(b);
    ShCoeffs psum = sh_project(add_envmaps(scale_envmap(a, 2.0), b));
    for (int i = 0; i < 9; ++i)
        for (int ch = 0; ch < 3; ++ch)
            CHECK(psum.c[i][ch] ==
                  doctest::Approx(2.0 * pa.c[i][ch] + pb.c[i][ch]).epsilon(1e-6).scale(1.0));
}

TEST_CASE("sh_reconstruct of zero and project-reconstruct identity") {
    ShCoeffs zero;
    EnvMap z = sh_reconstruct(zero, 64, 32);
    for (float v : z.image.data) CHECK(v == 0.0f);

    ShCoeffs coeffs;
    coeffs.c[0][0] = 0.8;
    coeffs.c[2][0] = -0.3;
    coeffs.c[7][0] = 0.45;
    coeffs.c[5][1] = 0.6;
    coeffs.c[8][2] = -0.2;
    coeffs.c[0][2] = 1.0;
    ShCoeffs round = sh_project(sh_reconstruct(coeffs, 512, 256));
    for (int i = 0; i < 9; ++i)
        for (int ch = 0; ch < 3; ++ch)
            CHECK(round.c[i][ch] == doctest::Approx(coeffs.c[i][ch]).epsilon(1e-3).scale(1.0));

    // Reconstruction is linear in the coefficients.
    ShCoeffs doubled = coeffs;
    for (int i = 0; i < 9; ++i)
        for (int ch = 0; ch < 3; ++ch) doubled.c[i][ch] *= 2.0;
    EnvMap once = sh_reconstruct(coeffs, 64, 32);
    EnvMap twice = sh_reconstruct(doubled, 64, 32);
    for (size_t i = 0; i < once.image.data.size(); ++i)
        CHECK(twice.image.data[i] ==
              doctest::Approx(2.0 * once.image.data[i]).epsilon(1e-6).scale(1e-7));
}

TEST_CASE("make_envmap validates shape") {
    CHECK_THROWS(make_envmap(make_image(16, 16, 3)));
    CHECK_THROWS(make_envmap(make_image(16, 8, 1)));
    ImageF bad = make_image(16, 8, 3);
    bad.data[5] = std::numeric_limits<float>::infinity();
    CHECK_THROWS(make_envmap(std::move(bad)));
}
