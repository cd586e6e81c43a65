#include "ibl/oracle.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ibl {

namespace {

double pow_int(double base, unsigned exp) {
    double r = 1.0;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

}  // namespace

OracleRender render_sphere_bruteforce(const OracleScene& scene, const EnvMap& env, int size) {
    if (scene.radius <= 0.0 || scene.radius > 1.0)
        throw std::runtime_error("oracle: radius must be in (0, 1]");
    if (scene.phong_exponent < 1) throw std::runtime_error("oracle: exponent must be >= 1");
    if (size < 2) throw std::runtime_error("oracle: canvas too small");

    const ImageF& src = env.image;
    const int w = src.width, h = src.height;
    const double z_n = 2.0 * M_PI / (scene.phong_exponent + 1);
    const unsigned n_exp = static_cast<unsigned>(scene.phong_exponent);

    // Env texel directions and solid angles, fixed scan order.
    std::vector<Vec3> dirs(static_cast<size_t>(w) * h);
    std::vector<double> domega(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        double dom = pixel_solid_angle(w, h, y);
        for (int x = 0; x < w; ++x) {
            dirs[static_cast<size_t>(y) * w + x] =
                pixel_to_direction((x + 0.5) / w, (y + 0.5) / h);
            domega[static_cast<size_t>(y) * w + x] = dom;
        }
    }

    OracleRender out;
    out.image = make_image(size, size, 3);
    out.gbuffer.albedo = make_image(size, size, 3);
    out.gbuffer.normal = make_image(size, size, 3);
    out.gbuffer.lens_normal = make_image(size, size, 3);
    out.gbuffer.mask = make_image(size, size, 1);

    const double albedo[3] = {scene.albedo.x, scene.albedo.y, scene.albedo.z};
    const double ks[3] = {scene.ks.x, scene.ks.y, scene.ks.z};

    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double px = 2.0 * (x + 0.5) / size - 1.0;
            double py = 1.0 - 2.0 * (y + 0.5) / size;
            double rr = (px * px + py * py) / (scene.radius * scene.radius);
            if (rr > 1.0) continue;

            Vec3 n{px / scene.radius, py / scene.radius, std::sqrt(1.0 - rr)};
            Vec3 v = view_vector(scene.view, x, y, size, size);
            Vec3 r = reflect(v, n);

            double diff[3] = {0.0, 0.0, 0.0};
            double spec[3] = {0.0, 0.0, 0.0};
            for (size_t p = 0; p < dirs.size(); ++p) {
                const Vec3& d = dirs[p];
                double cos_n = dot(n, d);
                double cos_r = dot(r, d);
                if (cos_n <= 0.0 && cos_r <= 0.0) continue;
                double kd = cos_n > 0.0 ? cos_n * domega[p] : 0.0;
                double ksr = cos_r > 0.0 ? pow_int(cos_r, n_exp) * domega[p] : 0.0;
                const float* e = &src.data[p * 3];
                for (int c = 0; c < 3; ++c) {
                    diff[c] += e[c] * kd;
                    spec[c] += e[c] * ksr;
                }
            }
            for (int c = 0; c < 3; ++c)
                out.image.at(x, y, c) =
                    static_cast<float>(albedo[c] * diff[c] / M_PI + ks[c] * spec[c] / z_n);

            for (int c = 0; c < 3; ++c)
                out.gbuffer.albedo.at(x, y, c) = static_cast<float>(albedo[c]);
            float enc[3] = {static_cast<float>((n.x + 1.0) / 2.0),
                            static_cast<float>((n.y + 1.0) / 2.0),
                            static_cast<float>((n.z + 1.0) / 2.0)};
            for (int c = 0; c < 3; ++c) {
                out.gbuffer.normal.at(x, y, c) = enc[c];
                out.gbuffer.lens_normal.at(x, y, c) = enc[c];
            }
            out.gbuffer.mask.at(x, y) = 1.0f;
        }
    return out;
}

EnvMap make_fixture(FixtureKind kind, int width, int height, uint32_t seed) {
    if (width != 2 * height || height < 1)
        throw std::runtime_error("fixture: need a 2:1 lat-long resolution");

    switch (kind) {
        case FixtureKind::GradientSky: {
            const double lo[3] = {0.15, 0.12, 0.10};
            const double hi[3] = {1.20, 1.10, 1.35};
            ImageF img = make_image(width, height, 3);
            for (int y = 0; y < height; ++y) {
                Vec3 d = pixel_to_direction(0.25, (y + 0.5) / height);
                double t = (d.y + 1.0) / 2.0;
                for (int x = 0; x < width; ++x)
                    for (int c = 0; c < 3; ++c)
                        img.at(x, y, c) = static_cast<float>(lo[c] + (hi[c] - lo[c]) * t);
            }
            return EnvMap{std::move(img)};
        }
        case FixtureKind::SingleLobe: {
            const Vec3 center = normalize({0.35, 0.55, 0.76});
            const double radius = 0.35;
            const double intensity[3] = {2.0, 1.8, 1.5};
            double cos_r = std::cos(radius);
            ImageF img = make_image(width, height, 3);
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x) {
                    Vec3 d = pixel_to_direction((x + 0.5) / width, (y + 0.5) / height);
                    if (dot(d, center) < cos_r) continue;
                    for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<float>(intensity[c]);
                }
            return EnvMap{std::move(img)};
        }
        case FixtureKind::BandLimitedRandom: {
            std::mt19937 rng(seed);
            std::uniform_real_distribution<double> uniform(-1.0, 1.0);
            ShCoeffs coeffs;
            for (int i = 0; i < 9; ++i)
                for (int c = 0; c < 3; ++c) coeffs.c[i][c] = uniform(rng);
            EnvMap env = sh_reconstruct(coeffs, width, height);
            float lo = env.image.data[0], hi = env.image.data[0];
            for (float v : env.image.data) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            // Shift nonnegative with a small floor; the shift only moves the
            // DC band, so the map stays band-limited.
            float shift = -lo + 0.05f * (hi - lo);
            if (shift > 0.0f)
                for (float& v : env.image.data) v += shift;
            return env;
        }
    }
    throw std::runtime_error("fixture: unknown kind");
}

FixtureKind fixture_kind_from_name(const std::string& name) {
    if (name == "gradient-sky") return FixtureKind::GradientSky;
    if (name == "single-lobe") return FixtureKind::SingleLobe;
    if (name == "band-limited-random") return FixtureKind::BandLimitedRandom;
    throw std::runtime_error("fixture: unknown kind '" + name +
                             "' (expected gradient-sky, single-lobe, band-limited-random)");
}

}  // namespace ibl
