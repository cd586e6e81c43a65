#include "ibl/sphere.h"

#include <cmath>
#include <stdexcept>

namespace ibl {

Vec3 normalize(const Vec3& v) {
    double n = norm(v);
    if (n <= 0.0) return {0.0, 0.0, 1.0};
    return {v.x / n, v.y / n, v.z / n};
}

EnvMap make_envmap(ImageF img) {
    if (img.empty()) throw std::runtime_error("envmap: empty image");
    if (img.channels != 3) throw std::runtime_error("envmap: expected 3 channels");
    if (img.width != 2 * img.height)
        throw std::runtime_error("envmap: lat-long maps need width == 2*height, got " +
                                 std::to_string(img.width) + "x" + std::to_string(img.height));
    for (float v : img.data)
        if (!std::isfinite(v)) throw std::runtime_error("envmap: non-finite radiance");
    return EnvMap{std::move(img)};
}

Vec3 pixel_to_direction(double u, double v) {
    double theta = M_PI * v;
    double phi = 2.0 * M_PI * (u - 0.5);
    double st = std::sin(theta);
    return {st * std::sin(phi), std::cos(theta), st * std::cos(phi)};
}

void direction_to_pixel(const Vec3& d, double& u, double& v) {
    v = std::acos(std::clamp(d.y, -1.0, 1.0)) / M_PI;
    if (d.x == 0.0 && d.z == 0.0) {
        u = 0.5;  // azimuth undefined at the poles
        return;
    }
    u = 0.5 + std::atan2(d.x, d.z) / (2.0 * M_PI);
    if (u >= 1.0) u -= 1.0;
    if (u < 0.0) u += 1.0;
}

Vec3 sample_bilinear_uv(const EnvMap& env, double u, double v) {
    const ImageF& img = env.image;
    int w = img.width, h = img.height;

    double x = u * w - 0.5;
    double y = v * h - 0.5;
    double x0f = std::floor(x), y0f = std::floor(y);
    double fx = x - x0f, fy = y - y0f;

    int x0 = static_cast<int>(x0f), y0 = static_cast<int>(y0f);
    int x0w = ((x0 % w) + w) % w;
    int x1w = (x0w + 1) % w;
    int y0c = std::clamp(y0, 0, h - 1);
    int y1c = std::clamp(y0 + 1, 0, h - 1);

    Vec3 out;
    double* o = &out.x;
    for (int c = 0; c < 3; ++c) {
        double v00 = img.at(x0w, y0c, c), v10 = img.at(x1w, y0c, c);
        double v01 = img.at(x0w, y1c, c), v11 = img.at(x1w, y1c, c);
        o[c] = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11);
    }
    return out;
}

Vec3 sample_bilinear(const EnvMap& env, const Vec3& d) {
    double u, v;
    direction_to_pixel(d, u, v);
    return sample_bilinear_uv(env, u, v);
}

double pixel_solid_angle(int width, int height, int row) {
    double theta = M_PI * (row + 0.5) / height;
    return (2.0 * M_PI / width) * (M_PI / height) * std::sin(theta);
}

double solid_angle(const EnvMap& env, int row) {
    return pixel_solid_angle(env.width(), env.height(), row);
}

EnvMap rotate_azimuth(const EnvMap& env, double dphi) {
    const ImageF& src = env.image;
    int w = src.width, h = src.height;
    ImageF dst = make_image(w, h, 3);

    double shift = dphi / (2.0 * M_PI) * w;
    double rounded = std::round(shift);
    if (std::fabs(shift - rounded) < 1e-6) {
        // Exact column roll.
        long k = static_cast<long>(rounded);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                int sx = static_cast<int>((((x - k) % w) + w) % w);
                for (int c = 0; c < 3; ++c) dst.at(x, y, c) = src.at(sx, y, c);
            }
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double sx = x - shift;
                double x0f = std::floor(sx);
                double fx = sx - x0f;
                int x0 = static_cast<int>(x0f);
                int x0w = ((x0 % w) + w) % w;
                int x1w = (x0w + 1) % w;
                for (int c = 0; c < 3; ++c)
                    dst.at(x, y, c) = static_cast<float>((1.0 - fx) * src.at(x0w, y, c) +
                                                         fx * src.at(x1w, y, c));
            }
    }
    return EnvMap{std::move(dst)};
}

EnvMap flip_horizontal(const EnvMap& env) {
    const ImageF& src = env.image;
    int w = src.width, h = src.height;
    ImageF dst = make_image(w, h, 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) dst.at(x, y, c) = src.at(w - 1 - x, y, c);
    return EnvMap{std::move(dst)};
}

std::array<double, 9> sh_basis(const Vec3& d) {
    std::array<double, 9> y;
    y[0] = 0.2820948;                                   // 1/(2 sqrt(pi))
    y[1] = 0.4886025 * d.y;
    y[2] = 0.4886025 * d.z;
    y[3] = 0.4886025 * d.x;
    y[4] = 1.0925484 * d.x * d.y;
    y[5] = 1.0925484 * d.y * d.z;
    y[6] = 0.3153916 * (3.0 * d.z * d.z - 1.0);
    y[7] = 1.0925484 * d.x * d.z;
    y[8] = 0.5462742 * (d.x * d.x - d.y * d.y);
    return y;
}

ShCoeffs sh_project(const EnvMap& env) {
    const ImageF& img = env.image;
    int w = img.width, h = img.height;
    ShCoeffs out;
    for (int y = 0; y < h; ++y) {
        double domega = pixel_solid_angle(w, h, y);
        double v = (y + 0.5) / h;
        for (int x = 0; x < w; ++x) {
            Vec3 d = pixel_to_direction((x + 0.5) / w, v);
            std::array<double, 9> basis = sh_basis(d);
            for (int c = 0; c < 3; ++c) {
                double e = img.at(x, y, c) * domega;
                for (int i = 0; i < 9; ++i) out.c[i][c] += e * basis[i];
            }
        }
    }
    return out;
}

EnvMap sh_reconstruct(const ShCoeffs& coeffs, int width, int height) {
    ImageF img = make_image(width, height, 3);
    for (int y = 0; y < height; ++y) {
        double v = (y + 0.5) / height;
        for (int x = 0; x < width; ++x) {
            Vec3 d = pixel_to_direction((x + 0.5) / width, v);
            std::array<double, 9> basis = sh_basis(d);
            for (int c = 0; c < 3; ++c) {
                double sum = 0.0;
                for (int i = 0; i < 9; ++i) sum += coeffs.c[i][c] * basis[i];
                img.at(x, y, c) = static_cast<float>(sum);
            }
        }
    }
    return EnvMap{std::move(img)};
}

EnvMap add_envmaps(const EnvMap& a, const EnvMap& b) {
    if (!same_size(a.image, b.image)) throw std::runtime_error("add_envmaps: size mismatch");
    ImageF out = a.image;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.image.data[i];
    return EnvMap{std::move(out)};
}

EnvMap scale_envmap(const EnvMap& a, double s) {
    ImageF out = a.image;
    for (float& v : out.data) v = static_cast<float>(v * s);
    return EnvMap{std::move(out)};
}

}  // namespace ibl
