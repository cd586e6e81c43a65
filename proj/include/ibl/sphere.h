#pragma once

#include <array>
#include <cmath>

#include "ibl/image.h"

namespace ibl {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
Vec3 normalize(const Vec3& v);

// Lat-long radiance map, width == 2*height, RGB.
//
// Convention: rows span the polar angle from the +y pole (top) to the -y pole
// (bottom); the image center faces +z. See pixel_to_direction.
struct EnvMap {
    ImageF image;

    int width() const { return image.width; }
    int height() const { return image.height; }
};

// Validates 2:1 aspect, 3 channels, finite samples.
EnvMap make_envmap(ImageF img);

// 9 second-order real SH coefficients per RGB channel, ordered
// (0,0) (1,-1) (1,0) (1,1) (2,-2) (2,-1) (2,0) (2,1) (2,2).
struct ShCoeffs {
    std::array<std::array<double, 3>, 9> c{};

    double& at(int i, int ch) { return c[i][ch]; }
    double at(int i, int ch) const { return c[i][ch]; }
};

// SH band index per coefficient slot.
inline constexpr int kShBand[9] = {0, 1, 1, 1, 2, 2, 2, 2, 2};

// Clamped-cosine band gains (pi, 2*pi/3, pi/4): convolving lighting with
// max(0, cos) scales each SH band by these. Classic irradiance-map result;
// verified against numeric quadrature in the tests.
inline constexpr double kCosineBandGain[3] = {M_PI, 2.0 * M_PI / 3.0, M_PI / 4.0};

// theta = pi*v, phi = 2*pi*(u - 0.5), d = (sin t sin p, cos t, sin t cos p).
// (0.5, 0.5) faces +z; the top row is the +y pole.
Vec3 pixel_to_direction(double u, double v);

// Inverse up to the azimuth wrap; u defined as 0.5 at the poles.
void direction_to_pixel(const Vec3& d, double& u, double& v);

// Bilinear lookup with azimuthal wrap in u and clamp in v.
Vec3 sample_bilinear(const EnvMap& env, const Vec3& d);
Vec3 sample_bilinear_uv(const EnvMap& env, double u, double v);

// Steradians covered by one pixel of the given row (all pixels of a row are
// equal): (2*pi/W) * (pi/H) * sin(theta_row) at the row's pixel center.
double pixel_solid_angle(int width, int height, int row);
double solid_angle(const EnvMap& env, int row);

// Content rotated by dphi about the y axis; pixel-aligned shifts are exact
// column rolls, other angles resample bilinearly in u.
EnvMap rotate_azimuth(const EnvMap& env, double dphi);

// Mirror in azimuth (exact column mirror).
EnvMap flip_horizontal(const EnvMap& env);

// Real SH basis up to band 2, evaluated for a unit direction.
std::array<double, 9> sh_basis(const Vec3& d);

// c_i = sum over pixels of E(p) * Y_i(d(p)) * domega(p).
ShCoeffs sh_project(const EnvMap& env);

// E'(d) = sum_i c_i * Y_i(d), rasterized at the given size.
EnvMap sh_reconstruct(const ShCoeffs& coeffs, int width, int height);

EnvMap add_envmaps(const EnvMap& a, const EnvMap& b);
EnvMap scale_envmap(const EnvMap& a, double s);

}  // namespace ibl
