#include "ibl/prefilter.h"

#include <cmath>
#include <stdexcept>
#include <vector>

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

// Texel subdivision so the sub-grid spacing stays below the lobe width
// 1/sqrt(n). Rows near the poles subdivide harder: their cells are strongly
// anisotropic and center sampling of kernel * sin(theta) drifts there.
int subdiv_factor(int exponent, int env_height, int row) {
    double s = 4.0 * M_PI * std::sqrt(static_cast<double>(exponent)) / env_height;
    int factor = std::clamp(static_cast<int>(std::ceil(s)), 1, 16);
    int pole_dist = std::min(row, env_height - 1 - row);
    int pole_boost = pole_dist < 2 ? 12 : pole_dist < 4 ? 6 : pole_dist < 8 ? 3 : 1;
    return std::max(factor, pole_boost);
}

struct OutGrid {
    int width = 0, height = 0;
    std::vector<Vec3> dir;      // per pixel
    std::vector<double> theta;  // per row
};

OutGrid make_out_grid(int width, int height) {
    OutGrid g;
    g.width = width;
    g.height = height;
    g.dir.resize(static_cast<size_t>(width) * height);
    g.theta.resize(height);
    for (int y = 0; y < height; ++y) {
        g.theta[y] = M_PI * (y + 0.5) / height;
        for (int x = 0; x < width; ++x)
            g.dir[static_cast<size_t>(y) * width + x] =
                pixel_to_direction((x + 0.5) / width, (y + 0.5) / height);
    }
    return g;
}

// Convolve the environment with max(0, cos)^n / Z_n by scattering each env
// texel into the output pixels inside its kernel support. Per output pixel
// the contributions accumulate in env scan order, so results are
// reproducible bit for bit.
EnvMap convolve_cosine_power(const EnvMap& env, int exponent, int out_width, int out_height) {
    if (exponent < 1) throw std::runtime_error("prefilter: exponent must be >= 1");
    if (out_width <= 0 || out_height <= 0 || out_width != 2 * out_height)
        throw std::runtime_error("prefilter: output must be a nonempty 2:1 lat-long map");

    const ImageF& src = env.image;
    const int w = src.width, h = src.height;
    const double z_n = 2.0 * M_PI / (exponent + 1);
    const double tau = std::pow(1e-6, 1.0 / exponent);
    const double alpha = std::acos(std::min(1.0, tau));

    // Conservative support margin: subtexels stay within half a texel
    // diagonal of the texel center.
    const double half_diag = 0.5 * std::hypot(M_PI / h, 2.0 * M_PI / w);
    const double reach = std::min(M_PI, alpha + half_diag);
    const double cos_reach = std::cos(reach);

    OutGrid out = make_out_grid(out_width, out_height);
    std::vector<double> acc(static_cast<size_t>(out_width) * out_height * 3, 0.0);

    std::vector<Vec3> sub_dir;
    std::vector<double> sub_domega;

    for (int ty = 0; ty < h; ++ty) {
        double theta_c = M_PI * (ty + 0.5) / h;
        double cos_tc = std::cos(theta_c), sin_tc = std::sin(theta_c);
        const int sub = subdiv_factor(exponent, h, ty);
        const double sub_patch = (2.0 * M_PI / (w * sub)) * (M_PI / (h * sub));
        sub_dir.resize(static_cast<size_t>(sub) * sub);
        sub_domega.resize(static_cast<size_t>(sub) * sub);
        for (int tx = 0; tx < w; ++tx) {
            const float* e = &src.at(tx, ty, 0);
            if (e[0] == 0.0f && e[1] == 0.0f && e[2] == 0.0f) continue;

            for (int sj = 0; sj < sub; ++sj)
                for (int si = 0; si < sub; ++si) {
                    double su = (tx + (si + 0.5) / sub) / w;
                    double sv = (ty + (sj + 0.5) / sub) / h;
                    sub_dir[static_cast<size_t>(sj) * sub + si] = pixel_to_direction(su, sv);
                    sub_domega[static_cast<size_t>(sj) * sub + si] =
                        sub_patch * std::sin(M_PI * sv);
                }

            double phi_c = 2.0 * M_PI * ((tx + 0.5) / w - 0.5);

            int row_lo = static_cast<int>(std::floor((theta_c - reach) / M_PI * out_height - 0.5));
            int row_hi = static_cast<int>(std::ceil((theta_c + reach) / M_PI * out_height - 0.5));
            row_lo = std::max(row_lo, 0);
            row_hi = std::min(row_hi, out_height - 1);

            for (int qy = row_lo; qy <= row_hi; ++qy) {
                double theta_q = out.theta[qy];
                double denom = std::sin(theta_q) * sin_tc;
                int col_first = 0, col_count = out_width;
                if (denom > 1e-12) {
                    double rhs = (cos_reach - std::cos(theta_q) * cos_tc) / denom;
                    if (rhs >= 1.0) continue;
                    if (rhs > -1.0) {
                        double dphi = std::acos(rhs);
                        double xc = (phi_c / (2.0 * M_PI) + 0.5) * out_width - 0.5;
                        double hw = dphi / (2.0 * M_PI) * out_width;
                        int c0 = static_cast<int>(std::floor(xc - hw));
                        int c1 = static_cast<int>(std::ceil(xc + hw));
                        col_first = c0;
                        col_count = std::min(out_width, c1 - c0 + 1);
                    }
                }
                for (int k = 0; k < col_count; ++k) {
                    int qx = ((col_first + k) % out_width + out_width) % out_width;
                    const Vec3& q = out.dir[static_cast<size_t>(qy) * out_width + qx];
                    double weight = 0.0;
                    for (int s = 0; s < sub * sub; ++s) {
                        double d = dot(q, sub_dir[s]);
                        if (d > 0.0) weight += pow_int(d, static_cast<unsigned>(exponent)) * sub_domega[s];
                    }
                    if (weight == 0.0) continue;
                    weight /= z_n;
                    double* a = &acc[(static_cast<size_t>(qy) * out_width + qx) * 3];
                    a[0] += e[0] * weight;
                    a[1] += e[1] * weight;
                    a[2] += e[2] * weight;
                }
            }
        }
    }

    ImageF dst = make_image(out_width, out_height, 3);
    for (size_t i = 0; i < acc.size(); ++i) dst.data[i] = static_cast<float>(acc[i]);
    return EnvMap{std::move(dst)};
}

}  // namespace

const EnvMap& PrefilteredSet::spec(int exponent) const {
    for (size_t i = 0; i < kSpecularExponents.size(); ++i)
        if (kSpecularExponents[i] == exponent) return specular[i];
    throw std::runtime_error("PrefilteredSet: no map for exponent " + std::to_string(exponent));
}

EnvMap prefilter_diffuse_bruteforce(const EnvMap& env, int out_width, int out_height) {
    // max(0, cos)/pi is the exponent-1 lobe: Z_1 == pi.
    return convolve_cosine_power(env, 1, out_width, out_height);
}

EnvMap prefilter_diffuse_sh(const EnvMap& env, int out_width, int out_height) {
    if (out_width <= 0 || out_height <= 0) {
        out_width = env.width();
        out_height = env.height();
    }
    ShCoeffs coeffs = sh_project(env);
    for (int i = 0; i < 9; ++i) {
        double gain = kCosineBandGain[kShBand[i]] / M_PI;
        for (int c = 0; c < 3; ++c) coeffs.c[i][c] *= gain;
    }
    return sh_reconstruct(coeffs, out_width, out_height);
}

EnvMap prefilter_specular(const EnvMap& env, int exponent, int out_width, int out_height) {
    return convolve_cosine_power(env, exponent, out_width, out_height);
}

PrefilteredSet prefilter_set(const EnvMap& env, int out_width, int out_height) {
    PrefilteredSet set;
    set.source_width = env.width();
    set.source_height = env.height();
    set.diffuse = prefilter_diffuse_bruteforce(env, out_width, out_height);
    for (size_t i = 0; i < kSpecularExponents.size(); ++i)
        set.specular[i] = prefilter_specular(env, kSpecularExponents[i], out_width, out_height);
    return set;
}

}  // namespace ibl
