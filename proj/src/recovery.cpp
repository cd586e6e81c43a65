#include "ibl/recovery.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "ibl/shading.h"

namespace ibl {

namespace {

using Mat9 = std::array<std::array<double, 9>, 9>;

// Cyclic Jacobi eigen decomposition for a symmetric 9x9 matrix.
void jacobi_eigen(Mat9 a, std::array<double, 9>& eigenvalues, Mat9& eigenvectors) {
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) eigenvectors[i][j] = i == j ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 9; ++p)
            for (int q = p + 1; q < 9; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;

        for (int p = 0; p < 9; ++p)
            for (int q = p + 1; q < 9; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < 9; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 9; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 9; ++k) {
                    double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
                    eigenvectors[k][p] = c * vkp - s * vkq;
                    eigenvectors[k][q] = s * vkp + c * vkq;
                }
            }
    }
    for (int i = 0; i < 9; ++i) eigenvalues[i] = a[i][i];
}

double irradiance_gain(int slot) { return kCosineBandGain[kShBand[slot]] / M_PI; }

}  // namespace

ShCoeffs recover_sh(const RecoveryInput& input) {
    if (!same_size(input.relit, input.albedo) || !same_size(input.relit, input.normal))
        throw std::runtime_error("recover_sh: raster size mismatch");
    if (input.skin_mask.width != input.relit.width || input.skin_mask.height != input.relit.height ||
        input.skin_mask.channels != 1)
        throw std::runtime_error("recover_sh: mask must be single channel at the raster size");
    if (input.relit.channels != 3)
        throw std::runtime_error("recover_sh: expected RGB rasters");

    // Gather usable pixels and their basis rows (albedo factored in per channel).
    std::vector<std::array<double, 9>> basis_rows;
    std::vector<size_t> pixels;
    for (int y = 0; y < input.relit.height; ++y)
        for (int x = 0; x < input.relit.width; ++x) {
            if (input.skin_mask.at(x, y) <= 0.5f) continue;
            Vec3 n = decode_normal(input.normal.at(x, y, 0), input.normal.at(x, y, 1),
                                   input.normal.at(x, y, 2));
            std::array<double, 9> row = sh_basis(n);
            for (int i = 0; i < 9; ++i) row[i] *= irradiance_gain(i);
            basis_rows.push_back(row);
            pixels.push_back(static_cast<size_t>(y) * input.relit.width + x);
        }
    if (basis_rows.size() < 9)
        throw std::runtime_error("recover_sh: fewer than 9 usable skin pixels");

    ShCoeffs out;
    for (int ch = 0; ch < 3; ++ch) {
        Mat9 ata{};
        std::array<double, 9> atb{};
        for (size_t k = 0; k < basis_rows.size(); ++k) {
            double a_px = input.albedo.data[pixels[k] * 3 + ch];
            double b = input.relit.data[pixels[k] * 3 + ch];
            std::array<double, 9> row;
            for (int i = 0; i < 9; ++i) row[i] = a_px * basis_rows[k][i];
            for (int i = 0; i < 9; ++i) {
                atb[i] += row[i] * b;
                for (int j = i; j < 9; ++j) ata[i][j] += row[i] * row[j];
            }
        }
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < i; ++j) ata[i][j] = ata[j][i];

        double trace = 0.0;
        for (int i = 0; i < 9; ++i) trace += ata[i][i];
        double lambda = 1e-6 * trace / 9.0;

        // Conditioning is judged on the raw normal matrix: the Tikhonov term
        // would cap the regularized condition number near trace/lambda and
        // mask genuinely rank-deficient geometry.
        std::array<double, 9> eig;
        Mat9 vec;
        jacobi_eigen(ata, eig, vec);
        double emax = eig[0], emin = eig[0];
        for (double e : eig) {
            emax = std::max(emax, e);
            emin = std::min(emin, e);
        }
        if (emin <= 0.0 || emax / emin > 1e8)
            throw std::runtime_error(
                "recover_sh: degenerate geometry (normals span too little of the sphere)");
        for (double& e : eig) e += lambda;

        // c = V diag(1/eig) V^T atb
        std::array<double, 9> tmp{};
        for (int i = 0; i < 9; ++i) {
            for (int k = 0; k < 9; ++k) tmp[i] += vec[k][i] * atb[k];
            tmp[i] /= eig[i];
        }
        for (int i = 0; i < 9; ++i) {
            double c = 0.0;
            for (int k = 0; k < 9; ++k) c += vec[i][k] * tmp[k];
            out.c[i][ch] = c;
        }
    }
    return out;
}

ImageF render_diffuse_sphere(const ShCoeffs& coeffs, int size) {
    if (size < 2) throw std::runtime_error("render_diffuse_sphere: size too small");
    ImageF img = make_image(size, size, 3);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double px = 2.0 * (x + 0.5) / size - 1.0;
            double py = 1.0 - 2.0 * (y + 0.5) / size;
            double rr = px * px + py * py;
            if (rr > 1.0) continue;
            Vec3 n{px, py, std::sqrt(1.0 - rr)};
            std::array<double, 9> basis = sh_basis(n);
            for (int c = 0; c < 3; ++c) {
                double v = 0.0;
                for (int i = 0; i < 9; ++i) v += coeffs.c[i][c] * irradiance_gain(i) * basis[i];
                img.at(x, y, c) = static_cast<float>(v);
            }
        }
    return img;
}

namespace {

bool on_disk(int x, int y, int size) {
    double px = 2.0 * (x + 0.5) / size - 1.0;
    double py = 1.0 - 2.0 * (y + 0.5) / size;
    return px * px + py * py <= 1.0;
}

}  // namespace

double intensity_match(const ImageF& est_sphere, const ImageF& target_sphere) {
    if (!same_size(est_sphere, target_sphere) || est_sphere.width != est_sphere.height)
        throw std::runtime_error("intensity_match: sphere renderings must match and be square");
    double sum_est = 0.0, sum_target = 0.0;
    size_t count = 0;
    int size = est_sphere.width;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            if (!on_disk(x, y, size)) continue;
            for (int c = 0; c < est_sphere.channels; ++c) {
                sum_est += est_sphere.at(x, y, c);
                sum_target += target_sphere.at(x, y, c);
            }
            ++count;
        }
    if (count == 0) throw std::runtime_error("intensity_match: no disk pixels");
    double mean_est = sum_est / (count * est_sphere.channels);
    if (mean_est <= 1e-12)
        throw std::runtime_error("intensity_match: estimated sphere has no intensity");
    return (sum_target / (count * target_sphere.channels)) / mean_est;
}

double lighting_error_spheres(const ImageF& est_sphere, const ImageF& target_sphere) {
    double s = intensity_match(est_sphere, target_sphere);
    int size = est_sphere.width;
    double sum = 0.0;
    size_t count = 0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            if (!on_disk(x, y, size)) continue;
            for (int c = 0; c < est_sphere.channels; ++c)
                sum += std::fabs(s * est_sphere.at(x, y, c) - target_sphere.at(x, y, c));
            count += est_sphere.channels;
        }
    return sum / static_cast<double>(count);
}

double lighting_error(const ShCoeffs& est, const ShCoeffs& target, int size) {
    return lighting_error_spheres(render_diffuse_sphere(est, size),
                                  render_diffuse_sphere(target, size));
}

}  // namespace ibl
