#include "ibl/olat.h"

#include <cmath>
#include <stdexcept>

namespace ibl {

std::vector<Vec3> fibonacci_sphere(int count) {
    if (count < 1) throw std::runtime_error("fibonacci_sphere: count must be >= 1");
    if (count == 1) return {{0.0, 1.0, 0.0}};

    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Vec3> dirs;
    dirs.reserve(count);
    for (int i = 0; i < count; ++i) {
        double y = 1.0 - (2.0 * i + 1.0) / count;
        double r = std::sqrt(std::max(0.0, 1.0 - y * y));
        double phi = i * golden_angle;
        dirs.push_back({r * std::sin(phi), y, r * std::cos(phi)});
    }
    return dirs;
}

EnvMap make_olat_map(const Vec3& center, const OlatSpec& spec) {
    if (spec.width != 2 * spec.height || spec.height < 1)
        throw std::runtime_error("olat: resolution must be a 2:1 lat-long map");
    if (spec.angular_radius <= 0.0 || spec.angular_radius > M_PI)
        throw std::runtime_error("olat: angular radius out of range");
    if (2.0 * spec.angular_radius < M_PI / spec.height)
        throw std::runtime_error(
            "olat: cap smaller than one pixel at this resolution; increase the resolution");

    Vec3 c = normalize(center);
    const int w = spec.width, h = spec.height;
    const double cos_r = std::cos(spec.angular_radius);
    // Texels straddling the cap edge get solid-angle-weighted coverage;
    // without it the boundary quantizes coherently for caps centered near a
    // pole and the flux drifts by several percent.
    const double half_diag = 0.5 * std::hypot(M_PI / h, 2.0 * M_PI / w);
    const int sub = 16;

    ImageF img = make_image(w, h, 3);
    size_t lit = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            Vec3 d = pixel_to_direction((x + 0.5) / w, (y + 0.5) / h);
            double angle = std::acos(std::clamp(dot(d, c), -1.0, 1.0));
            double value = 0.0;
            if (angle <= spec.angular_radius - half_diag) {
                value = spec.intensity;
            } else if (angle < spec.angular_radius + half_diag) {
                double inside = 0.0, total = 0.0;
                for (int sj = 0; sj < sub; ++sj) {
                    double sv = (y + (sj + 0.5) / sub) / h;
                    double dom = std::sin(M_PI * sv);
                    for (int si = 0; si < sub; ++si) {
                        Vec3 sd = pixel_to_direction((x + (si + 0.5) / sub) / w, sv);
                        total += dom;
                        if (dot(sd, c) >= cos_r) inside += dom;
                    }
                }
                value = spec.intensity * inside / total;
            }
            if (value > 0.0) {
                for (int ch = 0; ch < 3; ++ch) img.at(x, y, ch) = static_cast<float>(value);
                ++lit;
            }
        }
    if (lit == 0)
        throw std::runtime_error(
            "olat: cap fell between pixel centers; increase the resolution");
    return EnvMap{std::move(img)};
}

std::vector<EnvMap> generate_olat_set(const OlatSpec& spec) {
    if (spec.count < 1) throw std::runtime_error("olat: count must be >= 1");
    if (spec.angular_radius <= 0.0 || spec.angular_radius >= M_PI / 4.0)
        throw std::runtime_error("olat: set lights need 0 < angular radius < pi/4");

    std::vector<Vec3> centers = fibonacci_sphere(spec.count);
    std::vector<EnvMap> maps;
    maps.reserve(centers.size());
    for (const Vec3& c : centers) maps.push_back(make_olat_map(c, spec));
    return maps;
}

namespace {

double masked_mean_abs(const ImageF& img, const ImageF* mask) {
    if (mask && (mask->width != img.width || mask->height != img.height || mask->channels != 1))
        throw std::runtime_error("consistency: mask size mismatch");
    double sum = 0.0;
    size_t count = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            if (mask && mask->at(x, y) <= 0.5f) continue;
            for (int c = 0; c < img.channels; ++c) sum += std::fabs(static_cast<double>(img.at(x, y, c)));
            count += img.channels;
        }
    if (count == 0) throw std::runtime_error("consistency: empty mask");
    return sum / static_cast<double>(count);
}

}  // namespace

double olat_consistency(const RelightFn& fn, const EnvMap& e1, const EnvMap& e2,
                        const ImageF* mask) {
    if (!same_size(e1.image, e2.image))
        throw std::runtime_error("olat_consistency: environment size mismatch");
    ImageF r1 = fn(e1);
    ImageF r2 = fn(e2);
    ImageF r12 = fn(add_envmaps(e1, e2));
    if (!same_size(r1, r2) || !same_size(r1, r12))
        throw std::runtime_error("olat_consistency: relight output size mismatch");

    ImageF diff = make_image(r1.width, r1.height, r1.channels);
    for (size_t i = 0; i < diff.data.size(); ++i)
        diff.data[i] = static_cast<float>(static_cast<double>(r1.data[i]) + r2.data[i] - r12.data[i]);
    return masked_mean_abs(diff, mask);
}

double relative_consistency(const ImageF& ri, const ImageF& rj, const ImageF& ri_bar,
                            const ImageF& rj_bar, const ImageF* mask) {
    if (!same_size(ri, rj) || !same_size(ri, ri_bar) || !same_size(ri, rj_bar))
        throw std::runtime_error("relative_consistency: image size mismatch");
    ImageF diff = make_image(ri.width, ri.height, ri.channels);
    for (size_t i = 0; i < diff.data.size(); ++i)
        diff.data[i] = static_cast<float>((static_cast<double>(ri.data[i]) - rj.data[i]) -
                                          (static_cast<double>(ri_bar.data[i]) - rj_bar.data[i]));
    return masked_mean_abs(diff, mask);
}

}  // namespace ibl
