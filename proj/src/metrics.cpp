#include "ibl/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ibl {

namespace {

double masked_mean_diff(const ImageF& a, const ImageF& b, const ImageF* mask, bool squared) {
    if (!same_size(a, b)) throw std::runtime_error("metrics: image size mismatch");
    if (mask && (mask->width != a.width || mask->height != a.height || mask->channels != 1))
        throw std::runtime_error("metrics: mask size mismatch");

    double sum = 0.0;
    size_t count = 0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            if (mask && mask->at(x, y) <= 0.5f) continue;
            for (int c = 0; c < a.channels; ++c) {
                double d = static_cast<double>(a.at(x, y, c)) - b.at(x, y, c);
                sum += squared ? d * d : std::fabs(d);
            }
            count += a.channels;
        }
    if (count == 0) throw std::runtime_error("metrics: empty mask");
    return sum / static_cast<double>(count);
}

}  // namespace

double mae(const ImageF& a, const ImageF& b, const ImageF* mask) {
    return masked_mean_diff(a, b, mask, false);
}

double mse(const ImageF& a, const ImageF& b, const ImageF* mask) {
    return masked_mean_diff(a, b, mask, true);
}

double ssim(const ImageF& a, const ImageF& b) {
    if (!same_size(a, b)) throw std::runtime_error("ssim: image size mismatch");
    constexpr int kWindow = 11;
    constexpr int kHalf = kWindow / 2;
    if (a.width < kWindow || a.height < kWindow)
        throw std::runtime_error("ssim: image smaller than the 11x11 window");

    double kernel[kWindow][kWindow];
    double ksum = 0.0;
    const double sigma = 1.5;
    for (int j = 0; j < kWindow; ++j)
        for (int i = 0; i < kWindow; ++i) {
            double dx = i - kHalf, dy = j - kHalf;
            kernel[j][i] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            ksum += kernel[j][i];
        }
    for (int j = 0; j < kWindow; ++j)
        for (int i = 0; i < kWindow; ++i) kernel[j][i] /= ksum;

    const double c1 = 0.01 * 0.01;  // (K1 * L)^2 with L = 1
    const double c2 = 0.03 * 0.03;

    double total = 0.0;
    size_t windows = 0;
    for (int c = 0; c < a.channels; ++c)
        for (int cy = kHalf; cy < a.height - kHalf; ++cy)
            for (int cx = kHalf; cx < a.width - kHalf; ++cx) {
                double mu_x = 0.0, mu_y = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
                for (int j = 0; j < kWindow; ++j)
                    for (int i = 0; i < kWindow; ++i) {
                        double w = kernel[j][i];
                        double x = std::clamp(a.at(cx + i - kHalf, cy + j - kHalf, c), 0.0f, 1.0f);
                        double y = std::clamp(b.at(cx + i - kHalf, cy + j - kHalf, c), 0.0f, 1.0f);
                        mu_x += w * x;
                        mu_y += w * y;
                        xx += w * x * x;
                        yy += w * y * y;
                        xy += w * x * y;
                    }
                double var_x = xx - mu_x * mu_x;
                double var_y = yy - mu_y * mu_y;
                double cov = xy - mu_x * mu_y;
                total += ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) /
                         ((mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2));
                ++windows;
            }
    return total / static_cast<double>(windows);
}

WarpResult warp_bilinear(const ImageF& img, const FlowField& flow) {
    if (flow.width != img.width || flow.height != img.height)
        throw std::runtime_error("warp: flow size mismatch");

    WarpResult result;
    result.image = make_image(img.width, img.height, img.channels);
    result.valid = make_image(img.width, img.height, 1);

    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double sx = x + static_cast<double>(flow.dx(x, y));
            double sy = y + static_cast<double>(flow.dy(x, y));
            if (sx < 0.0 || sx > img.width - 1 || sy < 0.0 || sy > img.height - 1) continue;
            result.valid.at(x, y) = 1.0f;

            int x0 = static_cast<int>(std::floor(sx));
            int y0 = static_cast<int>(std::floor(sy));
            double fx = sx - x0, fy = sy - y0;
            if (fx == 0.0 && fy == 0.0) {
                for (int c = 0; c < img.channels; ++c)
                    result.image.at(x, y, c) = img.at(x0, y0, c);
                continue;
            }
            int x1 = std::min(x0 + 1, img.width - 1);
            int y1 = std::min(y0 + 1, img.height - 1);
            for (int c = 0; c < img.channels; ++c) {
                double v = (1.0 - fy) * ((1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c)) +
                           fy * ((1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c));
                result.image.at(x, y, c) = static_cast<float>(v);
            }
        }
    return result;
}

TemporalError temporal_warp_error(const std::vector<ImageF>& frames,
                                  const std::vector<FlowField>& flows) {
    if (frames.size() < 2) throw std::runtime_error("temporal: need at least two frames");
    if (flows.size() != frames.size() - 1)
        throw std::runtime_error("temporal: need exactly len(frames) - 1 flows");

    TemporalError err;
    for (size_t t = 0; t + 1 < frames.size(); ++t) {
        WarpResult warped = warp_bilinear(frames[t], flows[t]);
        err.mae += mae(warped.image, frames[t + 1], &warped.valid);
        err.mse += mse(warped.image, frames[t + 1], &warped.valid);
    }
    err.mae /= static_cast<double>(flows.size());
    err.mse /= static_cast<double>(flows.size());
    return err;
}

}  // namespace ibl
