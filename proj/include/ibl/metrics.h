#pragma once

#include <vector>

#include "ibl/image.h"

namespace ibl {

// Mean absolute / squared per-channel difference, optionally restricted to
// pixels where the single-channel mask exceeds 0.5.
double mae(const ImageF& a, const ImageF& b, const ImageF* mask = nullptr);
double mse(const ImageF& a, const ImageF& b, const ImageF* mask = nullptr);

// Windowed SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
// data range 1.0 on values clamped to [0, 1]; mean over windows fully inside
// the frame, channels averaged. Errors if the image is smaller than a window.
double ssim(const ImageF& a, const ImageF& b);

struct WarpResult {
    ImageF image;
    ImageF valid;  // single channel, 1 where all bilinear taps were in frame
};

// Backward warp: out(p) = bilinear sample of img at p + flow(p).
WarpResult warp_bilinear(const ImageF& img, const FlowField& flow);

struct TemporalError {
    double mae = 0.0;
    double mse = 0.0;
};

// Mean over consecutive pairs of the error between the flow-warped frame t
// and frame t+1, restricted to validly warped pixels.
TemporalError temporal_warp_error(const std::vector<ImageF>& frames,
                                  const std::vector<FlowField>& flows);

}  // namespace ibl
