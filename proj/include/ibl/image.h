#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ibl {

// Row-major float raster holding linear radiance (no gamma), 1 or 3 channels.
struct ImageF {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    float& at(int x, int y, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    const float& at(int x, int y, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
    bool empty() const { return width <= 0 || height <= 0; }
};

// Per-pixel (dx, dy) displacement in pixels, interleaved row-major.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    float dx(int x, int y) const { return data[(static_cast<size_t>(y) * width + x) * 2 + 0]; }
    float dy(int x, int y) const { return data[(static_cast<size_t>(y) * width + x) * 2 + 1]; }
};

ImageF make_image(int width, int height, int channels, float fill = 0.0f);
FlowField make_flow(int width, int height, float dx = 0.0f, float dy = 0.0f);

bool same_size(const ImageF& a, const ImageF& b);

// Sum of |value| over every sample in the image.
double l1_norm(const ImageF& img);

// PFM: "PF"/"Pf" magic, width height, scale (sign encodes endianness, negative
// means little-endian), rows stored bottom-to-top. Lossless float interchange;
// round trips are bit-exact. The scale magnitude is not applied to samples.
ImageF load_pfm(const std::string& path);
void save_pfm(const ImageF& img, const std::string& path);

// Radiance RGBE (.hdr), "-Y h +X w" orientation only. Shared-exponent decode:
// value = mantissa/256 * 2^(e-128). Flat and adaptive RLE scanlines supported.
ImageF load_radiance_hdr(const std::string& path);

// Flow files: magic "FLO1", u32 width, u32 height (little-endian), then
// interleaved float32 (dx, dy) row-major.
FlowField load_flow(const std::string& path);
void save_flow(const FlowField& flow, const std::string& path);

// 8-bit preview: clamp to [0,1], sRGB-encode, write PNG.
void save_png_preview(const ImageF& img, const std::string& path);

}  // namespace ibl
