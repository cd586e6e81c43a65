#pragma once

#include "ibl/prefilter.h"

namespace ibl {

// Per-pixel geometry and material rasters. Normals are stored as
// rgb = (n + 1) / 2; lens_normal equals normal wherever there are no lenses.
struct GBuffer {
    ImageF albedo;       // RGB, >= 0
    ImageF normal;       // RGB-encoded unit vectors
    ImageF lens_normal;  // RGB-encoded unit vectors
    ImageF mask;         // single channel in [0, 1]
};

// Throws unless all rasters agree in size and encoded normals are unit
// length within 1e-3 wherever the mask is nonzero.
void validate_gbuffer(const GBuffer& g);

// 2*rgb - 1, renormalized; the zero vector decodes to +z.
Vec3 decode_normal(float r, float g, float b);

// Per-pixel light maps sampled from a prefiltered set. ls_combined is left
// empty until combine_specular fills it.
struct LightMaps {
    ImageF ld;
    ImageF ls1, ls16, ls32, ls64;
    ImageF ls_lens_1024;
    ImageF ls_combined;
};

// Per-pixel blend weights for the specular channels, single channel each,
// clamped to [0, 1] on construction.
struct SpecWeights {
    ImageF w1, w16, w32, w64, w_lens_1024;

    static SpecWeights constant(int width, int height, double w1, double w16, double w32,
                                double w64, double w_lens_1024);
    // Default blend: w16 = 1, everything else 0.
    static SpecWeights defaults(int width, int height) { return constant(width, height, 0, 1, 0, 0, 0); }
};

struct RenderCoeffs {
    Vec3 cd{1.0, 1.0, 1.0};
    Vec3 cs{1.0, 1.0, 1.0};
};

// View rays used for reflection lookups. Ortho uses +z everywhere; Pinhole
// aims the camera at the canvas with the given horizontal field of view.
struct ViewModel {
    enum class Kind { Ortho, Pinhole };
    Kind kind = Kind::Ortho;
    double fov_deg = 60.0;
};

// Unit vector from the surface toward the camera for the given pixel.
Vec3 view_vector(const ViewModel& view, int x, int y, int width, int height);

// r = 2*(n.v)*n - v, renormalized.
Vec3 reflect(const Vec3& view, const Vec3& normal);

// Index the prefiltered maps: diffuse by the normal, specular by the
// reflection of the view ray, the lens channel by the lens normal.
// Pixels with zero mask come out exactly zero.
LightMaps compute_light_maps(const PrefilteredSet& set, const GBuffer& g,
                             const ViewModel& view = {});

// ls = sum_i w_i * ls_i + w_lens * ls_lens_1024, pixel-wise.
ImageF combine_specular(const LightMaps& lm, const SpecWeights& w);

// R0 = albedo * (cd * ld + cs * ls), per channel.
ImageF compose_coarse(const ImageF& albedo, const ImageF& ld, const ImageF& ls,
                      const RenderCoeffs& coeffs);

struct FinalCompose {
    ImageF image;
    double residual_l1 = 0.0;  // |delta_r|_1, the residual regularizer value
};

// R = max(0, R0 + delta_r) * mask. Pass an empty delta for none.
FinalCompose compose_final(const ImageF& r0, const ImageF& delta_r, const ImageF& mask);

struct RelightOptions {
    int prefilter_width = 256;
    int prefilter_height = 128;
    ViewModel view;
};

// Full pipeline: prefilter, light maps, weighted specular, coarse compose,
// final compose. Linear in the environment map when delta_r is empty.
ImageF relight(const EnvMap& env, const GBuffer& g, const SpecWeights& w,
               const RenderCoeffs& coeffs, const ImageF* delta_r = nullptr,
               const RelightOptions& options = {});

}  // namespace ibl
