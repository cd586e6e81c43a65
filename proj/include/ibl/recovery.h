#pragma once

#include "ibl/sphere.h"

namespace ibl {

// Inputs for second-order SH lighting recovery: a relit image with its
// estimated albedo and normal maps, and a binary mask selecting skin pixels.
struct RecoveryInput {
    ImageF relit;
    ImageF albedo;
    ImageF normal;     // rgb = (n + 1) / 2
    ImageF skin_mask;  // single channel, {0, 1}
};

// Least-squares fit of relit = albedo * sum_i c_i * gain_i * Y_i(normal) over
// skin pixels, per channel, with a small Tikhonov term. Throws when fewer
// than 9 usable pixels remain or the normals span too little of the sphere.
ShCoeffs recover_sh(const RecoveryInput& input);

// Orthographic unit sphere shaded by the diffuse SH model; background 0.
ImageF render_diffuse_sphere(const ShCoeffs& coeffs, int size);

// Global scale aligning the estimated sphere with the target:
// mean(target) / mean(est) over the disk. Errors when the estimate is black.
double intensity_match(const ImageF& est_sphere, const ImageF& target_sphere);

// Render both coefficient sets, exposure-align the estimate, mean L1 over
// the disk. Invariant to global scaling of the estimate.
double lighting_error(const ShCoeffs& est, const ShCoeffs& target, int size);

// Same metric given already-rendered sphere images.
double lighting_error_spheres(const ImageF& est_sphere, const ImageF& target_sphere);

}  // namespace ibl
