#include "ibl/shading.h"

#include <cmath>
#include <stdexcept>

namespace ibl {

void validate_gbuffer(const GBuffer& g) {
    if (g.albedo.empty()) throw std::runtime_error("gbuffer: empty albedo");
    if (!same_size(g.albedo, g.normal) || !same_size(g.albedo, g.lens_normal))
        throw std::runtime_error("gbuffer: raster size mismatch");
    if (g.mask.width != g.albedo.width || g.mask.height != g.albedo.height ||
        g.mask.channels != 1)
        throw std::runtime_error("gbuffer: mask must be single channel at the raster size");
    if (g.albedo.channels != 3 || g.normal.channels != 3)
        throw std::runtime_error("gbuffer: albedo and normals must be RGB");

    for (int y = 0; y < g.normal.height; ++y)
        for (int x = 0; x < g.normal.width; ++x) {
            if (g.mask.at(x, y) <= 0.0f) continue;
            Vec3 n{2.0 * g.normal.at(x, y, 0) - 1.0, 2.0 * g.normal.at(x, y, 1) - 1.0,
                   2.0 * g.normal.at(x, y, 2) - 1.0};
            if (std::fabs(norm(n) - 1.0) > 1e-3)
                throw std::runtime_error("gbuffer: non-unit normal inside mask at " +
                                         std::to_string(x) + "," + std::to_string(y));
        }
}

Vec3 decode_normal(float r, float g, float b) {
    Vec3 n{2.0 * r - 1.0, 2.0 * g - 1.0, 2.0 * b - 1.0};
    return normalize(n);  // zero vector falls back to +z
}

SpecWeights SpecWeights::constant(int width, int height, double w1, double w16, double w32,
                                  double w64, double w_lens_1024) {
    auto clamped = [&](double v) {
        return make_image(width, height, 1, static_cast<float>(std::clamp(v, 0.0, 1.0)));
    };
    SpecWeights w;
    w.w1 = clamped(w1);
    w.w16 = clamped(w16);
    w.w32 = clamped(w32);
    w.w64 = clamped(w64);
    w.w_lens_1024 = clamped(w_lens_1024);
    return w;
}

Vec3 view_vector(const ViewModel& view, int x, int y, int width, int height) {
    if (view.kind == ViewModel::Kind::Ortho) return {0.0, 0.0, 1.0};
    double tan_half = std::tan(view.fov_deg * M_PI / 180.0 / 2.0);
    double ndc_x = (2.0 * (x + 0.5) / width - 1.0) * tan_half;
    double ndc_y = (1.0 - 2.0 * (y + 0.5) / height) * tan_half * height / width;
    return normalize({-ndc_x, -ndc_y, 1.0});
}

Vec3 reflect(const Vec3& view, const Vec3& normal) {
    double nv = dot(normal, view);
    return normalize({2.0 * nv * normal.x - view.x, 2.0 * nv * normal.y - view.y,
                      2.0 * nv * normal.z - view.z});
}

LightMaps compute_light_maps(const PrefilteredSet& set, const GBuffer& g, const ViewModel& view) {
    validate_gbuffer(g);
    int w = g.albedo.width, h = g.albedo.height;
    if (set.diffuse.image.empty()) throw std::runtime_error("light maps: empty prefiltered set");
    for (const EnvMap& m : set.specular)
        if (!same_size(m.image, set.diffuse.image))
            throw std::runtime_error("light maps: prefiltered maps disagree in resolution");

    LightMaps lm;
    lm.ld = make_image(w, h, 3);
    lm.ls1 = make_image(w, h, 3);
    lm.ls16 = make_image(w, h, 3);
    lm.ls32 = make_image(w, h, 3);
    lm.ls64 = make_image(w, h, 3);
    lm.ls_lens_1024 = make_image(w, h, 3);

    ImageF* spec_out[4] = {&lm.ls1, &lm.ls16, &lm.ls32, &lm.ls64};

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (g.mask.at(x, y) <= 0.0f) continue;
            Vec3 n = decode_normal(g.normal.at(x, y, 0), g.normal.at(x, y, 1), g.normal.at(x, y, 2));
            Vec3 nl = decode_normal(g.lens_normal.at(x, y, 0), g.lens_normal.at(x, y, 1),
                                    g.lens_normal.at(x, y, 2));
            Vec3 v = view_vector(view, x, y, w, h);

            Vec3 ld = sample_bilinear(set.diffuse, n);
            lm.ld.at(x, y, 0) = static_cast<float>(ld.x);
            lm.ld.at(x, y, 1) = static_cast<float>(ld.y);
            lm.ld.at(x, y, 2) = static_cast<float>(ld.z);

            Vec3 r = reflect(v, n);
            for (int i = 0; i < 4; ++i) {
                Vec3 ls = sample_bilinear(set.specular[i], r);
                spec_out[i]->at(x, y, 0) = static_cast<float>(ls.x);
                spec_out[i]->at(x, y, 1) = static_cast<float>(ls.y);
                spec_out[i]->at(x, y, 2) = static_cast<float>(ls.z);
            }

            Vec3 rl = reflect(v, nl);
            Vec3 ls_lens = sample_bilinear(set.specular[4], rl);
            lm.ls_lens_1024.at(x, y, 0) = static_cast<float>(ls_lens.x);
            lm.ls_lens_1024.at(x, y, 1) = static_cast<float>(ls_lens.y);
            lm.ls_lens_1024.at(x, y, 2) = static_cast<float>(ls_lens.z);
        }
    return lm;
}

ImageF combine_specular(const LightMaps& lm, const SpecWeights& w) {
    const ImageF* maps[5] = {&lm.ls1, &lm.ls16, &lm.ls32, &lm.ls64, &lm.ls_lens_1024};
    const ImageF* weights[5] = {&w.w1, &w.w16, &w.w32, &w.w64, &w.w_lens_1024};

    int width = lm.ls1.width, height = lm.ls1.height;
    for (int i = 0; i < 5; ++i) {
        if (maps[i]->width != width || maps[i]->height != height || maps[i]->channels != 3)
            throw std::runtime_error("combine_specular: light map size mismatch");
        if (weights[i]->width != width || weights[i]->height != height || weights[i]->channels != 1)
            throw std::runtime_error("combine_specular: weight raster size mismatch");
    }

    ImageF out = make_image(width, height, 3);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < 3; ++c) {
                double sum = 0.0;
                for (int i = 0; i < 5; ++i)
                    sum += static_cast<double>(weights[i]->at(x, y)) * maps[i]->at(x, y, c);
                out.at(x, y, c) = static_cast<float>(sum);
            }
    return out;
}

ImageF compose_coarse(const ImageF& albedo, const ImageF& ld, const ImageF& ls,
                      const RenderCoeffs& coeffs) {
    if (!same_size(albedo, ld) || !same_size(albedo, ls))
        throw std::runtime_error("compose_coarse: raster size mismatch");
    const double cd[3] = {coeffs.cd.x, coeffs.cd.y, coeffs.cd.z};
    const double cs[3] = {coeffs.cs.x, coeffs.cs.y, coeffs.cs.z};

    ImageF out = make_image(albedo.width, albedo.height, 3);
    for (size_t p = 0; p < albedo.pixel_count(); ++p)
        for (int c = 0; c < 3; ++c) {
            size_t i = p * 3 + c;
            out.data[i] = static_cast<float>(
                albedo.data[i] * (cd[c] * ld.data[i] + cs[c] * ls.data[i]));
        }
    return out;
}

FinalCompose compose_final(const ImageF& r0, const ImageF& delta_r, const ImageF& mask) {
    bool has_delta = !delta_r.empty();
    if (has_delta && !same_size(r0, delta_r))
        throw std::runtime_error("compose_final: residual size mismatch");
    if (mask.width != r0.width || mask.height != r0.height || mask.channels != 1)
        throw std::runtime_error("compose_final: mask size mismatch");

    FinalCompose result;
    result.image = make_image(r0.width, r0.height, r0.channels);
    if (has_delta) result.residual_l1 = l1_norm(delta_r);

    for (int y = 0; y < r0.height; ++y)
        for (int x = 0; x < r0.width; ++x) {
            float m = mask.at(x, y);
            for (int c = 0; c < r0.channels; ++c) {
                float v = r0.at(x, y, c) + (has_delta ? delta_r.at(x, y, c) : 0.0f);
                result.image.at(x, y, c) = std::max(0.0f, v) * m;
            }
        }
    return result;
}

ImageF relight(const EnvMap& env, const GBuffer& g, const SpecWeights& w,
               const RenderCoeffs& coeffs, const ImageF* delta_r, const RelightOptions& options) {
    PrefilteredSet set = prefilter_set(env, options.prefilter_width, options.prefilter_height);
    LightMaps lm = compute_light_maps(set, g, options.view);
    lm.ls_combined = combine_specular(lm, w);
    ImageF r0 = compose_coarse(g.albedo, lm.ld, lm.ls_combined, coeffs);
    return compose_final(r0, delta_r ? *delta_r : ImageF{}, g.mask).image;
}

}  // namespace ibl
