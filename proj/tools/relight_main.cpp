// relightkit: every pipeline stage behind one executable. Numeric results go
// to stdout as key=value lines with six significant digits; exit codes are
// 0 on success, 1 on usage errors, 2 on data errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ibl/metrics.h"
#include "ibl/olat.h"
#include "ibl/oracle.h"
#include "ibl/recovery.h"
#include "ibl/shading.h"

namespace fs = std::filesystem;
using namespace ibl;

namespace {

void print_kv(const std::string& key, double value) {
    std::printf("%s=%.6g\n", key.c_str(), value);
}

ImageF load_image(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    if (ext == ".hdr") return load_radiance_hdr(path);
    return load_pfm(path);
}

EnvMap load_env(const std::string& path) { return make_envmap(load_image(path)); }

Vec3 parse_rgb(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    std::vector<double> values;
    while (std::getline(ss, part, ',')) values.push_back(std::stod(part));
    if (values.size() == 1) return {values[0], values[0], values[0]};
    if (values.size() == 3) return {values[0], values[1], values[2]};
    throw std::runtime_error("expected one or three comma-separated values, got '" + text + "'");
}

ViewModel parse_view(const std::string& text) {
    if (text == "ortho") return {};
    if (text.rfind("pinhole:", 0) == 0)
        return {ViewModel::Kind::Pinhole, std::stod(text.substr(8))};
    throw std::runtime_error("view must be 'ortho' or 'pinhole:FOV', got '" + text + "'");
}

// Weight config: one `key=value` per line for w1, w16, w32, w64, w1024;
// values are either a scalar or a path to a single-channel PFM.
SpecWeights load_weights(const std::string& path, int width, int height) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open weight config");

    SpecWeights weights = SpecWeights::defaults(width, height);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);

        ImageF* slot = nullptr;
        if (key == "w1") slot = &weights.w1;
        else if (key == "w16") slot = &weights.w16;
        else if (key == "w32") slot = &weights.w32;
        else if (key == "w64") slot = &weights.w64;
        else if (key == "w1024") slot = &weights.w_lens_1024;
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                     "' (expected w1, w16, w32, w64, w1024)");

        char* end = nullptr;
        double scalar = std::strtod(value.c_str(), &end);
        if (end && *end == '\0' && end != value.c_str()) {
            *slot = make_image(width, height, 1,
                               static_cast<float>(std::clamp(scalar, 0.0, 1.0)));
        } else {
            ImageF raster = load_pfm(value);
            if (raster.width != width || raster.height != height || raster.channels != 1)
                throw std::runtime_error(value + ": weight raster must be single channel at " +
                                         std::to_string(width) + "x" + std::to_string(height));
            for (float& v : raster.data) v = std::clamp(v, 0.0f, 1.0f);
            *slot = std::move(raster);
        }
    }
    return weights;
}

void save_coeff_table(const ShCoeffs& coeffs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    for (int i = 0; i < 9; ++i) {
        char line[128];
        std::snprintf(line, sizeof(line), "%.9g %.9g %.9g\n", coeffs.c[i][0], coeffs.c[i][1],
                      coeffs.c[i][2]);
        out << line;
    }
}

ShCoeffs load_coeff_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open coefficient table");
    ShCoeffs coeffs;
    for (int i = 0; i < 9; ++i)
        for (int c = 0; c < 3; ++c)
            if (!(in >> coeffs.c[i][c]))
                throw std::runtime_error(path + ": expected a 9x3 table of coefficients");
    return coeffs;
}

struct GBufferPaths {
    std::string albedo, normal, lens_normal, mask;
};

GBuffer load_gbuffer(const GBufferPaths& paths) {
    GBuffer g;
    g.albedo = load_image(paths.albedo);
    g.normal = load_image(paths.normal);
    g.lens_normal = paths.lens_normal.empty() ? g.normal : load_image(paths.lens_normal);
    g.mask = paths.mask.empty() ? make_image(g.albedo.width, g.albedo.height, 1, 1.0f)
                                : load_image(paths.mask);
    validate_gbuffer(g);
    return g;
}

void parse_size(const std::string& text, int& width, int& height) {
    size_t x = text.find('x');
    if (x == std::string::npos)
        throw std::runtime_error("expected WIDTHxHEIGHT, got '" + text + "'");
    width = std::stoi(text.substr(0, x));
    height = std::stoi(text.substr(x + 1));
}

int run_command(const std::vector<std::string>& args);

// ---------------------------------------------------------------------------

struct FixturesOpts {
    std::string kind, out;
    int width = 64, height = 32;
    uint32_t seed = 0;
};

void setup_fixtures(CLI::App& app) {
    auto opts = std::make_shared<FixturesOpts>();
    CLI::App* sub = app.add_subcommand("fixtures", "Write a procedural test environment map");
    sub->add_option("--kind", opts->kind, "gradient-sky | single-lobe | band-limited-random")
        ->required();
    sub->add_option("--width", opts->width, "Map width (2x height)");
    sub->add_option("--height", opts->height, "Map height");
    sub->add_option("--seed", opts->seed, "Seed for band-limited-random");
    sub->add_option("--out", opts->out, "Output PFM path")->required();
    sub->callback([opts] {
        EnvMap env = make_fixture(fixture_kind_from_name(opts->kind), opts->width, opts->height,
                                  opts->seed);
        save_pfm(env.image, opts->out);
    });
}

struct PrefilterOpts {
    std::string env, out, diffuse_mode = "brute";
    int width = 0, height = 0;
};

void setup_prefilter(CLI::App& app) {
    auto opts = std::make_shared<PrefilterOpts>();
    CLI::App* sub = app.add_subcommand("prefilter", "Precompute diffuse and specular maps");
    sub->add_option("--env", opts->env, "Environment map (.pfm or .hdr)")->required();
    sub->add_option("--out", opts->out, "Output prefix; writes PREFIX_diffuse.pfm etc.")
        ->required();
    sub->add_option("--width", opts->width, "Output width (default 64, 256 for n=1024)");
    sub->add_option("--height", opts->height, "Output height");
    sub->add_option("--diffuse", opts->diffuse_mode, "Diffuse path: brute | sh");
    sub->callback([opts] {
        EnvMap env = load_env(opts->env);
        bool explicit_size = opts->width > 0 && opts->height > 0;

        int w = explicit_size ? opts->width : 64;
        int h = explicit_size ? opts->height : 32;
        EnvMap diffuse = opts->diffuse_mode == "sh" ? prefilter_diffuse_sh(env, w, h)
                                                    : prefilter_diffuse_bruteforce(env, w, h);
        save_pfm(diffuse.image, opts->out + "_diffuse.pfm");
        for (int n : kSpecularExponents) {
            // The 1024 lobe is sharp; give it resolution unless told otherwise.
            int sw = explicit_size ? opts->width : (n == 1024 ? 256 : 64);
            int sh = explicit_size ? opts->height : (n == 1024 ? 128 : 32);
            EnvMap spec = prefilter_specular(env, n, sw, sh);
            save_pfm(spec.image, opts->out + "_spec" + std::to_string(n) + ".pfm");
        }
    });
}

struct RelightOpts {
    std::string env, albedo, normal, lens_normal, mask, weights, delta, out, preview;
    std::string cd = "1", cs = "1", view = "ortho", prefilter_size = "256x128";
};

void setup_relight(CLI::App& app) {
    auto opts = std::make_shared<RelightOpts>();
    CLI::App* sub = app.add_subcommand("relight", "Relight a geometry buffer under an environment");
    sub->add_option("--env", opts->env)->required();
    sub->add_option("--albedo", opts->albedo)->required();
    sub->add_option("--normal", opts->normal)->required();
    sub->add_option("--lens-normal", opts->lens_normal, "Defaults to --normal");
    sub->add_option("--mask", opts->mask, "Defaults to all ones");
    sub->add_option("--weights", opts->weights, "Weight config (default w16=1)");
    sub->add_option("--cd", opts->cd, "Diffuse coefficient, scalar or r,g,b");
    sub->add_option("--cs", opts->cs, "Specular coefficient, scalar or r,g,b");
    sub->add_option("--delta", opts->delta, "Residual PFM added before masking");
    sub->add_option("--view", opts->view, "ortho | pinhole:FOV");
    sub->add_option("--prefilter-size", opts->prefilter_size, "Prefiltered map size WxH");
    sub->add_option("--out", opts->out, "Output PFM")->required();
    sub->add_option("--preview", opts->preview, "Optional 8-bit PNG preview");
    sub->callback([opts] {
        EnvMap env = load_env(opts->env);
        GBuffer g = load_gbuffer({opts->albedo, opts->normal, opts->lens_normal, opts->mask});

        SpecWeights weights =
            opts->weights.empty() ? SpecWeights::defaults(g.albedo.width, g.albedo.height)
                                  : load_weights(opts->weights, g.albedo.width, g.albedo.height);
        RenderCoeffs coeffs{parse_rgb(opts->cd), parse_rgb(opts->cs)};

        RelightOptions ropts;
        parse_size(opts->prefilter_size, ropts.prefilter_width, ropts.prefilter_height);
        ropts.view = parse_view(opts->view);

        PrefilteredSet set = prefilter_set(env, ropts.prefilter_width, ropts.prefilter_height);
        LightMaps lm = compute_light_maps(set, g, ropts.view);
        lm.ls_combined = combine_specular(lm, weights);
        ImageF r0 = compose_coarse(g.albedo, lm.ld, lm.ls_combined, coeffs);
        ImageF delta = opts->delta.empty() ? ImageF{} : load_image(opts->delta);
        FinalCompose final = compose_final(r0, delta, g.mask);

        save_pfm(final.image, opts->out);
        if (!opts->preview.empty()) save_png_preview(final.image, opts->preview);
        if (!opts->delta.empty()) print_kv("residual_l1", final.residual_l1);
    });
}

struct OlatGenOpts {
    std::string out;
    OlatSpec spec;
};

void setup_olat_gen(CLI::App& app) {
    auto opts = std::make_shared<OlatGenOpts>();
    CLI::App* sub = app.add_subcommand("olat-gen", "Write an OLAT environment set plus manifest");
    sub->add_option("--out", opts->out, "Output directory")->required();
    sub->add_option("--count", opts->spec.count);
    sub->add_option("--radius", opts->spec.angular_radius, "Cap radius in radians");
    sub->add_option("--intensity", opts->spec.intensity);
    sub->add_option("--width", opts->spec.width);
    sub->add_option("--height", opts->spec.height);
    sub->callback([opts] {
        fs::create_directories(opts->out);
        std::vector<Vec3> centers = fibonacci_sphere(opts->spec.count);
        std::ofstream manifest(fs::path(opts->out) / "manifest.txt");
        if (!manifest) throw std::runtime_error(opts->out + ": cannot write manifest");
        for (size_t i = 0; i < centers.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "olat_%03zu.pfm", i);
            save_pfm(make_olat_map(centers[i], opts->spec).image,
                     (fs::path(opts->out) / name).string());
            char line[128];
            std::snprintf(line, sizeof(line), "%zu %s %.9g %.9g %.9g\n", i, name, centers[i].x,
                          centers[i].y, centers[i].z);
            manifest << line;
        }
        print_kv("count", static_cast<double>(centers.size()));
    });
}

struct OlatCheckOpts {
    std::string env_dir;
    GBufferPaths gbuffer;
    OlatSpec spec{168, 0.1, 50.0, 256, 128};
    int pairs = 50, sphere_size = 48;
    uint32_t seed = 0;
    std::string prefilter_size = "64x32";
};

void setup_olat_check(CLI::App& app) {
    auto opts = std::make_shared<OlatCheckOpts>();
    CLI::App* sub = app.add_subcommand(
        "olat-check", "Linearity certificate: relight OLAT pairs and their sums");
    sub->add_option("--env-dir", opts->env_dir, "OLAT directory with manifest.txt (else generated)");
    sub->add_option("--count", opts->spec.count);
    sub->add_option("--radius", opts->spec.angular_radius);
    sub->add_option("--intensity", opts->spec.intensity);
    sub->add_option("--width", opts->spec.width);
    sub->add_option("--height", opts->spec.height);
    sub->add_option("--pairs", opts->pairs);
    sub->add_option("--seed", opts->seed);
    sub->add_option("--albedo", opts->gbuffer.albedo, "GBuffer rasters (else an internal sphere)");
    sub->add_option("--normal", opts->gbuffer.normal);
    sub->add_option("--lens-normal", opts->gbuffer.lens_normal);
    sub->add_option("--mask", opts->gbuffer.mask);
    sub->add_option("--sphere-size", opts->sphere_size, "Internal sphere gbuffer size");
    sub->add_option("--prefilter-size", opts->prefilter_size);
    sub->callback([opts] {
        std::vector<EnvMap> maps;
        if (!opts->env_dir.empty()) {
            std::ifstream manifest(fs::path(opts->env_dir) / "manifest.txt");
            if (!manifest)
                throw std::runtime_error(opts->env_dir + ": missing manifest.txt (run olat-gen)");
            size_t index;
            std::string name;
            double x, y, z;
            while (manifest >> index >> name >> x >> y >> z)
                maps.push_back(load_env((fs::path(opts->env_dir) / name).string()));
        } else {
            maps = generate_olat_set(opts->spec);
        }
        if (maps.size() < 2) throw std::runtime_error("olat-check: need at least two maps");

        GBuffer g;
        if (!opts->gbuffer.albedo.empty()) {
            g = load_gbuffer(opts->gbuffer);
        } else {
            EnvMap black = make_envmap(make_image(32, 16, 3, 0.0f));
            g = render_sphere_bruteforce(OracleScene{}, black, opts->sphere_size).gbuffer;
        }

        RelightOptions ropts;
        parse_size(opts->prefilter_size, ropts.prefilter_width, ropts.prefilter_height);
        SpecWeights weights = SpecWeights::constant(g.albedo.width, g.albedo.height,
                                                    0.2, 0.2, 0.2, 0.2, 0.2);
        RelightFn coarse = [&](const EnvMap& e) {
            return relight(e, g, weights, {}, nullptr, ropts);
        };

        std::mt19937 rng(opts->seed);
        std::uniform_int_distribution<size_t> pick(0, maps.size() - 1);
        double mean = 0.0, worst = 0.0;
        for (int p = 0; p < opts->pairs; ++p) {
            size_t i = pick(rng), j = pick(rng);
            while (j == i) j = pick(rng);
            double err = olat_consistency(coarse, maps[i], maps[j], &g.mask);
            mean += err;
            worst = std::max(worst, err);
        }
        mean /= opts->pairs;
        print_kv("pairs", opts->pairs);
        print_kv("mean", mean);
        print_kv("max", worst);
    });
}

struct ShRecoverOpts {
    std::string relit, albedo, normal, mask, out_coeffs, out_sphere, preview;
    int sphere_size = 64;
};

void setup_sh_recover(CLI::App& app) {
    auto opts = std::make_shared<ShRecoverOpts>();
    CLI::App* sub = app.add_subcommand("sh-recover", "Recover SH lighting from a relit image");
    sub->add_option("--relit", opts->relit)->required();
    sub->add_option("--albedo", opts->albedo)->required();
    sub->add_option("--normal", opts->normal)->required();
    sub->add_option("--mask", opts->mask, "Skin mask")->required();
    sub->add_option("--out-coeffs", opts->out_coeffs, "9x3 text table")->required();
    sub->add_option("--out-sphere", opts->out_sphere, "Optional sphere rendering PFM");
    sub->add_option("--sphere-size", opts->sphere_size);
    sub->add_option("--preview", opts->preview, "Optional PNG of the sphere");
    sub->callback([opts] {
        RecoveryInput input{load_image(opts->relit), load_image(opts->albedo),
                            load_image(opts->normal), load_image(opts->mask)};
        ShCoeffs coeffs = recover_sh(input);
        save_coeff_table(coeffs, opts->out_coeffs);
        if (!opts->out_sphere.empty() || !opts->preview.empty()) {
            ImageF sphere = render_diffuse_sphere(coeffs, opts->sphere_size);
            if (!opts->out_sphere.empty()) save_pfm(sphere, opts->out_sphere);
            if (!opts->preview.empty()) save_png_preview(sphere, opts->preview);
        }
    });
}

struct LightingErrorOpts {
    std::string est, target;
    int size = 64;
};

void setup_lighting_error(CLI::App& app) {
    auto opts = std::make_shared<LightingErrorOpts>();
    CLI::App* sub = app.add_subcommand(
        "lighting-error", "Exposure-compensated L1 between sphere renderings");
    sub->add_option("--est", opts->est, "Coefficient table or sphere PFM")->required();
    sub->add_option("--target", opts->target, "Coefficient table or sphere PFM")->required();
    sub->add_option("--size", opts->size, "Render size for coefficient inputs");
    sub->callback([opts] {
        auto is_sphere = [](const std::string& p) { return fs::path(p).extension() == ".pfm"; };
        ImageF est, target;
        if (is_sphere(opts->target)) {
            target = load_pfm(opts->target);
        } else {
            int size = is_sphere(opts->est) ? load_pfm(opts->est).width : opts->size;
            target = render_diffuse_sphere(load_coeff_table(opts->target), size);
        }
        est = is_sphere(opts->est)
                  ? load_pfm(opts->est)
                  : render_diffuse_sphere(load_coeff_table(opts->est), target.width);
        print_kv("lighting_error", lighting_error_spheres(est, target));
    });
}

struct MetricsOpts {
    std::string ref, test, mask;
};

void setup_metrics(CLI::App& app) {
    auto opts = std::make_shared<MetricsOpts>();
    CLI::App* sub = app.add_subcommand("metrics", "MAE / MSE / SSIM between two images");
    sub->add_option("--ref", opts->ref)->required();
    sub->add_option("--test", opts->test)->required();
    sub->add_option("--mask", opts->mask);
    sub->callback([opts] {
        ImageF ref = load_image(opts->ref);
        ImageF test = load_image(opts->test);
        ImageF mask;
        if (!opts->mask.empty()) mask = load_image(opts->mask);
        const ImageF* mask_ptr = opts->mask.empty() ? nullptr : &mask;
        print_kv("mae", mae(ref, test, mask_ptr));
        print_kv("mse", mse(ref, test, mask_ptr));
        print_kv("ssim", ssim(ref, test));
    });
}

struct TemporalOpts {
    std::vector<std::string> frames, flows;
};

void setup_temporal(CLI::App& app) {
    auto opts = std::make_shared<TemporalOpts>();
    CLI::App* sub = app.add_subcommand("temporal", "Optical-flow warp error over a sequence");
    sub->add_option("--frames", opts->frames, "Frame PFMs in order")->required()->expected(-1);
    sub->add_option("--flows", opts->flows, "FLO files, one per consecutive pair")
        ->required()
        ->expected(-1);
    sub->callback([opts] {
        std::vector<ImageF> frames;
        std::vector<FlowField> flows;
        for (const std::string& p : opts->frames) frames.push_back(load_image(p));
        for (const std::string& p : opts->flows) flows.push_back(load_flow(p));
        TemporalError err = temporal_warp_error(frames, flows);
        print_kv("mae", err.mae);
        print_kv("mse", err.mse);
    });
}

struct OracleRenderOpts {
    std::string env, fixture, out, preview;
    std::string albedo = "0.8,0.6,0.5", ks = "0", view = "ortho";
    int size = 64, exponent = 32;
    double radius = 1.0;
    uint32_t seed = 0;
};

void setup_oracle_render(CLI::App& app) {
    auto opts = std::make_shared<OracleRenderOpts>();
    CLI::App* sub = app.add_subcommand(
        "oracle-render", "Brute-force sphere render plus gbuffer rasters");
    sub->add_option("--env", opts->env, "Environment map path");
    sub->add_option("--fixture", opts->fixture, "Procedural environment kind instead of --env");
    sub->add_option("--seed", opts->seed, "Seed for band-limited-random");
    sub->add_option("--size", opts->size, "Canvas size in pixels");
    sub->add_option("--albedo", opts->albedo, "Scalar or r,g,b");
    sub->add_option("--ks", opts->ks, "Specular strength, scalar or r,g,b");
    sub->add_option("--exponent", opts->exponent, "Phong exponent");
    sub->add_option("--radius", opts->radius, "Sphere radius as a canvas fraction");
    sub->add_option("--view", opts->view, "ortho | pinhole:FOV");
    sub->add_option("--out", opts->out, "Output prefix")->required();
    sub->add_option("--preview", opts->preview, "Optional PNG preview");
    sub->callback([opts] {
        if (opts->env.empty() == opts->fixture.empty())
            throw std::runtime_error("oracle-render: pass exactly one of --env or --fixture");
        EnvMap env = opts->env.empty()
                         ? make_fixture(fixture_kind_from_name(opts->fixture), 64, 32, opts->seed)
                         : load_env(opts->env);

        OracleScene scene;
        scene.radius = opts->radius;
        scene.albedo = parse_rgb(opts->albedo);
        scene.ks = parse_rgb(opts->ks);
        scene.phong_exponent = opts->exponent;
        scene.view = parse_view(opts->view);

        OracleRender render = render_sphere_bruteforce(scene, env, opts->size);
        save_pfm(render.image, opts->out + ".pfm");
        save_pfm(render.gbuffer.albedo, opts->out + "_albedo.pfm");
        save_pfm(render.gbuffer.normal, opts->out + "_normal.pfm");
        save_pfm(render.gbuffer.lens_normal, opts->out + "_lens_normal.pfm");
        save_pfm(render.gbuffer.mask, opts->out + "_mask.pfm");
        if (!opts->preview.empty()) save_png_preview(render.image, opts->preview);
    });
}

struct BatchOpts {
    std::string manifest;
};

void setup_batch(CLI::App& app) {
    auto opts = std::make_shared<BatchOpts>();
    CLI::App* sub = app.add_subcommand(
        "batch", "Run newline-delimited jobs, each a subcommand with flags");
    sub->add_option("--manifest", opts->manifest, "Job file; # starts a comment")->required();
    sub->callback([opts] {
        std::ifstream in(opts->manifest);
        if (!in) throw std::runtime_error(opts->manifest + ": cannot open manifest");
        std::string line;
        int lineno = 0, failures = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> args;
            std::stringstream ss(line);
            std::string tok;
            while (ss >> tok) args.push_back(tok);
            int code = run_command(args);
            std::printf("job%d=%d\n", lineno, code);
            if (code != 0) ++failures;
        }
        if (failures > 0)
            throw std::runtime_error("batch: " + std::to_string(failures) + " job(s) failed");
    });
}

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"Portrait relighting toolkit: prefiltered image-based lighting, "
                 "OLAT sets, lighting recovery, and image metrics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from an INI config (sections per subcommand)");

    setup_fixtures(app);
    setup_prefilter(app);
    setup_relight(app);
    setup_olat_gen(app);
    setup_olat_check(app);
    setup_sh_recover(app);
    setup_lighting_error(app);
    setup_metrics(app);
    setup_temporal(app);
    setup_oracle_render(app);
    setup_batch(app);
    // Config keys mirror the flag names, prefixed by the subcommand:
    // `relightkit --config run.ini metrics` with `metrics.ref=a.pfm` lines.
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->configurable(false);

    try {
        // CLI11 parse(vector) expects the arguments reversed, program name excluded.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_command(args);
}
