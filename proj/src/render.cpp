// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/render.h"

#include <algorithm>
#include <cmath>

#include "flatport/errors.h"
#include "flatport/parallel.h"

namespace flatport {

WeightResult transmittance_weights(const RaySamples& samples) {
    const int n = samples.count();
    WeightResult r;
    r.w.resize(n);
    r.T.resize(n + 1);
    double optical_depth = 0.0;
    r.T[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        const double a = samples.sigma[i] * samples.width(i);
        r.w[i] = (1.0 - std::exp(-a)) * r.T[i];
        optical_depth += a;
        r.T[i + 1] = std::exp(-optical_depth);
    }
    return r;
}

Rgb apply_medium(const Rgb& direct, const MediumParams& medium, double d) {
    const Rgb through = (-medium.beta * d).exp();
    return through * direct + (1.0 - through) * medium.background;
}

namespace {

uint64_t pixel_key(const SamplingConfig& cfg, uint64_t view_index, double u, double v, int width) {
    const uint64_t pix = uint64_t(int64_t(std::floor(v))) * uint64_t(width) +
                         uint64_t(int64_t(std::floor(u)));
    return ray_stream_key(cfg.seed, view_index, pix);
}

RayRadiance shade(const VoxelScene& scene, const MediumParams& medium, const Pose& pose,
                  const Ray& camera_ray, RenderMode mode, const SamplingConfig& cfg,
                  double sigma_thresh, uint64_t key) {
    Ray ray;
    ray.origin = pose.point_to_world(camera_ray.origin);
    ray.direction = pose.dir_to_world(camera_ray.direction);
    ray.t_near = cfg.t_near;
    ray.t_far = cfg.t_far;

    const RaySamples samples = sample_ray(scene, ray, cfg, key);
    WeightResult wt = transmittance_weights(samples);

    RayRadiance out;
    for (int i = 0; i < samples.count(); ++i) out.direct += wt.w[i] * samples.color[i];
    out.depth = surface_depth(samples, sigma_thresh);
    if (mode == RenderMode::InAir) {
        out.underwater = out.direct;
    } else {
        // Background rays back-scatter over the whole water column.
        const double d = out.depth.value_or(cfg.t_far);
        out.underwater = apply_medium(out.direct, medium, d);
    }
    out.weights = std::move(wt.w);
    out.transmittance = std::move(wt.T);
    return out;
}

double resolve_sigma_thresh(const SamplingConfig& cfg, const VoxelScene& scene) {
    return cfg.sigma_thresh > 0 ? cfg.sigma_thresh : 0.5 * scene.max_sigma();
}

}  // namespace

std::optional<RayRadiance> render_pixel(const VoxelScene& scene, const MediumParams& medium,
                                        const CameraModel& camera, const Pose& pose, double u,
                                        double v, RenderMode mode, const SamplingConfig& cfg,
                                        uint64_t view_index) {
    const double sigma_thresh = resolve_sigma_thresh(cfg, scene);
    const uint64_t key = pixel_key(cfg, view_index, u, v, camera.width);
    if (mode == RenderMode::Underwater) {
        const auto ray = refracted_ray(camera, u, v);
        if (!ray) return std::nullopt;
        return shade(scene, medium, pose, *ray, mode, cfg, sigma_thresh, key);
    }
    return shade(scene, medium, pose, pixel_ray(camera, u, v), mode, cfg, sigma_thresh, key);
}

ImageBuffer render_image(const VoxelScene& scene, const MediumParams& medium,
                         const CameraModel& camera, const Pose& pose, RenderMode mode,
                         const SamplingConfig& cfg, uint64_t view_index) {
    camera.validate();
    cfg.validate();
    SamplingConfig resolved = cfg;
    resolved.sigma_thresh = resolve_sigma_thresh(cfg, scene);

    ImageBuffer image(camera.width, camera.height);
    parallel_for(0, camera.height, [&](int y) {
        for (int x = 0; x < camera.width; ++x) {
            const auto r = render_pixel(scene, medium, camera, pose, x + 0.5, y + 0.5, mode,
                                        resolved, view_index);
            if (!r) {
                image.at(x, y) = Rgb::Zero();
                image.set_valid(x, y, false);
                continue;
            }
            image.at(x, y) = (mode == RenderMode::InAir) ? r->direct : r->underwater;
        }
    });
    return image;
}

ImageBuffer synthesize_novel(const VoxelScene& scene, const MediumParams& medium,
                             const CameraModel& camera, const Pose& pose,
                             const SamplingConfig& cfg, const NovelOverrides& overrides,
                             uint64_t view_index) {
    CameraModel cam = camera;
    MediumParams med = medium;
    Pose view = overrides.pose.value_or(pose);
    if (overrides.n_outer) {
        if (!(*overrides.n_outer > 0)) throw OutOfBounds("synth: n_w must be positive");
        cam.n_outer = *overrides.n_outer;
    }
    if (overrides.port_distance) {
        if (!(*overrides.port_distance >= 0)) throw OutOfBounds("synth: s must be >= 0");
        cam.port_distance = *overrides.port_distance;
    }
    if (overrides.background) med.background = *overrides.background;
    if (overrides.beta) med.beta = *overrides.beta;
    for (int c = 0; c < 3; ++c) {
        if (med.background[c] < med.bounds.background_min ||
            med.background[c] > med.bounds.background_max)
            throw OutOfBounds("synth: background override outside bounds");
        if (med.beta[c] < med.bounds.beta_min || med.beta[c] > med.bounds.beta_max)
            throw OutOfBounds("synth: beta override outside bounds");
    }
    return render_image(scene, med, cam, view, RenderMode::Underwater, cfg, view_index);
}

ImageBuffer brightness_compensate(const ImageBuffer& image, const ImageBuffer& reference,
                                  bool per_channel) {
    if (image.width != reference.width || image.height != reference.height)
        throw InvalidSpec("brightness: image dimensions differ");

    // Joint validity mask for both means.
    ImageBuffer a = image, b = reference;
    for (size_t i = 0; i < a.pixel_count(); ++i) {
        const uint8_t both = a.valid[i] && b.valid[i];
        a.valid[i] = both;
        b.valid[i] = both;
    }

    Rgb scale;
    if (per_channel) {
        const Rgb mj = mean_per_channel(a);
        const Rgb mi = mean_per_channel(b);
        for (int c = 0; c < 3; ++c) {
            if (mj[c] == 0.0) throw DegenerateInput("brightness: zero mean image channel");
            scale[c] = std::max(1.0, mi[c] / mj[c]);
        }
    } else {
        const double mj = mean_all_channels(a);
        const double mi = mean_all_channels(b);
        if (mj == 0.0) throw DegenerateInput("brightness: zero mean image");
        scale.setConstant(std::max(1.0, mi / mj));
    }

    ImageBuffer out = image;
    for (size_t i = 0; i < out.pixel_count(); ++i)
        out.pixels[i] = (out.pixels[i] * scale).cwiseMin(1.0).cwiseMax(0.0);
    return out;
}

double linear_to_srgb(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return std::pow(x, 1.0 / 2.4);
}

double srgb_to_linear(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return std::pow(x, 2.4);
}

}  // namespace flatport
