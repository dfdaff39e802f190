// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "flatport/image.h"
#include "flatport/medium.h"
#include "flatport/sampling.h"
#include "flatport/scene.h"

namespace flatport {

/// Alpha-compositing weights for the object field along one ray:
///   T_i = exp(-sum_{j<i} sigma_j dt_j),  w_i = (1 - exp(-sigma_i dt_i)) T_i.
/// T has one extra entry: T[count] is the transmittance past the last sample,
/// so sum(w) == 1 - T[count] exactly.
struct WeightResult {
    std::vector<double> w;
    std::vector<double> T;
};
WeightResult transmittance_weights(const RaySamples& samples);

/// Per-ray shading result. `underwater` is the medium-attenuated color I,
/// `direct` the unattenuated object radiance J = sum w_i c_i, `depth` the
/// surface depth (nullopt when the ray saw only water).
struct RayRadiance {
    Rgb underwater = Rgb::Zero();
    Rgb direct = Rgb::Zero();
    std::optional<double> depth;
    std::vector<double> weights;
    std::vector<double> transmittance;
};

enum class RenderMode { Underwater, InAir, GeoOnly };

/// Shades one camera pixel. Underwater mode traces the refracted ray and
/// applies I = e^{-beta d} J + (1 - e^{-beta d}) A with d the surface depth
/// (t_far for pure water columns). InAir returns J along the unrefracted
/// pinhole ray. GeoOnly applies the underwater radiometric model along the
/// unrefracted ray. nullopt on total internal reflection.
std::optional<RayRadiance> render_pixel(const VoxelScene& scene, const MediumParams& medium,
                                        const CameraModel& camera, const Pose& pose, double u,
                                        double v, RenderMode mode, const SamplingConfig& cfg,
                                        uint64_t view_index = 0);

/// Applies the medium model to a direct radiance J at surface depth d.
Rgb apply_medium(const Rgb& direct, const MediumParams& medium, double d);

/// Renders a full frame at pixel centers; TIR pixels are zeroed and masked
/// invalid. Parallel over rows, bitwise deterministic for any thread count.
ImageBuffer render_image(const VoxelScene& scene, const MediumParams& medium,
                         const CameraModel& camera, const Pose& pose, RenderMode mode,
                         const SamplingConfig& cfg, uint64_t view_index = 0);

/// Optional parameter overrides for novel-condition synthesis.
struct NovelOverrides {
    std::optional<Pose> pose;
    std::optional<double> n_outer;
    std::optional<double> port_distance;
    std::optional<Rgb> background;
    std::optional<Rgb> beta;
};

/// Underwater render with selected optical parameters replaced; overrides are
/// validated against the medium bounds and camera invariants.
ImageBuffer synthesize_novel(const VoxelScene& scene, const MediumParams& medium,
                             const CameraModel& camera, const Pose& pose,
                             const SamplingConfig& cfg, const NovelOverrides& overrides,
                             uint64_t view_index = 0);

/// Global brightness compensation: W = mean(reference)/mean(image) over valid
/// pixels (channels pooled, or per channel); output = max(1, W) * image,
/// clamped to [0,1]. Throws DegenerateInput when mean(image) == 0.
ImageBuffer brightness_compensate(const ImageBuffer& image, const ImageBuffer& reference,
                                  bool per_channel = false);

/// Pure gamma-2.4 transfer (not the piecewise sRGB curve); clamps to [0,1].
double linear_to_srgb(double x);
double srgb_to_linear(double x);

}  // namespace flatport
