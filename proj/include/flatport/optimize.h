// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <vector>

#include "flatport/captures.h"
#include "flatport/losses.h"
#include "flatport/render.h"

namespace flatport {

struct OptimConfig {
    Rgb init_background = Rgb(0.9, 0.9, 0.9);
    Rgb init_beta = Rgb(0.4, 0.2, 0.2);
    MediumBounds bounds;

    double lambda_cast = 1e-3;  // weight of the color-cast term
    double epsilon = 1e-3;      // stop-gradient denominator offset

    int iterations = 2000;
    int batch_size = 2048;

    // Log-linear learning-rate anneal over the first lr_span iterations,
    // holding lr_end afterwards.
    double lr_start = 2.5e-4;
    double lr_end = 2.5e-5;
    int lr_span = 50000;

    // Medium parameters stay at their initial values until this iteration.
    int medium_start_iter = 0;

    uint64_t seed = 0;

    // Per-group step multipliers for joint optimization.
    double color_lr_scale = 1.0;
    double sigma_lr_scale = 1.0;

    bool optimize_medium = true;
    bool optimize_colors = false;
    bool optimize_sigma = false;

    SamplingConfig sampling;

    void validate() const;
};

/// lr_start * (lr_end/lr_start)^(k/span) for k in the anneal span, lr_end after.
double learning_rate_at(const OptimConfig& cfg, int iteration);

struct TraceRow {
    int iteration = 0;
    double lr = 0.0;
    double recon = 0.0;
    double cast = 0.0;
    double total = 0.0;
    Rgb background = Rgb::Zero();
    Rgb beta = Rgb::Zero();
};

/// One capture ray with fixed geometry: refracted world-space ray, its
/// quadrature stream key, and the observed color.
struct RayRef {
    Ray ray;
    uint64_t key = 0;
    Rgb observed = Rgb::Zero();
};

/// Flattens all valid capture pixels into refracted world rays. Skips pixels
/// that are masked invalid or lost to total internal reflection.
std::vector<RayRef> build_ray_table(const CaptureSet& captures, const SamplingConfig& cfg);

/// Per-ray quantities that stay fixed while only the medium moves.
struct PrecomputedRay {
    Rgb direct = Rgb::Zero();  // J
    double depth = 0.0;        // surface depth, t_far fallback
    Rgb observed = Rgb::Zero();
};

/// Renders J and d for every capture ray under a known scene.
std::vector<PrecomputedRay> precompute_rays(const VoxelScene& scene, const CaptureSet& captures,
                                            const SamplingConfig& cfg);

/// Batch loss and analytic medium gradients (batch mean, compensated
/// summation in batch order). When frozen_denoms is non-null it supplies the
/// stop-gradient reconstruction denominators (3 per batch entry) so finite
/// differences can be taken with sg(.) held fixed.
LossBreakdown medium_batch_eval(const std::vector<PrecomputedRay>& rays,
                                const std::vector<int>& batch, const MediumParams& medium,
                                const Rgb& gamma, double lambda_cast, double eps,
                                const std::vector<double>* frozen_denoms = nullptr);

/// Joint evaluation: resamples the scene along each batch ray, returning the
/// batch loss, medium gradients, and (on request) gradients w.r.t. the voxel
/// colors and densities. frozen_depths freezes the per-ray surface depth
/// (stop-gradient on d) for finite-difference checks of the density path.
struct JointEval {
    LossBreakdown loss;
    std::vector<double> d_color;  // 3 * cell_count, channel-major per cell
    std::vector<double> d_sigma;  // cell_count
};
JointEval joint_batch_eval(const VoxelScene& scene, const std::vector<RayRef>& rays,
                           const std::vector<int>& batch, const MediumParams& medium,
                           const Rgb& gamma, const OptimConfig& cfg, bool want_color_grads,
                           bool want_sigma_grads,
                           const std::vector<double>* frozen_denoms = nullptr,
                           const std::vector<double>* frozen_depths = nullptr);

/// Projected gradient descent on (A, beta) with the scene held fixed.
/// Deterministic given cfg.seed. Appends one TraceRow per iteration; on a
/// non-finite loss throws NonFiniteLoss with the partial trace retained.
MediumParams optimize_medium(const VoxelScene& scene, const CaptureSet& captures,
                             const OptimConfig& cfg, std::vector<TraceRow>* trace = nullptr);

struct JointResult {
    VoxelScene scene;
    MediumParams medium;
};

/// Simultaneous projected gradient descent over voxel colors, densities, and
/// medium parameters, as enabled in cfg. Colors are clamped to [0,1] and
/// densities to >= 0 after every step.
JointResult optimize_joint(const VoxelScene& initial_scene, const CaptureSet& captures,
                           const OptimConfig& cfg, std::vector<TraceRow>* trace = nullptr);

}  // namespace flatport
