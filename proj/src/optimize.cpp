// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/optimize.h"

#include <algorithm>
#include <cmath>

#include "flatport/errors.h"

namespace flatport {

namespace {

constexpr uint64_t kBatchStreamTag = 0x6261746368ULL;  // batch index stream

struct Accum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

std::vector<int> make_batch(size_t ray_count, const OptimConfig& cfg, int iteration) {
    std::vector<int> batch;
    if (size_t(cfg.batch_size) >= ray_count) {
        batch.resize(ray_count);
        for (size_t i = 0; i < ray_count; ++i) batch[i] = int(i);
        return batch;
    }
    Splitmix64 rng(mix_key(cfg.seed, kBatchStreamTag, uint64_t(iteration)));
    batch.resize(cfg.batch_size);
    for (int& b : batch) b = int(rng.next_below(ray_count));
    return batch;
}

// Shared per-ray term: reconstruction + cast losses with analytic medium
// gradients, given the ray's direct radiance J and surface depth d.
struct RayTermAccum {
    Accum recon, cast;
    Accum recon_dA[3], recon_dB[3], cast_dA[3], cast_dB[3];
};

void accumulate_ray_term(const Rgb& direct, double depth, const Rgb& observed,
                         const MediumParams& medium, const Rgb& gamma, double eps,
                         const double* frozen_den, RayTermAccum* acc, Rgb* d_direct) {
    const Rgb through = (-medium.beta * depth).exp();
    const Rgb pred = through * direct + (1.0 - through) * medium.background;
    for (int c = 0; c < 3; ++c) {
        const double den = frozen_den ? frozen_den[c] : pred[c] + eps;
        const double r = (pred[c] - observed[c]) / den;
        acc->recon.add(r * r);
        const double g = 2.0 * (pred[c] - observed[c]) / (den * den);
        acc->recon_dA[c].add(g * (1.0 - through[c]));
        acc->recon_dB[c].add(g * depth * through[c] * (medium.background[c] - direct[c]));
        if (d_direct) (*d_direct)[c] = g * through[c];
    }
    acc->cast.add(cast_loss(medium.background, medium.beta, depth, gamma));
    Rgb cA, cB;
    cast_loss_grad(medium.background, medium.beta, depth, gamma, &cA, &cB);
    for (int c = 0; c < 3; ++c) {
        acc->cast_dA[c].add(cA[c]);
        acc->cast_dB[c].add(cB[c]);
    }
}

LossBreakdown finish(const RayTermAccum& acc, size_t n, double lambda) {
    LossBreakdown out;
    out.lambda = lambda;
    const double inv = 1.0 / double(n);
    out.recon = acc.recon.sum * inv;
    out.cast = acc.cast.sum * inv;
    out.total = out.recon + lambda * out.cast;
    for (int c = 0; c < 3; ++c) {
        out.recon_d_background[c] = acc.recon_dA[c].sum * inv;
        out.recon_d_beta[c] = acc.recon_dB[c].sum * inv;
        out.cast_d_background[c] = acc.cast_dA[c].sum * inv;
        out.cast_d_beta[c] = acc.cast_dB[c].sum * inv;
    }
    return out;
}

}  // namespace

void OptimConfig::validate() const {
    for (int c = 0; c < 3; ++c) {
        if (init_background[c] < bounds.background_min || init_background[c] > bounds.background_max)
            throw InvalidSpec("optim: initial background outside bounds");
        if (init_beta[c] < bounds.beta_min || init_beta[c] > bounds.beta_max)
            throw InvalidSpec("optim: initial beta outside bounds");
    }
    if (!(lr_start > 0) || !(lr_end > 0) || lr_end > lr_start)
        throw InvalidSpec("optim: learning rates must be positive and non-increasing");
    if (lr_span < 1) throw InvalidSpec("optim: lr_span must be >= 1");
    if (iterations < 0 || batch_size < 1) throw InvalidSpec("optim: bad iteration/batch counts");
    if (!(epsilon > 0)) throw InvalidSpec("optim: epsilon must be positive");
    if (lambda_cast < 0) throw InvalidSpec("optim: lambda must be >= 0");
    if (medium_start_iter < 0) throw InvalidSpec("optim: medium start iteration must be >= 0");
    sampling.validate();
}

double learning_rate_at(const OptimConfig& cfg, int iteration) {
    const double k = std::min(iteration, cfg.lr_span);
    return cfg.lr_start * std::pow(cfg.lr_end / cfg.lr_start, k / double(cfg.lr_span));
}

std::vector<RayRef> build_ray_table(const CaptureSet& captures, const SamplingConfig& cfg) {
    captures.validate();
    std::vector<RayRef> rays;
    rays.reserve(captures.view_count() * size_t(captures.camera.width) * captures.camera.height);
    for (size_t view = 0; view < captures.view_count(); ++view) {
        const Pose& pose = captures.poses[view];
        const ImageBuffer& image = captures.images[view];
        for (int y = 0; y < captures.camera.height; ++y)
            for (int x = 0; x < captures.camera.width; ++x) {
                if (!image.is_valid(x, y)) continue;
                const auto cam_ray = refracted_ray(captures.camera, x + 0.5, y + 0.5);
                if (!cam_ray) continue;  // total internal reflection
                RayRef ref;
                ref.ray.origin = pose.point_to_world(cam_ray->origin);
                ref.ray.direction = pose.dir_to_world(cam_ray->direction);
                ref.ray.t_near = cfg.t_near;
                ref.ray.t_far = cfg.t_far;
                ref.key = ray_stream_key(cfg.seed, view, uint64_t(y) * captures.camera.width + x);
                ref.observed = image.at(x, y);
                rays.push_back(ref);
            }
    }
    return rays;
}

std::vector<PrecomputedRay> precompute_rays(const VoxelScene& scene, const CaptureSet& captures,
                                            const SamplingConfig& cfg) {
    SamplingConfig resolved = cfg;
    if (resolved.sigma_thresh <= 0) resolved.sigma_thresh = 0.5 * scene.max_sigma();
    const std::vector<RayRef> table = build_ray_table(captures, resolved);
    std::vector<PrecomputedRay> out(table.size());
    for (size_t i = 0; i < table.size(); ++i) {
        const RaySamples samples = sample_ray(scene, table[i].ray, resolved, table[i].key);
        const WeightResult wt = transmittance_weights(samples);
        PrecomputedRay& p = out[i];
        for (int k = 0; k < samples.count(); ++k) p.direct += wt.w[k] * samples.color[k];
        p.depth = surface_depth(samples, resolved.sigma_thresh).value_or(resolved.t_far);
        p.observed = table[i].observed;
    }
    return out;
}

LossBreakdown medium_batch_eval(const std::vector<PrecomputedRay>& rays,
                                const std::vector<int>& batch, const MediumParams& medium,
                                const Rgb& gamma, double lambda_cast, double eps,
                                const std::vector<double>* frozen_denoms) {
    RayTermAccum acc;
    for (size_t j = 0; j < batch.size(); ++j) {
        const PrecomputedRay& r = rays[batch[j]];
        const double* den = frozen_denoms ? frozen_denoms->data() + 3 * j : nullptr;
        accumulate_ray_term(r.direct, r.depth, r.observed, medium, gamma, eps, den, &acc, nullptr);
    }
    return finish(acc, batch.size(), lambda_cast);
}

JointEval joint_batch_eval(const VoxelScene& scene, const std::vector<RayRef>& rays,
                           const std::vector<int>& batch, const MediumParams& medium,
                           const Rgb& gamma, const OptimConfig& cfg, bool want_color_grads,
                           bool want_sigma_grads, const std::vector<double>* frozen_denoms,
                           const std::vector<double>* frozen_depths) {
    JointEval out;
    if (want_color_grads) out.d_color.assign(3 * scene.cell_count(), 0.0);
    if (want_sigma_grads) out.d_sigma.assign(scene.cell_count(), 0.0);

    RayTermAccum acc;
    std::vector<double> suffix[3];
    for (size_t j = 0; j < batch.size(); ++j) {
        const RayRef& ref = rays[batch[j]];
        const RaySamples samples = sample_ray(scene, ref.ray, cfg.sampling, ref.key);
        const WeightResult wt = transmittance_weights(samples);
        Rgb direct = Rgb::Zero();
        for (int i = 0; i < samples.count(); ++i) direct += wt.w[i] * samples.color[i];
        const double live_depth =
            surface_depth(samples, cfg.sampling.sigma_thresh).value_or(cfg.sampling.t_far);
        const double depth = frozen_depths ? (*frozen_depths)[j] : live_depth;

        const double* den = frozen_denoms ? frozen_denoms->data() + 3 * j : nullptr;
        Rgb d_direct;  // dL_recon/dJ for this ray
        accumulate_ray_term(direct, depth, ref.observed, medium, gamma, cfg.epsilon, den, &acc,
                            &d_direct);

        if (want_color_grads) {
            for (int i = 0; i < samples.count(); ++i) {
                if (wt.w[i] == 0.0) continue;
                const TrilinearStencil st = scene.stencil(ref.ray.at(samples.positions[i]));
                for (int k = 0; k < st.count; ++k) {
                    const double f = st.weight[k] * wt.w[i];
                    if (f == 0.0) continue;
                    double* cell = out.d_color.data() + 3 * st.index[k];
                    for (int c = 0; c < 3; ++c) cell[c] += f * d_direct[c];
                }
            }
        }
        if (want_sigma_grads) {
            const int n = samples.count();
            for (int c = 0; c < 3; ++c) {
                suffix[c].assign(n + 1, 0.0);
                for (int i = n - 1; i >= 0; --i)
                    suffix[c][i] = suffix[c][i + 1] + wt.w[i] * samples.color[i][c];
            }
            for (int i = 0; i < n; ++i) {
                // dJ_c/dsigma_i = dt_i (T_{i+1} c_i,c - sum_{k>i} w_k c_k,c)
                double coeff = 0.0;
                for (int c = 0; c < 3; ++c)
                    coeff += d_direct[c] *
                             (samples.width(i) * (wt.T[i + 1] * samples.color[i][c] - suffix[c][i + 1]));
                if (coeff == 0.0) continue;
                const TrilinearStencil st = scene.stencil(ref.ray.at(samples.positions[i]));
                for (int k = 0; k < st.count; ++k)
                    out.d_sigma[st.index[k]] += st.weight[k] * coeff;
            }
        }
    }
    out.loss = finish(acc, batch.size(), cfg.lambda_cast);
    const double inv = 1.0 / double(batch.size());
    for (double& v : out.d_color) v *= inv;
    for (double& v : out.d_sigma) v *= inv;
    return out;
}

namespace {

void check_finite(const LossBreakdown& loss, int iteration) {
    if (!std::isfinite(loss.total) || !loss.d_background().allFinite() ||
        !loss.d_beta().allFinite())
        throw NonFiniteLoss("optimizer: non-finite loss at iteration " + std::to_string(iteration),
                            iteration);
}

void step_medium(MediumParams* medium, const LossBreakdown& loss, double lr) {
    medium->background -= lr * loss.d_background();
    medium->beta -= lr * loss.d_beta();
    medium->clamp_to_bounds();
}

}  // namespace

MediumParams optimize_medium(const VoxelScene& scene, const CaptureSet& captures,
                             const OptimConfig& cfg, std::vector<TraceRow>* trace) {
    cfg.validate();
    const std::vector<PrecomputedRay> rays = precompute_rays(scene, captures, cfg.sampling);
    if (rays.empty()) throw DegenerateInput("optimizer: no usable capture rays");
    const Rgb gamma = color_cast_ratio(captures);

    MediumParams medium;
    medium.background = cfg.init_background;
    medium.beta = cfg.init_beta;
    medium.bounds = cfg.bounds;

    for (int k = 0; k < cfg.iterations; ++k) {
        const std::vector<int> batch = make_batch(rays.size(), cfg, k);
        const LossBreakdown loss =
            medium_batch_eval(rays, batch, medium, gamma, cfg.lambda_cast, cfg.epsilon);
        check_finite(loss, k);
        const double lr = learning_rate_at(cfg, k);
        if (cfg.optimize_medium && k >= cfg.medium_start_iter) step_medium(&medium, loss, lr);
        if (trace)
            trace->push_back({k, lr, loss.recon, loss.cast, loss.total, medium.background,
                              medium.beta});
    }
    return medium;
}

JointResult optimize_joint(const VoxelScene& initial_scene, const CaptureSet& captures,
                           const OptimConfig& cfg, std::vector<TraceRow>* trace) {
    OptimConfig resolved = cfg;
    if (resolved.sampling.sigma_thresh <= 0)
        resolved.sampling.sigma_thresh = 0.5 * initial_scene.max_sigma();
    resolved.validate();

    JointResult result{initial_scene, MediumParams{}};
    result.medium.background = resolved.init_background;
    result.medium.beta = resolved.init_beta;
    result.medium.bounds = resolved.bounds;

    const std::vector<RayRef> rays = build_ray_table(captures, resolved.sampling);
    if (rays.empty()) throw DegenerateInput("optimizer: no usable capture rays");
    const Rgb gamma = color_cast_ratio(captures);

    for (int k = 0; k < resolved.iterations; ++k) {
        const std::vector<int> batch = make_batch(rays.size(), resolved, k);
        const JointEval eval =
            joint_batch_eval(result.scene, rays, batch, result.medium, gamma, resolved,
                             resolved.optimize_colors, resolved.optimize_sigma);
        check_finite(eval.loss, k);
        const double lr = learning_rate_at(resolved, k);

        if (resolved.optimize_colors) {
            const double step = lr * resolved.color_lr_scale;
            for (int cell = 0; cell < result.scene.cell_count(); ++cell) {
                Rgb c = result.scene.color_at(cell);
                bool touched = false;
                for (int ch = 0; ch < 3; ++ch) {
                    const double g = eval.d_color[3 * cell + ch];
                    if (g != 0.0) {
                        c[ch] = std::clamp(c[ch] - step * g, 0.0, 1.0);
                        touched = true;
                    }
                }
                if (touched) result.scene.set_color(cell, c);
            }
        }
        if (resolved.optimize_sigma) {
            const double step = lr * resolved.sigma_lr_scale;
            for (int cell = 0; cell < result.scene.cell_count(); ++cell) {
                const double g = eval.d_sigma[cell];
                if (g != 0.0)
                    result.scene.set_sigma(cell,
                                           std::max(0.0, result.scene.sigma_at(cell) - step * g));
            }
        }
        if (resolved.optimize_medium && k >= resolved.medium_start_iter)
            step_medium(&result.medium, eval.loss, lr);
        if (trace)
            trace->push_back({k, lr, eval.loss.recon, eval.loss.cast, eval.loss.total,
                              result.medium.background, result.medium.beta});
    }
    return result;
}

}  // namespace flatport
