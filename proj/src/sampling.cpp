// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/sampling.h"

#include "flatport/errors.h"

namespace flatport {

uint64_t mix_key(uint64_t seed, uint64_t a, uint64_t b) {
    Splitmix64 rng(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    return rng.next_u64();
}

uint64_t ray_stream_key(uint64_t seed, uint64_t view_index, uint64_t pixel_index) {
    return mix_key(seed, view_index + 1, pixel_index + 1);
}

void SamplingConfig::validate() const {
    if (!(t_near < t_far)) throw InvalidSpec("sampling: t_near must be < t_far");
    if (!(t_near >= 0)) throw InvalidSpec("sampling: t_near must be >= 0");
    if (samples < 2) throw InvalidSpec("sampling: need at least 2 samples");
}

RaySamples sample_ray(const VoxelScene& scene, const Ray& ray, const SamplingConfig& cfg,
                      uint64_t ray_key) {
    const int n = cfg.samples;
    const double dt = (cfg.t_far - cfg.t_near) / n;
    RaySamples s;
    s.boundaries.resize(n + 1);
    s.positions.resize(n);
    s.sigma.resize(n);
    s.color.resize(n);
    for (int i = 0; i <= n; ++i) s.boundaries[i] = cfg.t_near + i * dt;
    Splitmix64 rng(ray_key);
    for (int i = 0; i < n; ++i) {
        const double u = cfg.jitter ? rng.next_double() : 0.5;
        s.positions[i] = s.boundaries[i] + u * dt;
        const FieldSample f = scene.query(ray.at(s.positions[i]));
        s.sigma[i] = f.sigma;
        s.color[i] = f.color;
    }
    return s;
}

std::optional<double> surface_depth(const RaySamples& samples, double sigma_thresh) {
    for (int i = 0; i < samples.count(); ++i)
        if (samples.sigma[i] >= sigma_thresh) return samples.positions[i];
    return std::nullopt;
}

}  // namespace flatport
