// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatport/geometry.h"
#include "flatport/scene.h"

namespace flatport {

/// Counter-based RNG (splitmix64). Streams are keyed explicitly so sample
/// sequences are independent of evaluation order and thread count.
class Splitmix64 {
public:
    explicit Splitmix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n).
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

private:
    uint64_t state_;
};

/// Mixes stream identifiers into a single RNG key.
uint64_t mix_key(uint64_t seed, uint64_t a, uint64_t b = 0);

/// Quadrature stream key for one capture ray; shared by the renderer and the
/// optimizer so both draw identical stratified samples.
uint64_t ray_stream_key(uint64_t seed, uint64_t view_index, uint64_t pixel_index);

struct SamplingConfig {
    double t_near = 0.1;
    double t_far = 6.0;
    int samples = 128;
    bool jitter = false;
    uint64_t seed = 0;
    // First sample with sigma >= sigma_thresh defines the surface depth;
    // <= 0 means "0.5 * scene max sigma" resolved by the renderer.
    double sigma_thresh = 0.0;

    void validate() const;  // t_near < t_far, samples >= 2
};

/// Quadrature points along one ray: N+1 interval boundaries, N sample
/// positions (stratum centers, or jittered within each stratum), and the
/// (sigma, color) field values at those positions.
struct RaySamples {
    std::vector<double> boundaries;
    std::vector<double> positions;
    std::vector<double> sigma;
    std::vector<Rgb> color;

    int count() const { return int(positions.size()); }
    double width(int i) const { return boundaries[i + 1] - boundaries[i]; }
};

/// Stratified sampling of [t_near, t_far]; deterministic given ray_key.
RaySamples sample_ray(const VoxelScene& scene, const Ray& ray, const SamplingConfig& cfg,
                      uint64_t ray_key);

/// Distance of the first sample whose sigma reaches sigma_thresh; nullopt if
/// none qualifies.
std::optional<double> surface_depth(const RaySamples& samples, double sigma_thresh);

}  // namespace flatport
