// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "flatport/geometry.h"

namespace flatport {

struct FieldSample {
    double sigma = 0.0;
    Rgb color = Rgb::Zero();
};

/// Trilinear lookup stencil: flat cell indices and weights for the eight cell
/// centers surrounding a point. `inside` is false outside the scene bounds,
/// in which case the stencil is empty.
struct TrilinearStencil {
    int index[8] = {0};
    double weight[8] = {0};
    int count = 0;
    bool inside = false;
};

/// Regular grid of (sigma, color) values at cell centers with trilinear
/// interpolation between them and constant extrapolation inside the half-cell
/// border. sigma is per-unit-length extinction; colors are linear RGB.
class VoxelScene {
public:
    VoxelScene() = default;
    VoxelScene(const Vec3& bounds_min, const Vec3& bounds_max, int nx, int ny, int nz);

    FieldSample query(const Vec3& p) const;
    TrilinearStencil stencil(const Vec3& p) const;

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    int cell_count() const { return nx_ * ny_ * nz_; }
    const Vec3& bounds_min() const { return bounds_min_; }
    const Vec3& bounds_max() const { return bounds_max_; }

    double sigma_at(int index) const { return sigma_[index]; }
    const Rgb& color_at(int index) const { return color_[index]; }
    void set_sigma(int index, double value) { sigma_[index] = value; }
    void set_color(int index, const Rgb& value) { color_[index] = value; }

    int cell_index(int ix, int iy, int iz) const { return (iz * ny_ + iy) * nx_ + ix; }
    Vec3 cell_center(int ix, int iy, int iz) const;

    double max_sigma() const;

    /// Throws InvalidSpec if sigma < 0 anywhere, colors leave [0,1], or the
    /// resolution is below 2 per axis.
    void validate() const;

private:
    Vec3 bounds_min_ = Vec3::Zero();
    Vec3 bounds_max_ = Vec3::Ones();
    int nx_ = 0, ny_ = 0, nz_ = 0;
    Vec3 cell_size_ = Vec3::Ones();
    std::vector<double> sigma_;
    std::vector<Rgb> color_;
};

/// Procedural test-scene description (manifest `scene` block).
struct SceneSpec {
    std::string kind;  // "slab" | "sphere" | "checkerbox"
    Vec3 bounds_min = Vec3(-1, -1, 0);
    Vec3 bounds_max = Vec3(1, 1, 4);
    int resolution[3] = {32, 32, 32};
    double sigma = 20.0;

    // slab: opaque layer z in [slab_z, slab_z + slab_thickness]
    double slab_z = 2.0;
    double slab_thickness = 0.2;
    Rgb color = Rgb(1, 0, 0);

    // slab/checkerbox: alternate color checkered in blocks of `checker_cells`
    Rgb color_b = Rgb(0.2, 0.4, 0.8);
    int checker_cells = 0;  // 0 = uniform color

    // sphere
    Vec3 center = Vec3(0, 0, 2);
    double radius = 0.6;
    double texture_freq = 0.0;  // 0 = untextured

    // checkerbox region
    Vec3 box_min = Vec3(-0.8, -0.8, 1.8);
    Vec3 box_max = Vec3(0.8, 0.8, 2.6);
};

/// Deterministic procedural scene; throws InvalidSpec for unknown kinds.
VoxelScene make_test_scene(const SceneSpec& spec);

}  // namespace flatport
