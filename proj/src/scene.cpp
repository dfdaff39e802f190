// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/scene.h"

#include <algorithm>
#include <cmath>

#include "flatport/errors.h"

namespace flatport {

VoxelScene::VoxelScene(const Vec3& bounds_min, const Vec3& bounds_max, int nx, int ny, int nz)
    : bounds_min_(bounds_min), bounds_max_(bounds_max), nx_(nx), ny_(ny), nz_(nz) {
    if (nx < 2 || ny < 2 || nz < 2) throw InvalidSpec("scene: resolution must be >= 2 per axis");
    if (!((bounds_max - bounds_min).minCoeff() > 0))
        throw InvalidSpec("scene: bounds must have positive extent");
    cell_size_ = (bounds_max_ - bounds_min_).cwiseQuotient(Vec3(nx_, ny_, nz_));
    sigma_.assign(cell_count(), 0.0);
    color_.assign(cell_count(), Rgb::Zero());
}

Vec3 VoxelScene::cell_center(int ix, int iy, int iz) const {
    return bounds_min_ + cell_size_.cwiseProduct(Vec3(ix + 0.5, iy + 0.5, iz + 0.5));
}

TrilinearStencil VoxelScene::stencil(const Vec3& p) const {
    TrilinearStencil st;
    for (int a = 0; a < 3; ++a) {
        if (p[a] < bounds_min_[a] || p[a] > bounds_max_[a]) return st;
    }
    st.inside = true;
    // Continuous cell-center coordinates; clamped so the half-cell border
    // extrapolates the nearest cell.
    double fx[3];
    int i0[3];
    for (int a = 0; a < 3; ++a) {
        const int n = (a == 0) ? nx_ : (a == 1) ? ny_ : nz_;
        double c = (p[a] - bounds_min_[a]) / cell_size_[a] - 0.5;
        c = std::clamp(c, 0.0, double(n - 1));
        i0[a] = std::min(int(c), n - 2);
        fx[a] = c - i0[a];
    }
    for (int corner = 0; corner < 8; ++corner) {
        const int dx = corner & 1, dy = (corner >> 1) & 1, dz = (corner >> 2) & 1;
        const double w = (dx ? fx[0] : 1 - fx[0]) * (dy ? fx[1] : 1 - fx[1]) * (dz ? fx[2] : 1 - fx[2]);
        st.index[st.count] = cell_index(i0[0] + dx, i0[1] + dy, i0[2] + dz);
        st.weight[st.count] = w;
        ++st.count;
    }
    return st;
}

FieldSample VoxelScene::query(const Vec3& p) const {
    FieldSample out;
    const TrilinearStencil st = stencil(p);
    if (!st.inside) return out;  // empty space outside bounds
    for (int k = 0; k < st.count; ++k) {
        out.sigma += st.weight[k] * sigma_[st.index[k]];
        out.color += st.weight[k] * color_[st.index[k]];
    }
    return out;
}

double VoxelScene::max_sigma() const {
    double m = 0.0;
    for (double s : sigma_) m = std::max(m, s);
    return m;
}

void VoxelScene::validate() const {
    if (nx_ < 2 || ny_ < 2 || nz_ < 2) throw InvalidSpec("scene: resolution must be >= 2 per axis");
    for (double s : sigma_)
        if (!(s >= 0)) throw InvalidSpec("scene: sigma must be >= 0");
    for (const Rgb& c : color_)
        if (c.minCoeff() < 0 || c.maxCoeff() > 1) throw InvalidSpec("scene: colors must lie in [0,1]");
}

namespace {

VoxelScene make_slab(const SceneSpec& spec) {
    VoxelScene scene(spec.bounds_min, spec.bounds_max, spec.resolution[0], spec.resolution[1],
                     spec.resolution[2]);
    for (int iz = 0; iz < scene.nz(); ++iz)
        for (int iy = 0; iy < scene.ny(); ++iy)
            for (int ix = 0; ix < scene.nx(); ++ix) {
                const Vec3 c = scene.cell_center(ix, iy, iz);
                if (c.z() < spec.slab_z || c.z() > spec.slab_z + spec.slab_thickness) continue;
                const int idx = scene.cell_index(ix, iy, iz);
                scene.set_sigma(idx, spec.sigma);
                if (spec.checker_cells > 0) {
                    const int parity = (ix / spec.checker_cells + iy / spec.checker_cells) & 1;
                    scene.set_color(idx, parity ? spec.color_b : spec.color);
                } else {
                    scene.set_color(idx, spec.color);
                }
            }
    return scene;
}

VoxelScene make_sphere(const SceneSpec& spec) {
    VoxelScene scene(spec.bounds_min, spec.bounds_max, spec.resolution[0], spec.resolution[1],
                     spec.resolution[2]);
    for (int iz = 0; iz < scene.nz(); ++iz)
        for (int iy = 0; iy < scene.ny(); ++iy)
            for (int ix = 0; ix < scene.nx(); ++ix) {
                const Vec3 c = scene.cell_center(ix, iy, iz);
                if ((c - spec.center).norm() > spec.radius) continue;
                const int idx = scene.cell_index(ix, iy, iz);
                scene.set_sigma(idx, spec.sigma);
                double shade = 1.0;
                if (spec.texture_freq > 0) {
                    const Vec3 r = c - spec.center;
                    shade = 0.5 + 0.5 * std::cos(spec.texture_freq * (r.x() + r.y() + r.z()));
                }
                scene.set_color(idx, spec.color * shade);
            }
    return scene;
}

VoxelScene make_checkerbox(const SceneSpec& spec) {
    VoxelScene scene(spec.bounds_min, spec.bounds_max, spec.resolution[0], spec.resolution[1],
                     spec.resolution[2]);
    const int cs = std::max(1, spec.checker_cells);
    for (int iz = 0; iz < scene.nz(); ++iz)
        for (int iy = 0; iy < scene.ny(); ++iy)
            for (int ix = 0; ix < scene.nx(); ++ix) {
                const Vec3 c = scene.cell_center(ix, iy, iz);
                bool inside = true;
                for (int a = 0; a < 3; ++a)
                    inside = inside && c[a] >= spec.box_min[a] && c[a] <= spec.box_max[a];
                if (!inside) continue;
                const int idx = scene.cell_index(ix, iy, iz);
                scene.set_sigma(idx, spec.sigma);
                const int parity = (ix / cs + iy / cs + iz / cs) & 1;
                scene.set_color(idx, parity ? spec.color_b : spec.color);
            }
    return scene;
}

}  // namespace

VoxelScene make_test_scene(const SceneSpec& spec) {
    if (spec.kind == "slab") return make_slab(spec);
    if (spec.kind == "sphere") return make_sphere(spec);
    if (spec.kind == "checkerbox") return make_checkerbox(spec);
    throw InvalidSpec("scene: unknown kind '" + spec.kind + "'");
}

}  // namespace flatport
