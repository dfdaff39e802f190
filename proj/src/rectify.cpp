// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/rectify.h"

#include <cmath>

#include "flatport/errors.h"
#include "flatport/parallel.h"

namespace flatport {

namespace {

// tan of the in-water angle for an in-housing tangent rho = tan(phi_a);
// +inf past the critical angle (possible only when n_inner > n_outer).
double tan_water(double rho, double n_inner, double n_outer) {
    const double sin_a = rho / std::sqrt(1.0 + rho * rho);
    const double sin_w = (n_inner / n_outer) * sin_a;
    if (sin_w >= 1.0) return std::numeric_limits<double>::infinity();
    return sin_w / std::sqrt(1.0 - sin_w * sin_w);
}

// Inverse of the radial forward map rho' = rho * h(rho) for the s ~ 0 case:
// rho' = tan(phi_w), so invert Snell directly.
std::optional<double> invert_s_zero(double rho_out, const CameraModel& cam) {
    const double sin_w = rho_out / std::sqrt(1.0 + rho_out * rho_out);
    const double sin_a = (cam.n_outer / cam.n_inner) * sin_w;
    if (sin_a >= 1.0) return std::nullopt;
    return sin_a / std::sqrt(1.0 - sin_a * sin_a);
}

// Inverse of rho' = (s rho + (z - s) tan_w(rho)) / z by bisection; the map is
// strictly increasing in rho.
std::optional<double> invert_uniform_z(double rho_out, const CameraModel& cam, double z) {
    const double s = cam.port_distance;
    const auto forward = [&](double rho) {
        return (s * rho + (z - s) * tan_water(rho, cam.n_inner, cam.n_outer)) / z;
    };
    double lo = 0.0, hi = std::max(rho_out, 1e-3);
    int expansions = 0;
    while (forward(hi) < rho_out) {
        hi *= 2.0;
        if (++expansions > 60) return std::nullopt;
    }
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (forward(mid) < rho_out ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::optional<Rgb> bilinear_sample(const ImageBuffer& image, double u, double v) {
    const double gu = u - 0.5, gv = v - 0.5;
    int i0 = int(std::floor(gu)), j0 = int(std::floor(gv));
    const double fu = gu - i0, fv = gv - j0;
    int i1 = (fu == 0.0) ? i0 : i0 + 1;
    int j1 = (fv == 0.0) ? j0 : j0 + 1;
    if (i0 < 0 || j0 < 0 || i1 >= image.width || j1 >= image.height) return std::nullopt;
    if (!image.is_valid(i0, j0) || !image.is_valid(i1, j0) || !image.is_valid(i0, j1) ||
        !image.is_valid(i1, j1))
        return std::nullopt;
    const Rgb top = (1 - fu) * image.at(i0, j0) + fu * image.at(i1, j0);
    const Rgb bot = (1 - fu) * image.at(i0, j1) + fu * image.at(i1, j1);
    return (1 - fv) * top + fv * bot;
}

ImageBuffer rectify_image(const ImageBuffer& image, const CameraModel& camera, RectifyMode mode,
                          double z) {
    camera.validate();
    if (mode == RectifyMode::PerPixelDepth)
        throw UnsupportedGeometry("rectify: per-pixel depth mode is not supported");
    if (image.width != camera.width || image.height != camera.height)
        throw InvalidSpec("rectify: image dimensions do not match camera");
    if (mode == RectifyMode::UniformZ && !(z > camera.port_distance))
        throw InvalidSpec("rectify: uniform-z mode requires z > port distance");

    ImageBuffer out(image.width, image.height);
    parallel_for(0, image.height, [&](int y) {
        for (int x = 0; x < image.width; ++x) {
            const double mu = (x + 0.5 - camera.cx) / camera.fx;
            const double mv = (y + 0.5 - camera.cy) / camera.fy;
            const double rho_out = std::hypot(mu, mv);

            double scale = 1.0;
            if (rho_out > 1e-12) {
                const auto rho_src = (mode == RectifyMode::SZero)
                                         ? invert_s_zero(rho_out, camera)
                                         : invert_uniform_z(rho_out, camera, z);
                if (!rho_src) {
                    out.at(x, y) = Rgb::Zero();
                    out.set_valid(x, y, false);
                    continue;
                }
                scale = *rho_src / rho_out;
            }
            const double su = camera.cx + mu * scale * camera.fx;
            const double sv = camera.cy + mv * scale * camera.fy;
            const auto value = bilinear_sample(image, su, sv);
            if (!value) {
                out.at(x, y) = Rgb::Zero();
                out.set_valid(x, y, false);
            } else {
                out.at(x, y) = *value;
            }
        }
    });
    return out;
}

}  // namespace flatport
