// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/geometry.h"

#include <cmath>

#include "flatport/errors.h"

namespace flatport {

void CameraModel::validate() const {
    if (!(fx > 0) || !(fy > 0)) throw InvalidSpec("camera: focal lengths must be positive");
    if (width <= 0 || height <= 0) throw InvalidSpec("camera: image dimensions must be positive");
    if (!(cx >= 0 && cx <= width) || !(cy >= 0 && cy <= height))
        throw InvalidSpec("camera: principal point outside image bounds");
    if (!(port_distance >= 0)) throw InvalidSpec("camera: port distance must be >= 0");
    if (!(n_inner > 0) || !(n_outer > 0))
        throw InvalidSpec("camera: refractive indices must be positive");
    if (std::abs(port_normal.norm() - 1.0) > 1e-9)
        throw InvalidSpec("camera: port normal must be unit length");
}

void Pose::validate() const {
    if ((rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw InvalidSpec("pose: rotation is not orthonormal");
    if (std::abs(rotation.determinant() - 1.0) > 1e-9)
        throw InvalidSpec("pose: rotation determinant is not +1");
}

Pose Pose::look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
    Vec3 forward = (target - eye).normalized();  // camera +z
    Vec3 right = up.cross(forward);
    if (right.norm() < 1e-12) right = Vec3(1, 0, 0).cross(forward);
    right.normalize();
    Vec3 down = forward.cross(right);  // camera +y points down-image
    Pose pose;
    pose.rotation.col(0) = right;
    pose.rotation.col(1) = down;
    pose.rotation.col(2) = forward;
    pose.translation = eye;
    return pose;
}

Ray pixel_ray(const CameraModel& camera, double u, double v) {
    Ray ray;
    ray.origin = Vec3::Zero();
    ray.direction = Vec3((u - camera.cx) / camera.fx, (v - camera.cy) / camera.fy, 1.0).normalized();
    return ray;
}

std::optional<double> snell_angle(double phi_in, double n_from, double n_to) {
    if (n_from == n_to) return phi_in;  // exact identity for matched media
    const double s = (n_from / n_to) * std::sin(phi_in);
    if (s > 1.0) return std::nullopt;
    return std::asin(s);
}

Vec3 refract_direction(const Vec3& d_in, const Vec3& g, double phi_in, double phi_out) {
    if (phi_out == phi_in) return d_in;
    Vec3 axis = d_in.cross(g);
    const double axis_len = axis.norm();
    if (axis_len < 1e-12) return d_in;  // normal incidence
    axis /= axis_len;
    // Rodrigues rotation by (phi_in - phi_out) about the incidence-plane normal;
    // axis is perpendicular to d_in so the (axis . d_in) term vanishes.
    const double theta = phi_in - phi_out;
    return (d_in * std::cos(theta) + axis.cross(d_in) * std::sin(theta)).normalized();
}

std::optional<Ray> refracted_ray(const CameraModel& camera, double u, double v) {
    const Ray in_air = pixel_ray(camera, u, v);
    const Vec3& d_a = in_air.direction;
    const double cos_a = std::clamp(d_a.dot(camera.port_normal), -1.0, 1.0);
    const double phi_a = std::acos(cos_a);
    const auto phi_w = snell_angle(phi_a, camera.n_inner, camera.n_outer);
    if (!phi_w) return std::nullopt;
    Ray out;
    out.origin = (camera.port_distance / cos_a) * d_a;
    out.direction = refract_direction(d_a, camera.port_normal, phi_a, *phi_w);
    return out;
}

std::optional<double> remap_factor(const CameraModel& camera, double u, double v, double z) {
    const Vec3 d_a = pixel_ray(camera, u, v).direction;
    const double cos_a = std::clamp(d_a.dot(camera.port_normal), -1.0, 1.0);
    const double phi_a = std::acos(cos_a);
    const double tan_a = std::tan(phi_a);
    const double s = camera.port_distance;
    const double ratio = camera.n_inner / camera.n_outer;
    if (tan_a < 1e-9) {
        // Small-angle limit: tan(phi_w)/tan(phi_a) -> n_a/n_w.
        return (s + (z - s) * ratio) / z;
    }
    const auto phi_w = snell_angle(phi_a, camera.n_inner, camera.n_outer);
    if (!phi_w) return std::nullopt;
    const double tan_w = std::tan(*phi_w);
    return (s * tan_a + (z - s) * tan_w) / (z * tan_a);
}

}  // namespace flatport
