// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>

namespace flatport {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Rgb = Eigen::Array3d;

/// Pinhole intrinsics plus flat-port housing parameters. The port is a planar
/// window at perpendicular distance `port_distance` from the optical center,
/// with unit normal `port_normal` expressed in the camera frame. `n_inner` is
/// the refractive index inside the housing, `n_outer` the index of the medium
/// outside (water).
struct CameraModel {
    double fx = 0, fy = 0;
    double cx = 0, cy = 0;
    int width = 0, height = 0;
    double port_distance = 0.0;
    double n_inner = 1.0;
    double n_outer = 1.0;
    Vec3 port_normal = Vec3(0, 0, 1);

    // Throws InvalidSpec on violated invariants (fx,fy > 0, unit normal,
    // port_distance >= 0, indices > 0, principal point inside bounds).
    void validate() const;
};

/// Rigid camera-to-world transform.
struct Pose {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    void validate() const;  // orthonormal, det +1

    Vec3 point_to_world(const Vec3& p) const { return rotation * p + translation; }
    Vec3 dir_to_world(const Vec3& d) const { return rotation * d; }

    static Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up = Vec3(0, 1, 0));
};

struct Ray {
    Vec3 origin = Vec3::Zero();
    Vec3 direction = Vec3(0, 0, 1);
    double t_near = 0.0;
    double t_far = std::numeric_limits<double>::max();

    Vec3 at(double t) const { return origin + t * direction; }
};

/// Backprojects a (fractional) pixel through the pinhole; origin is the
/// optical center, direction unit-length with positive component along the
/// port normal. Camera frame.
Ray pixel_ray(const CameraModel& camera, double u, double v);

/// Snell's law: arcsin((n_from/n_to) sin(phi_in)). Returns nullopt on total
/// internal reflection. Identity when n_from == n_to.
std::optional<double> snell_angle(double phi_in, double n_from, double n_to);

/// Rotates d_in (unit, at angle phi_in to the unit interface normal g) within
/// the plane of incidence so it makes angle phi_out with g. Degenerate axis
/// (normal incidence) and phi_out == phi_in return d_in unchanged.
Vec3 refract_direction(const Vec3& d_in, const Vec3& g, double phi_in, double phi_out);

/// Traces a pixel through the flat port: origin o' = s/cos(phi_a) along the
/// in-housing direction, direction bent by Snell toward the outside medium.
/// Camera frame. nullopt on total internal reflection.
std::optional<Ray> refracted_ray(const CameraModel& camera, double u, double v);

/// Radial pixel remap factor h: the rectified pixel lies at (h*u, h*v)
/// relative to the principal point, for an object at perpendicular depth z.
/// Uses the analytic small-angle limit (s + (z-s) n_a/n_w) / z on the axis.
/// nullopt on total internal reflection (only possible when n_outer < n_inner).
std::optional<double> remap_factor(const CameraModel& camera, double u, double v, double z);

}  // namespace flatport
