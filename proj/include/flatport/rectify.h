// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <optional>

#include "flatport/geometry.h"
#include "flatport/image.h"

namespace flatport {

/// Geometric rectification mode. SZero assumes a negligible optical-center to
/// port distance (h independent of depth); UniformZ assumes all object points
/// at one perpendicular depth z. Per-pixel depth is not supported.
enum class RectifyMode { SZero, UniformZ, PerPixelDepth };

/// Resamples the image so content moves to its in-air pixel positions
/// (u', v') = (h u, h v) relative to the principal point. Inverse mapping with
/// bilinear interpolation; unreachable output pixels are zeroed and masked.
/// Throws UnsupportedGeometry for PerPixelDepth and InvalidSpec on dimension
/// mismatch or (UniformZ) z <= port distance.
ImageBuffer rectify_image(const ImageBuffer& image, const CameraModel& camera, RectifyMode mode,
                          double z = 0.0);

/// Bilinear lookup at a continuous pixel coordinate (pixel centers at
/// half-integers). nullopt outside the raster or when any contributing texel
/// is invalid.
std::optional<Rgb> bilinear_sample(const ImageBuffer& image, double u, double v);

}  // namespace flatport
