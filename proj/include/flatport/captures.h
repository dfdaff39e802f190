// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "flatport/image.h"
#include "flatport/medium.h"

namespace flatport {

/// Posed multi-view captures in linear light, sharing one camera. Optional
/// ground-truth medium parameters for evaluation only.
struct CaptureSet {
    CameraModel camera;
    std::vector<Pose> poses;
    std::vector<ImageBuffer> images;
    std::optional<MediumParams> truth;

    size_t view_count() const { return poses.size(); }
    void validate() const;  // >= 1 view, equal dimensions, valid poses
};

}  // namespace flatport
