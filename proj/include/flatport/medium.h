// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include "flatport/geometry.h"

namespace flatport {

/// Box constraints for the medium parameters. The defaults are the training
/// bounds (A in [0,1], beta in [0.1,1]); tests that need beta = 0 relax them.
struct MediumBounds {
    double beta_min = 0.1;
    double beta_max = 1.0;
    double background_min = 0.0;
    double background_max = 1.0;

    static MediumBounds relaxed() { return MediumBounds{0.0, 1.0, 0.0, 1.0}; }
};

/// Per-channel attenuation beta (1/scene-unit) and global background light A
/// (linear radiance).
struct MediumParams {
    Rgb beta = Rgb(0.4, 0.2, 0.2);
    Rgb background = Rgb(0.9, 0.9, 0.9);
    MediumBounds bounds;

    void validate() const;              // throws InvalidSpec outside bounds
    void clamp_to_bounds();             // project onto the box
};

}  // namespace flatport
