// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/medium.h"

#include <algorithm>

#include "flatport/errors.h"

namespace flatport {

void MediumParams::validate() const {
    for (int c = 0; c < 3; ++c) {
        if (!(beta[c] >= bounds.beta_min && beta[c] <= bounds.beta_max))
            throw InvalidSpec("medium: beta outside bounds");
        if (!(background[c] >= bounds.background_min && background[c] <= bounds.background_max))
            throw InvalidSpec("medium: background light outside bounds");
    }
}

void MediumParams::clamp_to_bounds() {
    for (int c = 0; c < 3; ++c) {
        beta[c] = std::clamp(beta[c], bounds.beta_min, bounds.beta_max);
        background[c] = std::clamp(background[c], bounds.background_min, bounds.background_max);
    }
}

}  // namespace flatport
