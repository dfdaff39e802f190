// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "flatport/geometry.h"

namespace flatport {

/// Linear-light RGB raster with a per-pixel validity mask. Values stay in
/// linear space until an explicit gamma conversion at the output boundary.
struct ImageBuffer {
    int width = 0, height = 0;
    std::vector<Rgb> pixels;
    std::vector<uint8_t> valid;

    ImageBuffer() = default;
    ImageBuffer(int w, int h)
        : width(w), height(h), pixels(size_t(w) * h, Rgb::Zero()), valid(size_t(w) * h, 1) {}

    Rgb& at(int x, int y) { return pixels[size_t(y) * width + x]; }
    const Rgb& at(int x, int y) const { return pixels[size_t(y) * width + x]; }
    bool is_valid(int x, int y) const { return valid[size_t(y) * width + x] != 0; }
    void set_valid(int x, int y, bool v) { valid[size_t(y) * width + x] = v ? 1 : 0; }
    size_t pixel_count() const { return pixels.size(); }
    size_t valid_count() const;
};

/// Mean over valid pixels, all channels pooled. Compensated summation in a
/// fixed pixel order so the result is reproducible to 1e-12 regardless of
/// render thread count.
double mean_all_channels(const ImageBuffer& image);

/// Per-channel means over valid pixels.
Rgb mean_per_channel(const ImageBuffer& image);

/// PSNR in dB against peak 1.0, over pixels valid in both images.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

double max_abs_difference(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace flatport
