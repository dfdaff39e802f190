// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/image.h"

#include <cmath>

#include "flatport/errors.h"

namespace flatport {

namespace {

// Kahan compensated accumulator.
struct Accum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

size_t ImageBuffer::valid_count() const {
    size_t n = 0;
    for (uint8_t v : valid) n += v != 0;
    return n;
}

double mean_all_channels(const ImageBuffer& image) {
    Accum acc;
    size_t n = 0;
    for (size_t i = 0; i < image.pixel_count(); ++i) {
        if (!image.valid[i]) continue;
        for (int c = 0; c < 3; ++c) acc.add(image.pixels[i][c]);
        ++n;
    }
    if (n == 0) throw DegenerateInput("image: no valid pixels");
    return acc.sum / double(3 * n);
}

Rgb mean_per_channel(const ImageBuffer& image) {
    Accum acc[3];
    size_t n = 0;
    for (size_t i = 0; i < image.pixel_count(); ++i) {
        if (!image.valid[i]) continue;
        for (int c = 0; c < 3; ++c) acc[c].add(image.pixels[i][c]);
        ++n;
    }
    if (n == 0) throw DegenerateInput("image: no valid pixels");
    return Rgb(acc[0].sum, acc[1].sum, acc[2].sum) / double(n);
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    Accum acc;
    size_t n = 0;
    for (size_t i = 0; i < a.pixel_count(); ++i) {
        if (!a.valid[i] || !b.valid[i]) continue;
        for (int c = 0; c < 3; ++c) {
            const double d = a.pixels[i][c] - b.pixels[i][c];
            acc.add(d * d);
        }
        ++n;
    }
    if (n == 0) throw DegenerateInput("psnr: no jointly valid pixels");
    const double mse = acc.sum / double(3 * n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

double max_abs_difference(const ImageBuffer& a, const ImageBuffer& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.pixel_count(); ++i)
        m = std::max(m, (a.pixels[i] - b.pixels[i]).abs().maxCoeff());
    return m;
}

}  // namespace flatport
