// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/losses.h"

#include <cmath>

#include "flatport/errors.h"

namespace flatport {

void CaptureSet::validate() const {
    if (poses.empty() || poses.size() != images.size())
        throw InvalidSpec("captures: need at least one posed image");
    camera.validate();
    for (const Pose& p : poses) p.validate();
    for (const ImageBuffer& im : images)
        if (im.width != camera.width || im.height != camera.height)
            throw InvalidSpec("captures: image dimensions do not match camera");
}

double recon_loss(const Rgb& pred, const Rgb& obs, double eps) {
    double loss = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double r = (pred[c] - obs[c]) / (pred[c] + eps);
        loss += r * r;
    }
    return loss;
}

Rgb recon_loss_grad(const Rgb& pred, const Rgb& obs, double eps) {
    Rgb g;
    for (int c = 0; c < 3; ++c) {
        const double den = pred[c] + eps;
        g[c] = 2.0 * (pred[c] - obs[c]) / (den * den);
    }
    return g;
}

Rgb color_cast_ratio(const CaptureSet& captures) {
    captures.validate();
    double sum[3] = {0, 0, 0};
    size_t n = 0;
    for (const ImageBuffer& im : captures.images) {
        for (size_t i = 0; i < im.pixel_count(); ++i) {
            if (!im.valid[i]) continue;
            for (int c = 0; c < 3; ++c) sum[c] += im.pixels[i][c];
            ++n;
        }
    }
    if (n == 0) throw DegenerateInput("color cast: no valid pixels");
    const Rgb gamma(sum[0] / double(n), sum[1] / double(n), sum[2] / double(n));
    for (int c = 0; c < 3; ++c)
        if (gamma[c] == 0.0) throw DegenerateInput("color cast: zero channel mean");
    return gamma;
}

namespace {

Rgb back_scatter(const Rgb& background, const Rgb& beta, double d) {
    return background * (1.0 - (-beta * d).exp());
}

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

double cast_loss(const Rgb& background, const Rgb& beta, double d, const Rgb& gamma) {
    const Rgb B = back_scatter(background, beta, d);
    if (B[1] == 0.0 || B[2] == 0.0) throw DegenerateRatio("cast loss: zero back-scatter channel");
    if (gamma[1] == 0.0 || gamma[2] == 0.0) throw DegenerateRatio("cast loss: zero gamma channel");
    double loss = std::abs(B[1] / B[2] - gamma[1] / gamma[2]);
    loss += std::max(B[0] / B[1] - gamma[0] / gamma[1], 0.0);
    loss += std::max(B[0] / B[2] - gamma[0] / gamma[2], 0.0);
    return loss;
}

void cast_loss_grad(const Rgb& background, const Rgb& beta, double d, const Rgb& gamma,
                    Rgb* d_background, Rgb* d_beta) {
    const Rgb T = (-beta * d).exp();
    const Rgb B = background * (1.0 - T);
    if (B[1] == 0.0 || B[2] == 0.0) throw DegenerateRatio("cast loss: zero back-scatter channel");
    if (gamma[1] == 0.0 || gamma[2] == 0.0) throw DegenerateRatio("cast loss: zero gamma channel");

    Rgb dB = Rgb::Zero();
    const double s1 = sign_of(B[1] / B[2] - gamma[1] / gamma[2]);
    dB[1] += s1 / B[2];
    dB[2] -= s1 * B[1] / (B[2] * B[2]);
    for (int c = 1; c <= 2; ++c) {
        if (B[0] / B[c] - gamma[0] / gamma[c] > 0.0) {
            dB[0] += 1.0 / B[c];
            dB[c] -= B[0] / (B[c] * B[c]);
        }
    }
    *d_background = dB * (1.0 - T);
    *d_beta = dB * background * d * T;
}

}  // namespace flatport
