// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include "flatport/captures.h"

namespace flatport {

/// Relative reconstruction error sum_c ((pred - obs) / (sg(pred) + eps))^2.
/// The denominator is a stop-gradient: it uses the current predicted value
/// but is held constant under differentiation.
double recon_loss(const Rgb& pred, const Rgb& obs, double eps);

/// d recon_loss / d pred with the stop-gradient denominator frozen.
Rgb recon_loss_grad(const Rgb& pred, const Rgb& obs, double eps);

/// Global color-cast ratio: per-channel mean over all valid pixels of all
/// images, pooled. Throws DegenerateInput when a channel mean is zero.
Rgb color_cast_ratio(const CaptureSet& captures);

/// Color-cast prior on the back-scatter component B_c = A_c (1 - e^{-beta_c d}):
///   |B_g/B_b - gamma_g/gamma_b| + sum_{c in g,b} max(B_r/B_c - gamma_r/gamma_c, 0).
/// d is stop-gradiented. Throws DegenerateRatio on a zero denominator.
double cast_loss(const Rgb& background, const Rgb& beta, double d, const Rgb& gamma);

/// Analytic gradient of cast_loss w.r.t. A and beta (d frozen). Hinge and
/// absolute-value kinks use subgradient zero.
void cast_loss_grad(const Rgb& background, const Rgb& beta, double d, const Rgb& gamma,
                    Rgb* d_background, Rgb* d_beta);

/// One optimizer step's loss values and per-term medium-parameter gradients;
/// total = recon + lambda * cast.
struct LossBreakdown {
    double recon = 0.0;
    double cast = 0.0;
    double total = 0.0;
    double lambda = 0.0;
    Rgb recon_d_background = Rgb::Zero();
    Rgb recon_d_beta = Rgb::Zero();
    Rgb cast_d_background = Rgb::Zero();
    Rgb cast_d_beta = Rgb::Zero();

    Rgb d_background() const { return recon_d_background + lambda * cast_d_background; }
    Rgb d_beta() const { return recon_d_beta + lambda * cast_d_beta; }
};

}  // namespace flatport
