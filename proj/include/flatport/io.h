// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "flatport/image.h"
#include "flatport/medium.h"
#include "flatport/optimize.h"

namespace flatport {

/// Binary PFM, little-endian (scale -1.0), rows bottom-to-top, linear light.
void write_pfm(const std::string& path, const ImageBuffer& image);
ImageBuffer read_pfm(const std::string& path);

/// Single-channel PFM ("Pf") of the validity mask (1.0 valid / 0.0 invalid).
void write_mask_pfm(const std::string& path, const ImageBuffer& image);

/// 8-bit RGB PNG with gamma 2.4 applied; invalid pixels written black.
void write_png(const std::string& path, const ImageBuffer& image);

/// Reads an 8- or 16-bit PNG back to linear light (gamma 2.4).
ImageBuffer read_png(const std::string& path);

/// Loads .pfm or .png by extension.
ImageBuffer read_image(const std::string& path);

/// Optimizer trace CSV with a fixed header:
/// iteration,lr,recon,cast,total,A_r,A_g,A_b,beta_r,beta_g,beta_b
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);

/// Final medium parameters as "key value" lines (A_r..beta_b).
void write_params_file(const std::string& path, const MediumParams& medium);
MediumParams read_params_file(const std::string& path);

}  // namespace flatport
