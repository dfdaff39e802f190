// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace flatport {

// Input that violates a documented schema or bound (CLI exit code 2).
struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

// Zero denominator in a color-cast ratio.
struct DegenerateRatio : DegenerateInput {
    explicit DegenerateRatio(const std::string& what) : DegenerateInput(what) {}
};

// Rectification request that would need per-pixel depth.
struct UnsupportedGeometry : std::runtime_error {
    explicit UnsupportedGeometry(const std::string& what) : std::runtime_error(what) {}
};

// Optimizer hit a non-finite loss; partial trace is retained by the caller.
struct NonFiniteLoss : std::runtime_error {
    NonFiniteLoss(const std::string& what, int iteration)
        : std::runtime_error(what), iteration(iteration) {}
    int iteration;
};

struct OutOfBounds : std::runtime_error {
    explicit OutOfBounds(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatport
