// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>

namespace flatport {

struct FiniteDiffReport {
    double max_rel_error = 0.0;
    int worst_index = -1;
    Eigen::VectorXd numeric;
};

/// Central finite differences of f at x against an analytic gradient.
/// Relative error per coordinate uses max(|analytic|, |numeric|, 1e-8).
FiniteDiffReport finite_diff_check(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, const Eigen::VectorXd& analytic,
                                   double step);

}  // namespace flatport
