// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/finite_diff.h"

#include <algorithm>
#include <cmath>

namespace flatport {

FiniteDiffReport finite_diff_check(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, const Eigen::VectorXd& analytic,
                                   double step) {
    FiniteDiffReport report;
    report.numeric.resize(x.size());
    Eigen::VectorXd probe = x;
    for (int i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        const double hi = f(probe);
        probe[i] = x[i] - step;
        const double lo = f(probe);
        probe[i] = x[i];
        report.numeric[i] = (hi - lo) / (2.0 * step);
        const double denom = std::max({std::abs(analytic[i]), std::abs(report.numeric[i]), 1e-8});
        const double rel = std::abs(analytic[i] - report.numeric[i]) / denom;
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_index = i;
        }
    }
    return report;
}

}  // namespace flatport
