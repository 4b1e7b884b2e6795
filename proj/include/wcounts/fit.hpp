#pragma once

#include <vector>

#include "wcounts/enumerate.hpp"
#include "wcounts/rational.hpp"

namespace wcounts {

struct LinearFit {
    long double a = 0.0L;   // coefficient of log B
    long double p = 0.0L;   // coefficient of log log B
    long double c0 = 0.0L;  // intercept
    long double rms_residual = 0.0L;
};

struct DoublingRatio {
    Rational at;              // the lower threshold B
    long double ratio = 0.0L; // N(2B) / N(B)
};

// Regression of observed counts against c * B^a * (log B)^p.
struct FitReport {
    LinearFit unconstrained;        // free (a, p, c0)
    LinearFit constrained;          // p frozen at `frozen_p`
    long double frozen_p = 0.0L;
    std::vector<DoublingRatio> doubling;
    int points_used = 0;
};

// Least squares for log N = a log B + p log log B + c0 over thresholds with
// N >= 1 and B > 1. Requires at least 5 usable thresholds, N >= 10 at the
// largest, and genuine growth; a collinear design is rejected.
FitReport fit_asymptotic(const CountSeries& series, long double frozen_p);

// Two-parameter fit with the log-power frozen.
LinearFit constrained_fit(const CountSeries& series, long double p_frozen);

// Ratios N(2B)/N(B) for threshold pairs present in the series.
std::vector<DoublingRatio> doubling_ratios(const CountSeries& series);

} // namespace wcounts
