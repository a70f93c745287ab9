#pragma once

#include <span>
#include <vector>

#include "taxicab/errors.hpp"

namespace taxicab {

// Ordinary least squares fits for the two curve families used to summarize
// boundary data: a*x^(1/root) + b (linear in the transformed abscissa) and
// a*exp(b*x) (solved in log space). Residuals are reported in the original
// y scale either way.

struct FitPoint {
    double x = 0;
    double y = 0;
};

struct FitResult {
    double a = 0;
    double b = 0;
    double residual = 0; // sum of squared errors, original scale
};

/// Fits y = a * x^(1/root) + b. Requires at least two points, root >= 1 and
/// every x > 0; throws ConfigError when the design is degenerate (all x equal).
FitResult fit_root_affine(std::span<const FitPoint> points, int root);

/// Fits y = a * exp(b * x) by least squares on log y. Requires at least two
/// points and every y > 0.
FitResult fit_exponential(std::span<const FitPoint> points);

/// Residual of given parameters against the data, original scale. Handy for
/// comparing a fit with externally reported constants.
double root_affine_residual(std::span<const FitPoint> points, int root, double a,
                            double b);
double exponential_residual(std::span<const FitPoint> points, double a, double b);

} // namespace taxicab
