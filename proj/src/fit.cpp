#include "taxicab/fit.hpp"

#include <cmath>

namespace taxicab {

namespace {

struct LineFit {
    double slope = 0;
    double intercept = 0;
};

// Least squares line through (u, v).
LineFit fit_line(const std::vector<double>& u, const std::vector<double>& v) {
    const double n = double(u.size());
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        su += u[i];
        sv += v[i];
        suu += u[i] * u[i];
        suv += u[i] * v[i];
    }
    const double denom = n * suu - su * su;
    if (!(std::abs(denom) > 1e-12 * (1.0 + n * suu))) {
        throw ConfigError("fit: degenerate design (all abscissae equal)");
    }
    const double slope = (n * suv - su * sv) / denom;
    return LineFit{slope, (sv - slope * su) / n};
}

} // namespace

FitResult fit_root_affine(std::span<const FitPoint> points, int root) {
    if (points.size() < 2) throw ConfigError("fit: need at least two points");
    if (root < 1) throw ConfigError("fit: root must be >= 1");
    std::vector<double> u, v;
    u.reserve(points.size());
    v.reserve(points.size());
    for (const auto& p : points) {
        if (!(p.x > 0)) throw ConfigError("fit: root family requires x > 0");
        u.push_back(std::pow(p.x, 1.0 / double(root)));
        v.push_back(p.y);
    }
    const LineFit line = fit_line(u, v);
    return FitResult{line.slope, line.intercept,
                     root_affine_residual(points, root, line.slope, line.intercept)};
}

FitResult fit_exponential(std::span<const FitPoint> points) {
    if (points.size() < 2) throw ConfigError("fit: need at least two points");
    std::vector<double> u, v;
    u.reserve(points.size());
    v.reserve(points.size());
    for (const auto& p : points) {
        if (!(p.y > 0)) throw ConfigError("fit: exponential family requires y > 0");
        u.push_back(p.x);
        v.push_back(std::log(p.y));
    }
    const LineFit line = fit_line(u, v);
    const double a = std::exp(line.intercept);
    const double b = line.slope;
    return FitResult{a, b, exponential_residual(points, a, b)};
}

double root_affine_residual(std::span<const FitPoint> points, int root, double a,
                            double b) {
    double sse = 0;
    for (const auto& p : points) {
        const double e = p.y - (a * std::pow(p.x, 1.0 / double(root)) + b);
        sse += e * e;
    }
    return sse;
}

double exponential_residual(std::span<const FitPoint> points, double a, double b) {
    double sse = 0;
    for (const auto& p : points) {
        const double e = p.y - a * std::exp(b * p.x);
        sse += e * e;
    }
    return sse;
}

} // namespace taxicab
