#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "armplan/ellipse.hpp"
#include "armplan/geom.hpp"

namespace armplan::test {

/// Independent root oracle: dense sign-change scan of the projection quartic
/// over (-inf, b^2) followed by bisection. Finds the smallest root.
inline double lambda_scan_oracle(Point2 q, double a, double b) {
    const double b2 = b * b;
    double offset = 1.0 + norm(q) * a;
    while (ellipse_quartic(b2 - offset, q, a, b) <= 0.0) offset *= 2.0;

    const int cells = 400000;
    double lo = b2 - offset, hi = b2;
    double prev = ellipse_quartic(lo, q, a, b);
    double bracket_lo = lo, bracket_hi = hi;
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double val = ellipse_quartic(x, q, a, b);
        if (prev > 0.0 && val <= 0.0) {
            bracket_lo = lo + (hi - lo) * (i - 1) / cells;
            bracket_hi = x;
            break;
        }
        prev = val;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        if (ellipse_quartic(mid, q, a, b) > 0.0) {
            bracket_lo = mid;
        } else {
            bracket_hi = mid;
        }
    }
    return 0.5 * (bracket_lo + bracket_hi);
}

/// Brute-force boundary distance: min over dense parametric samples of the
/// boundary (a cos t, b sin t), polished by a few Newton steps on
/// f(t) = |q - p(t)|^2.
inline double ellipse_distance_brute(Point2 q, double a, double b, int samples = 1000000) {
    double best = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    const double twopi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < samples; ++i) {
        const double t = twopi * i / samples;
        const double dx = q.x - a * std::cos(t);
        const double dy = q.y - b * std::sin(t);
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) {
            best = d2;
            best_t = t;
        }
    }
    double t = best_t;
    for (int it = 0; it < 8; ++it) {
        const double c = std::cos(t), s = std::sin(t);
        const double dx = a * c - q.x, dy = b * s - q.y;
        const double f1 = -dx * a * s + dy * b * c;                      // f'/2
        const double f2 = a * a * s * s + b * b * c * c - dx * a * c - dy * b * s;  // f''/2
        if (f2 <= 0.0) break;
        t -= f1 / f2;
    }
    const double dx = q.x - a * std::cos(t), dy = q.y - b * std::sin(t);
    return std::min(std::sqrt(best), std::sqrt(dx * dx + dy * dy));
}

inline std::vector<double> random_box_vector(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::vector<double> u(n);
    for (double& v : u) v = box(rng);
    return u;
}

}  // namespace armplan::test
