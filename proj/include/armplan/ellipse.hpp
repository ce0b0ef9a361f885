#pragma once

#include "armplan/geom.hpp"

namespace armplan {

/// Closest-point projection of a query point onto the boundary of the
/// axis-aligned ellipse x^2/a^2 + y^2/b^2 = 1 with 0 < b <= a.
struct EllipseProjection {
    double lambda_star = 0.0;  ///< multiplier of the optimality system, <= b^2
    Point2 foot_point;         ///< closest point on the boundary
    double distance = 0.0;     ///< unsigned distance from q to the boundary
};

/// The quartic P(lambda) whose smallest real root is the projection
/// multiplier: P = ((l-a^2)(l-b^2))^2 - a^2 q1^2 (l-b^2)^2 - b^2 q2^2 (l-a^2)^2.
double ellipse_quartic(double lambda, Point2 q, double a, double b);

/// Smallest real root of the projection quartic, in (-inf, b^2].
/// Falls back to the circle closed form a^2 - a|q| when a^2 - b^2 < 1e-12 and
/// to min{a^2 - a|q1|, b^2} on the major axis.
double ellipse_lambda_exact(Point2 q, double a, double b);

/// Exact unsigned distance from q (ellipse-local frame) to the boundary.
EllipseProjection ellipse_distance_exact(Point2 q, double a, double b);

/// First-order (in eps = a^2 - b^2) approximation of the squared distance;
/// clamped below at zero before the square root.
double ellipse_distance_approx(Point2 q, double a, double b);

/// Squared-distance versions, used by the approximation-order checks.
double ellipse_distance_exact_squared(Point2 q, double a, double b);
double ellipse_distance_approx_squared(Point2 q, double a, double b);

}  // namespace armplan
