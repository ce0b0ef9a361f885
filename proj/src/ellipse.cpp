#include "armplan/ellipse.hpp"

#include <algorithm>
#include <cmath>

#include "armplan/errors.hpp"

namespace armplan {

namespace {

void check_axes(double a, double b) {
    if (!(b > 0.0) || !(b <= a)) {
        throw InvalidAxes("ellipse semi-axes must satisfy 0 < b <= a");
    }
}

double quartic_derivative(double lam, Point2 q, double a, double b) {
    const double a2 = a * a, b2 = b * b;
    const double f = (lam - a2) * (lam - b2);
    return 2.0 * f * (2.0 * lam - a2 - b2) - 2.0 * a2 * q.x * q.x * (lam - b2)
           - 2.0 * b2 * q.y * q.y * (lam - a2);
}

}  // namespace

double ellipse_quartic(double lam, Point2 q, double a, double b) {
    const double a2 = a * a, b2 = b * b;
    const double f = (lam - a2) * (lam - b2);
    const double g = lam - b2;
    const double h = lam - a2;
    return f * f - a2 * q.x * q.x * g * g - b2 * q.y * q.y * h * h;
}

double ellipse_lambda_exact(Point2 q, double a, double b) {
    check_axes(a, b);
    const double a2 = a * a, b2 = b * b;
    const double r = norm(q);

    // Near-circular: the quartic is ill conditioned, use the circle root.
    if (a2 - b2 < 1e-12) return a2 - a * r;

    // On the major axis both b^2 and a^2 - a|q1| are roots; the minimizer
    // takes the smaller one.
    if (q.y == 0.0) return std::min(a2 - a * std::abs(q.x), b2);

    // q2 != 0: unique root in (-inf, b^2), with P(b^2) < 0 and P -> +inf on
    // the left. Grow the bracket geometrically, then safeguarded Newton.
    double hi = b2;
    double offset = 1.0 + r * a;
    double lo = b2 - offset;
    while (ellipse_quartic(lo, q, a, b) <= 0.0) {
        offset *= 2.0;
        lo = b2 - offset;
    }

    double lam = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double p = ellipse_quartic(lam, q, a, b);
        if (p == 0.0) break;
        if (p > 0.0) {
            lo = lam;
        } else {
            hi = lam;
        }
        const double dp = quartic_derivative(lam, q, a, b);
        double next = (dp != 0.0) ? lam - p / dp : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 1e-15 * (std::abs(lam) + b2 + 1.0)) {
            lam = next;
            break;
        }
        lam = next;
    }
    return lam;
}

EllipseProjection ellipse_distance_exact(Point2 q, double a, double b) {
    check_axes(a, b);
    const double a2 = a * a, b2 = b * b;
    EllipseProjection out;

    if (q.x == 0.0 && q.y == 0.0) {
        // Center: nearest boundary point sits on the minor axis.
        out.lambda_star = b2;
        out.foot_point = {0.0, b};
        out.distance = b;
        return out;
    }

    const double ax = std::abs(q.x);
    if (q.y == 0.0 && a2 > b2 && a2 - a * ax >= b2) {
        // Deep interior on the major axis: the foot point leaves the axis.
        const double eps = a2 - b2;
        out.lambda_star = b2;
        const double fx = q.x * a2 / eps;
        const double fy = b * std::sqrt(std::max(0.0, 1.0 - fx * fx / a2));
        out.foot_point = {fx, fy};
        out.distance = std::sqrt(std::max(0.0, b2 - b2 / eps * q.x * q.x));
        return out;
    }

    const double lam = ellipse_lambda_exact(q, a, b);
    out.lambda_star = lam;

    const double da = a2 - lam;
    const double db = b2 - lam;
    Point2 foot;
    foot.x = (da != 0.0) ? q.x * a2 / da : (q.x >= 0.0 ? a : -a);
    foot.y = (db != 0.0) ? q.y * b2 / db : 0.0;
    out.foot_point = foot;

    const double dx = (da != 0.0) ? lam / da * q.x : a - norm(q);
    const double dy = (db != 0.0) ? lam / db * q.y : 0.0;
    out.distance = std::sqrt(dx * dx + dy * dy);
    return out;
}

double ellipse_distance_exact_squared(Point2 q, double a, double b) {
    const EllipseProjection p = ellipse_distance_exact(q, a, b);
    return p.distance * p.distance;
}

double ellipse_distance_approx_squared(Point2 q, double a, double b) {
    check_axes(a, b);
    const double b2 = b * b;
    const double eps = a * a - b2;
    const double r = norm(q);
    if (eps == 0.0) {
        const double d = b - r;
        return d * d;
    }
    const double q12 = q.x * q.x;
    if (q.y != 0.0 || q12 >= eps * eps / (b2 + eps)) {
        // First-order term in eps at the circular foot point. The coefficient
        // q1^2/(b r^2) keeps the expansion o(eps)-accurate for every fixed q
        // (envelope differentiation of |q - p(t)|^2 through a = sqrt(b^2+eps)).
        const double d2 = (b - r) * (b - r) + eps * (q12 / (b * r * r)) * (b - r);
        return std::max(0.0, d2);
    }
    return std::max(0.0, b2 - b2 / eps * q12);
}

double ellipse_distance_approx(Point2 q, double a, double b) {
    return std::sqrt(ellipse_distance_approx_squared(q, a, b));
}

}  // namespace armplan
