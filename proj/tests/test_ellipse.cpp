#include "armplan/ellipse.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "armplan/errors.hpp"
#include "support.hpp"

using namespace armplan;

TEST_CASE("ellipse lambda: circle closed form") {
    // a = b: lambda* = a^2 - a|q|
    CHECK(ellipse_lambda_exact({0.5, 0.0}, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ellipse_lambda_exact({0.0, 2.0}, 1.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("ellipse lambda: center takes b^2") {
    CHECK(ellipse_lambda_exact({0.0, 0.0}, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ellipse lambda: generic point matches the dense scan oracle") {
    const Point2 q{1.0, 1.0};
    const double lam = ellipse_lambda_exact(q, 2.0, 1.0);
    const double oracle = test::lambda_scan_oracle(q, 2.0, 1.0);
    CHECK(lam == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(lam <= 1.0);
}

TEST_CASE("ellipse lambda: rejects bad axes") {
    CHECK_THROWS_AS(ellipse_lambda_exact({0.1, 0.1}, 1.0, -1.0), InvalidAxes);
    CHECK_THROWS_AS(ellipse_lambda_exact({0.1, 0.1}, 1.0, 2.0), InvalidAxes);
}

TEST_CASE("ellipse lambda: quartic residual is small and lambda <= b^2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ax(0.1, 3.0);
    std::uniform_real_distribution<double> qs(-4.0, 4.0);
    for (int t = 0; t < 500; ++t) {
        double a = ax(rng), b = ax(rng);
        if (b > a) std::swap(a, b);
        const Point2 q{qs(rng), qs(rng)};
        const double lam = ellipse_lambda_exact(q, a, b);
        CHECK(lam <= b * b + 1e-12);

        const double a2 = a * a, b2 = b * b;
        const double t1 = std::pow((lam - a2) * (lam - b2), 2);
        const double t2 = a2 * q.x * q.x * (lam - b2) * (lam - b2);
        const double t3 = b2 * q.y * q.y * (lam - a2) * (lam - a2);
        const double scale = std::max(1e-30, t1 + t2 + t3);
        CHECK(std::abs(ellipse_quartic(lam, q, a, b)) / scale <= 1e-9);
    }
}

TEST_CASE("ellipse exact distance: fixed cases") {
    // center: d^2 = b^2
    CHECK(ellipse_distance_exact({0.0, 0.0}, 2.0, 1.0).distance == doctest::Approx(1.0));
    // deep interior on the major axis: d^2 = b^2 - b^2/(a^2-b^2) q1^2
    const double d = ellipse_distance_exact({0.5, 0.0}, 2.0, 1.0).distance;
    CHECK(d * d == doctest::Approx(1.0 - 0.25 / 3.0).epsilon(1e-12));
    // boundary point
    CHECK(ellipse_distance_exact({2.0, 0.0}, 2.0, 1.0).distance ==
          doctest::Approx(0.0).epsilon(1e-9));
    // outside point vs brute force
    const double brute = test::ellipse_distance_brute({3.0, 2.0}, 2.0, 1.0);
    CHECK(ellipse_distance_exact({3.0, 2.0}, 2.0, 1.0).distance ==
          doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("ellipse exact distance: foot point lies on the boundary") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ax(0.1, 3.0);
    std::uniform_real_distribution<double> qs(-3.0, 3.0);
    for (int t = 0; t < 300; ++t) {
        double a = ax(rng), b = ax(rng);
        if (b > a) std::swap(a, b);
        const Point2 q{qs(rng), qs(rng)};
        const EllipseProjection p = ellipse_distance_exact(q, a, b);
        const double level = p.foot_point.x * p.foot_point.x / (a * a) +
                             p.foot_point.y * p.foot_point.y / (b * b) - 1.0;
        CHECK(std::abs(level) <= 1e-10);
        CHECK(distance(q, p.foot_point) == doctest::Approx(p.distance).epsilon(1e-7));
    }
}

TEST_CASE("ellipse exact distance: brute-force agreement on random queries") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> ax(0.1, 3.0);
    std::uniform_real_distribution<double> qs(-4.0, 4.0);
    for (int t = 0; t < 40; ++t) {
        double a = ax(rng), b = ax(rng);
        if (b > a) std::swap(a, b);
        const Point2 q{qs(rng), qs(rng)};
        const double got = ellipse_distance_exact(q, a, b).distance;
        const double brute = test::ellipse_distance_brute(q, a, b, 200000);
        CHECK(std::abs(got - brute) <= 1e-6);
    }
}

TEST_CASE("ellipse approximate distance: circle reduction") {
    const double d = ellipse_distance_approx({0.5, 0.5}, 1.0, 1.0);
    CHECK(d == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("ellipse approximate distance: small-q1 branch") {
    // a=2, b=1: eps = 3, threshold eps^2/(b^2+eps) = 2.25 >> q1^2
    const double d = ellipse_distance_approx({0.001, 0.0}, 2.0, 1.0);
    CHECK(d * d == doctest::Approx(1.0 - (1.0 / 3.0) * 1e-6).epsilon(1e-12));
}

TEST_CASE("ellipse approximate distance: first-order error model") {
    // e(eps) = |d^2 - d_eps^2| should scale like C * eps^2.
    const Point2 q{0.3, 0.4};
    double prev_ratio = -1.0;
    for (int k = 0; k < 6; ++k) {
        const double eps = 0.02 * std::pow(0.5, k);
        const double a = std::sqrt(1.0 + eps);
        const double e = std::abs(ellipse_distance_exact_squared(q, a, 1.0) -
                                  ellipse_distance_approx_squared(q, a, 1.0));
        const double ratio = e / (eps * eps);
        if (prev_ratio >= 0.0) CHECK(ratio <= 3.0 * prev_ratio + 1e-12);
        prev_ratio = ratio;
    }
}

TEST_CASE("ellipse approximate distance: o(eps) ratios decrease") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
    std::uniform_real_distribution<double> rad(0.1, 0.9);
    for (int t = 0; t < 10; ++t) {
        // stay away from the boundary band so the clamp never engages
        const double r = (t % 2 == 0) ? rad(rng) : 1.5 + rad(rng);
        const double th = ang(rng);
        Point2 q{r * std::cos(th), r * std::sin(th)};
        if (std::abs(q.y) < 0.05) q.y = 0.05;
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 6; ++k) {
            const double eps = 0.1 * std::pow(0.5, k);
            const double a = std::sqrt(1.0 + eps);
            const double e = std::abs(ellipse_distance_exact_squared(q, a, 1.0) -
                                      ellipse_distance_approx_squared(q, a, 1.0));
            const double ratio = e / eps;
            CHECK(ratio <= prev + 1e-12);
            prev = ratio;
        }
    }
}
