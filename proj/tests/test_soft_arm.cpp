#include "armplan/soft_arm.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "armplan/discrete_arm.hpp"
#include "armplan/errors.hpp"

using namespace armplan;

namespace {

constexpr double pi = std::numbers::pi;

double table_eps(double s) { return 0.1 * (1.0 - 0.9 * s); }
double table_mu(double s) { return 1.0 - 0.9 * s; }
double table_omega(double s) { return 2.0 * pi * (2.0 + s * s); }

SoftArmParams table_params(int n = 100) {
    return SoftArmParams::from_profiles(n, table_eps, table_mu, table_omega);
}

}  // namespace

TEST_CASE("effective curvature bound: degenerate and limit cases") {
    auto p = SoftArmParams::from_profiles(
        10, [](double) { return 0.2; }, [](double) { return 0.0; }, [](double) { return 3.0; });
    for (double w : effective_curvature_bound(p)) CHECK(w == 0.0);

    auto stiffless = SoftArmParams::from_profiles(
        10, [](double) { return 1e-14; }, [](double) { return 1.0; }, [](double) { return 3.0; });
    for (double w : effective_curvature_bound(stiffless)) {
        CHECK(w == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("effective curvature bound: table profiles cancel to omega/1.1") {
    const SoftArmParams p = table_params();
    const auto wbar = effective_curvature_bound(p);
    for (int i = 0; i <= p.nodes; ++i) {
        const double s = static_cast<double>(i) / p.nodes;
        CHECK(wbar[i] == doctest::Approx(table_omega(s) / 1.1).epsilon(1e-12));
    }
}

TEST_CASE("forward curve: zero control hangs straight") {
    const SoftArmParams p = table_params(50);
    const SoftCurve c = forward_curve(p, SoftControl(51, 0.0));
    for (int i = 0; i <= 50; ++i) {
        CHECK(c.points[i].x == 0.0);
        CHECK(c.points[i].y == doctest::Approx(-static_cast<double>(i) / 50).epsilon(1e-14));
        CHECK(c.curvature[i] == 0.0);
    }
}

TEST_CASE("forward curve: constant curvature approaches the circular arc") {
    // wbar*u == c uniform: tip -> ((1-cos c)/c, -sin c / c)
    const double target_c = 2.0;
    auto p = SoftArmParams::from_profiles(
        100, [](double) { return 0.5; }, [](double) { return 1.0; },
        [&](double) { return target_c * 1.5; });  // wbar = 1.5c * (1/1.5) = c
    const SoftCurve curve = forward_curve(p, SoftControl(101, 1.0));
    const Point2 tip = curve.points.back();
    const Point2 expect{(1.0 - std::cos(target_c)) / target_c, -std::sin(target_c) / target_c};
    CHECK(distance(tip, expect) <= 10.0 * p.ds());
    CHECK(curve.points.size() == 101);
}

TEST_CASE("forward curve: unit speed and curvature band") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    const SoftArmParams p = table_params();
    SoftControl u(101);
    for (double& v : u) v = box(rng);
    const SoftCurve c = forward_curve(p, u);
    const auto wbar = effective_curvature_bound(p);
    for (int i = 0; i < 100; ++i) {
        CHECK(std::abs(distance(c.points[i + 1], c.points[i]) - p.ds()) <= 1e-15);
    }
    for (int i = 0; i <= 100; ++i) {
        CHECK(std::abs(c.curvature[i]) <= wbar[i] + 1e-15);
        CHECK(wbar[i] <= p.omega[i] + 1e-15);
    }
}

TEST_CASE("forward curve: mirror symmetry under control negation") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    const SoftArmParams p = table_params(40);
    SoftControl u(41), nu(41);
    for (int i = 0; i <= 40; ++i) {
        u[i] = box(rng);
        nu[i] = -u[i];
    }
    const SoftCurve a = forward_curve(p, u);
    const SoftCurve b = forward_curve(p, nu);
    for (int i = 0; i <= 40; ++i) {
        CHECK(a.points[i].x == doctest::Approx(-b.points[i].x).epsilon(1e-13));
        CHECK(a.points[i].y == doctest::Approx(b.points[i].y).epsilon(1e-13));
    }
}

TEST_CASE("forward curve: tip converges first order under refinement") {
    auto control = [](double s) { return 0.4 * std::sin(2.0 * pi * s) + 0.2; };
    auto tip_at = [&](int n) {
        const SoftArmParams p = table_params(n);
        SoftControl u(n + 1);
        for (int i = 0; i <= n; ++i) u[i] = control(static_cast<double>(i) / n);
        return forward_curve(p, u).points.back();
    };
    const Point2 ref = tip_at(6400);
    double prev = 1e300;
    for (int n : {50, 100, 200, 400}) {
        const double err = distance(tip_at(n), ref);
        CHECK(err <= 0.6 * prev + 1e-12);
        CHECK(err <= 8.0 / n);
        prev = err;
    }
}

TEST_CASE("curvature profile: saturated and idle controls") {
    const SoftArmParams p = table_params(30);
    const auto wbar = effective_curvature_bound(p);

    const SoftCurve sat = forward_curve(p, SoftControl(31, 1.0));
    const CurvatureProfile cp = curvature_profile(sat, p);
    for (int i = 0; i <= 30; ++i) {
        CHECK(cp.kappa[i] == doctest::Approx(wbar[i]).epsilon(1e-14));
        CHECK(cp.upper[i] == doctest::Approx(wbar[i]).epsilon(1e-14));
        CHECK(cp.lower[i] == doctest::Approx(-wbar[i]).epsilon(1e-14));
        CHECK(cp.s[i] == doctest::Approx(static_cast<double>(i) / 30).epsilon(1e-14));
    }

    const SoftCurve idle = forward_curve(p, SoftControl(31, 0.0));
    for (double k : curvature_profile(idle, p).kappa) CHECK(k == 0.0);
}

TEST_CASE("discrete chain approaches the soft curve under matched parameters") {
    // matched construction: alpha_k = omega(s_k) * l, same mu/(mu+eps) ratio,
    // piecewise-constant control sampled at the joint arclengths
    auto control = [](double s) { return 0.25 * std::sin(2.0 * pi * s); };
    for (int n : {8, 32, 128}) {
        DiscreteArmParams dp;
        dp.links = n;
        dp.lengths.assign(n, 1.0 / n);
        dp.ghost_length = 1.0 / n;
        dp.alpha.resize(n);
        dp.eps.resize(n);
        dp.mu.resize(n);
        dp.nu.assign(n, 1.0);
        ControlVector du(n);
        for (int k = 0; k < n; ++k) {
            const double s = static_cast<double>(k) / n;
            dp.alpha[k] = table_omega(s) / n;
            dp.eps[k] = table_eps(s);
            dp.mu[k] = table_mu(s);
            du[k] = control(s);
        }
        const Point2 discrete_tip = forward_joints(dp, du).joints[n];

        const SoftArmParams sp = table_params(n);
        SoftControl su(n + 1);
        for (int i = 0; i <= n; ++i) su[i] = control(static_cast<double>(i) / n);
        const Point2 soft_tip = forward_curve(sp, su).points.back();

        CHECK(distance(discrete_tip, soft_tip) <= 0.5 / n);
    }
}

TEST_CASE("soft parameter validation") {
    SoftArmParams p = table_params(10);
    p.eps[3] = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK_THROWS_AS(forward_curve(table_params(10), SoftControl(5, 0.0)), DimensionMismatch);
}
