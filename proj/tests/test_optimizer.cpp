#include "armplan/optimizer.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace armplan;

namespace {

Scenario free_space_scenario(Point2 target) {
    Scenario sc;
    sc.model = ArmModel::discrete;
    DiscreteArmParams& p = sc.discrete;
    p.links = 4;
    p.lengths.assign(4, 0.25);
    p.ghost_length = 0.25;
    p.alpha.assign(4, 1.2);
    p.eps.assign(4, 0.1);
    p.mu.assign(4, 1.0);
    p.nu.assign(4, 1.0);
    sc.samples_per_link = 5;
    sc.obstacles = make_union({});
    sc.target = target;
    sc.delta = 1e-8;
    sc.tau = 1e-10;
    return sc;
}

}  // namespace

TEST_CASE("project box") {
    CHECK(project_box({0.5, -0.3}) == std::vector<double>{0.5, -0.3});
    CHECK(project_box({2.0, -5.0}) == std::vector<double>{1.0, -1.0});
    const std::vector<double> once = project_box({1.7, -0.2, -9.0});
    CHECK(project_box(once) == once);
}

TEST_CASE("inner loop: projected fixed point of a box quadratic") {
    // J(u) = 0.5|u - c|^2 with c in the box
    const std::vector<double> c{0.4, -0.6, 0.1};
    const auto value = [&](const std::vector<double>& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += 0.5 * (u[i] - c[i]) * (u[i] - c[i]);
        return s;
    };
    const auto gradient = [&](const std::vector<double>& u) {
        std::vector<double> g(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) g[i] = u[i] - c[i];
        return g;
    };
    GdSettings settings;
    settings.gamma = 0.5;
    settings.tol = 1e-14;
    settings.tol_absolute = true;
    const InnerResult res = minimize_fixed_tau(value, gradient, {0.0, 0.0, 0.0}, settings);
    CHECK(res.converged);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(res.u[i] == doctest::Approx(c[i]).epsilon(1e-5));
    }

    // exterior minimum clamps to the box face
    const std::vector<double> c2{2.0, -0.6, 0.1};
    const auto value2 = [&](const std::vector<double>& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += 0.5 * (u[i] - c2[i]) * (u[i] - c2[i]);
        return s;
    };
    const auto gradient2 = [&](const std::vector<double>& u) {
        std::vector<double> g(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) g[i] = u[i] - c2[i];
        return g;
    };
    const InnerResult res2 = minimize_fixed_tau(value2, gradient2, {0.0, 0.0, 0.0}, settings);
    CHECK(res2.u[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("descend: starting at the optimum converges immediately") {
    const Scenario sc = free_space_scenario({0.0, -1.0});
    GdSettings settings;
    settings.tau0 = 1e-2;
    settings.tol_tau = 1e-4;
    const OptimizationReport report = descend(sc, settings, std::vector<double>(4, 0.0));
    CHECK(report.converged);
    CHECK(report.tip_error <= 1e-12);
    for (double v : report.u_star) CHECK(v == 0.0);
    for (const RoundStats& r : report.rounds) CHECK(r.iterations == 1);
}

TEST_CASE("descend: tau schedule halves exactly until below tol_tau") {
    const Scenario sc = free_space_scenario({0.0, -1.0});
    GdSettings settings;
    settings.tau0 = 1e-2;
    settings.tol_tau = 1e-10;
    const OptimizationReport report = descend(sc, settings, std::vector<double>(4, 0.0));
    REQUIRE(report.tau_schedule.size() == 27);  // ceil(log2(1e-2 / 1e-10))
    for (std::size_t r = 0; r < report.tau_schedule.size(); ++r) {
        CHECK(report.tau_schedule[r] ==
              doctest::Approx(1e-2 * std::pow(0.5, r + 1)).epsilon(1e-15));
    }
    CHECK(report.tau_schedule.back() < 1e-10);

    GdSettings single;
    single.tau0 = 1e-4;
    single.tol_tau = 1e-4;  // tau0/2 already below
    const OptimizationReport one = descend(sc, single, std::vector<double>(4, 0.0));
    CHECK(one.tau_schedule.size() == 1);
    CHECK(continuation_trace(one).size() == 1);
}

TEST_CASE("descend: warm start, box feasibility, descent within rounds") {
    // target generated by an interior control, hence exactly reachable
    Scenario probe = free_space_scenario({0.0, 0.0});
    const Point2 reachable =
        forward_joints(probe.discrete, {0.3, 0.2, -0.1, 0.25}).joints.back();
    const Scenario sc = free_space_scenario(reachable);
    GdSettings settings;
    settings.tau0 = 1e-2;
    settings.tol_tau = 1e-6;
    settings.step_rule = StepRule::backtracking;
    bool all_in_box = true;
    settings.observer = [&](int, int, const std::vector<double>& u, double) {
        for (double v : u) all_in_box = all_in_box && v >= -1.0 && v <= 1.0;
    };
    const OptimizationReport report = descend(sc, settings, std::vector<double>(4, 0.0));
    CHECK(all_in_box);
    for (std::size_t r = 1; r < report.rounds.size(); ++r) {
        CHECK(report.rounds[r].u_start == report.rounds[r - 1].u_end);
    }
    const double tol_allowance = 1e-12;
    for (const RoundStats& r : report.rounds) {
        CHECK(r.final_cost <= r.initial_cost * (1.0 + 1e-12) + tol_allowance);
    }
    CHECK(report.tip_error <= 1e-3);
}

TEST_CASE("descend: deterministic reports") {
    const Scenario sc = free_space_scenario({0.3, -0.5});
    GdSettings settings;
    settings.tau0 = 1e-3;
    settings.tol_tau = 1e-7;
    settings.step_rule = StepRule::backtracking;
    const OptimizationReport a = descend(sc, settings, std::vector<double>(4, 0.1));
    const OptimizationReport b = descend(sc, settings, std::vector<double>(4, 0.1));
    REQUIRE(a.u_star.size() == b.u_star.size());
    for (std::size_t i = 0; i < a.u_star.size(); ++i) CHECK(a.u_star[i] == b.u_star[i]);
    REQUIRE(a.cost_history.size() == b.cost_history.size());
    for (std::size_t i = 0; i < a.cost_history.size(); ++i) {
        CHECK(a.cost_history[i].cost == b.cost_history[i].cost);
    }
}

TEST_CASE("descend: iteration caps flag non-convergence") {
    const Scenario sc = free_space_scenario({0.368, -0.085});
    GdSettings settings;
    settings.tau0 = 1e-2;
    settings.tol_tau = 1e-10;
    settings.max_inner = 3;  // far too few
    settings.gamma = 1e-9;
    const OptimizationReport report = descend(sc, settings, std::vector<double>(4, 0.0));
    CHECK(!report.converged);
}

TEST_CASE("continuation trace mirrors the rounds") {
    const Scenario sc = free_space_scenario({0.3, -0.4});
    GdSettings settings;
    settings.tau0 = 1e-3;
    settings.tol_tau = 1e-5;
    settings.step_rule = StepRule::backtracking;
    const OptimizationReport report = descend(sc, settings, std::vector<double>(4, 0.0));
    const auto rows = continuation_trace(report);
    REQUIRE(rows.size() == report.rounds.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].tau == report.rounds[i].tau);
        CHECK(rows[i].inner_iterations == report.rounds[i].iterations);
        CHECK(rows[i].final_cost == report.rounds[i].final_cost);
    }
}

TEST_CASE("settings validation") {
    GdSettings s;
    s.gamma = 1.5;
    CHECK_THROWS(s.validate());
    s = GdSettings{};
    s.tau0 = 0.0;
    CHECK_THROWS(s.validate());
}
