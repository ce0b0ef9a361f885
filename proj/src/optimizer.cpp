#include "armplan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "armplan/errors.hpp"

namespace armplan {

void GdSettings::validate() const {
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw ValidationError("step size must be in (0,1)");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");
    if (!(tol_tau > 0.0)) throw ValidationError("tol_tau must be positive");
    if (!(tau0 > 0.0)) throw ValidationError("tau0 must be positive");
    if (max_inner < 1 || max_outer < 1) throw ValidationError("iteration bounds must be >= 1");
}

std::vector<double> project_box(std::vector<double> u) {
    for (double& v : u) v = std::clamp(v, -1.0, 1.0);
    return u;
}

InnerResult minimize_fixed_tau(
    const std::function<double(const std::vector<double>&)>& value,
    const std::function<std::vector<double>(const std::vector<double>&)>& gradient,
    std::vector<double> u0, const GdSettings& settings, int round) {
    InnerResult res;
    res.u = project_box(std::move(u0));
    const std::size_t dim = res.u.size();

    double current = value(res.u);
    res.first_cost = current;
    const double tol = settings.tol_absolute
                           ? settings.tol
                           : settings.tol * std::max(std::abs(current), 1e-30);

    double step = settings.gamma;
    constexpr double armijo = 1e-4;
    constexpr double step_floor = 1e-18;
    constexpr double step_ceil = 1e12;

    // nonmonotone reference window for the spectral rule
    constexpr int window = 10;
    std::vector<double> recent(window, current);
    int recent_pos = 0;

    std::vector<double> prev_u, prev_g;
    std::vector<double> trial(dim);

    for (int n = 0; n < settings.max_inner; ++n) {
        const std::vector<double> g = gradient(res.u);

        if (settings.step_rule == StepRule::spectral) {
            if (!prev_u.empty()) {
                double sy = 0.0, ss = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    const double du = res.u[i] - prev_u[i];
                    const double dg = g[i] - prev_g[i];
                    sy += du * dg;
                    ss += du * du;
                }
                step = (sy > 0.0) ? std::clamp(ss / sy, step_floor, step_ceil)
                                  : step_ceil;
            }
            prev_u = res.u;
            prev_g = g;
        } else if (settings.step_rule == StepRule::backtracking) {
            step = std::min(settings.gamma, 2.0 * step);
        }

        if (std::isfinite(settings.max_move)) {
            double gmax = 0.0;
            for (double v : g) gmax = std::max(gmax, std::abs(v));
            if (gmax > 0.0) step = std::min(step, settings.max_move / gmax);
        }

        double trial_cost = 0.0;
        if (settings.step_rule == StepRule::fixed) {
            for (std::size_t i = 0; i < dim; ++i) {
                trial[i] = std::clamp(res.u[i] - settings.gamma * g[i], -1.0, 1.0);
            }
            trial_cost = value(trial);
        } else {
            const double reference =
                settings.step_rule == StepRule::spectral
                    ? *std::max_element(recent.begin(), recent.end())
                    : current;
            while (true) {
                for (std::size_t i = 0; i < dim; ++i) {
                    trial[i] = std::clamp(res.u[i] - step * g[i], -1.0, 1.0);
                }
                trial_cost = value(trial);
                double move2 = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    move2 += (trial[i] - res.u[i]) * (trial[i] - res.u[i]);
                }
                if (trial_cost <= reference - armijo / std::max(step, step_floor) * move2 ||
                    step <= step_floor) {
                    break;
                }
                step *= 0.5;
            }
        }

        const double change = std::abs(trial_cost - current);
        res.u = trial;
        current = trial_cost;
        recent[recent_pos] = current;
        recent_pos = (recent_pos + 1) % window;
        res.iterations = n + 1;
        if (settings.observer) settings.observer(round, n, res.u, current);
        if (change < tol) {
            res.converged = true;
            break;
        }
    }
    res.final_cost = current;
    return res;
}

OptimizationReport descend(const Scenario& sc, const GdSettings& settings,
                           const std::vector<double>& u0) {
    settings.validate();
    sc.validate();
    if (static_cast<int>(u0.size()) != sc.control_size()) {
        throw DimensionMismatch("initial guess size does not match the arm model");
    }

    OptimizationReport report;
    std::vector<double> u = project_box(u0);
    double tau = settings.tau0;

    int round = 0;
    while (true) {
        ++round;
        tau *= 0.5;

        const auto value = [&](const std::vector<double>& v) { return cost_at(sc, tau, v).total; };
        const auto gradient = [&](const std::vector<double>& v) {
            return grad_cost_at(sc, tau, v);
        };

        RoundStats stats;
        stats.round = round;
        stats.tau = tau;
        stats.u_start = u;

        GdSettings round_settings = settings;
        if (tau <= settings.max_move_until_tau) {
            round_settings.max_move = std::numeric_limits<double>::infinity();
        }
        InnerResult inner = minimize_fixed_tau(value, gradient, u, round_settings, round);
        u = inner.u;

        stats.iterations = inner.iterations;
        stats.converged = inner.converged;
        stats.initial_cost = inner.first_cost;
        stats.final_cost = inner.final_cost;
        stats.max_penetration = max_penetration(sc, u);
        stats.u_end = u;
        if (!inner.converged) report.converged = false;

        report.tau_schedule.push_back(tau);
        report.cost_history.push_back({tau, inner.iterations, inner.final_cost});
        report.rounds.push_back(std::move(stats));

        if (settings.verbose) {
            std::fprintf(stderr, "round %3d  tau %.3e  iters %6d  J %.9e  pen %.3e\n", round,
                         tau, inner.iterations, inner.final_cost,
                         report.rounds.back().max_penetration);
        }

        if (tau < settings.tol_tau) break;
        if (round >= settings.max_outer) {
            report.converged = false;
            break;
        }
    }

    report.u_star = u;
    report.final_breakdown = cost_at(sc, tau, u);
    const std::vector<Point2> pts = sample_configuration(sc, u);
    report.tip_error = distance(pts.back(), sc.target);
    report.max_penetration = max_penetration(sc, u);
    return report;
}

std::vector<TraceRow> continuation_trace(const OptimizationReport& report) {
    std::vector<TraceRow> rows;
    rows.reserve(report.rounds.size());
    for (const RoundStats& r : report.rounds) {
        rows.push_back({r.round, r.tau, r.iterations, r.final_cost, r.max_penetration});
    }
    return rows;
}

}  // namespace armplan
