#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "armplan/objective.hpp"

namespace armplan {

/// How the inner loop picks its step length.
///  - fixed: u <- project(u - gamma * g), the literal iteration
///  - backtracking: halve from gamma until an Armijo decrease holds
///  - spectral: Barzilai-Borwein step with a nonmonotone safeguard; far
///    better conditioned when the penalty weights make the cost stiff
enum class StepRule { fixed, backtracking, spectral };

struct GdSettings {
    double gamma = 0.1;     ///< fixed step size in (0,1)
    double tol = 1e-12;     ///< inner stop on |J_new - J_old| (relative by default)
    bool tol_absolute = false;
    double tol_tau = 1e-10;  ///< outer loop runs until tau < tol_tau
    double tau0 = 1e-2;      ///< continuation start, >> delta
    int max_inner = 100000;
    int max_outer = 64;
    StepRule step_rule = StepRule::fixed;
    /// Cap on the per-iteration control move (sup norm). Keeps the iterate
    /// path close to the gradient flow, so the continuation stays in the
    /// basin reached from the initial guess. Infinity disables it.
    double max_move = std::numeric_limits<double>::infinity();
    /// The move cap matters while the obstacle penalty is still too weak to
    /// separate basins; once tau drops below this value the penalty ridges
    /// confine the iterate on their own and the cap is lifted.
    double max_move_until_tau = 0.0;
    bool verbose = false;  ///< per-round progress on stderr

    /// Optional per-iterate hook (tests): (round, iteration, u, cost).
    std::function<void(int, int, const std::vector<double>&, double)> observer;

    void validate() const;  // throws ValidationError
};

/// Component-wise clamp to [-1,1]^N.
std::vector<double> project_box(std::vector<double> u);

struct InnerResult {
    std::vector<double> u;
    int iterations = 0;
    bool converged = false;
    double first_cost = 0.0;
    double final_cost = 0.0;
};

/// Fixed-penalty inner loop: u <- project(u - step * grad J(u)) until the
/// cost change drops below tol. Exposed separately so toy objectives can
/// drive it directly.
InnerResult minimize_fixed_tau(
    const std::function<double(const std::vector<double>&)>& value,
    const std::function<std::vector<double>(const std::vector<double>&)>& gradient,
    std::vector<double> u0, const GdSettings& settings, int round = 0);

struct RoundStats {
    int round = 0;
    double tau = 0.0;
    int iterations = 0;
    bool converged = false;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    double max_penetration = 0.0;
    std::vector<double> u_start;
    std::vector<double> u_end;
};

struct CostHistoryEntry {
    double tau;
    int iteration;
    double cost;
};

struct OptimizationReport {
    std::vector<double> u_star;
    std::vector<RoundStats> rounds;
    std::vector<double> tau_schedule;
    std::vector<CostHistoryEntry> cost_history;
    CostBreakdown final_breakdown;  ///< evaluated at the last continuation tau
    double tip_error = 0.0;
    double max_penetration = 0.0;
    bool converged = true;  ///< false when an iteration bound was hit
};

/// Penalty continuation: tau halves from tau0 until below tol_tau, each
/// round warm-started from the previous optimum.
OptimizationReport descend(const Scenario& sc, const GdSettings& settings,
                           const std::vector<double>& u0);

struct TraceRow {
    int round;
    double tau;
    int inner_iterations;
    double final_cost;
    double max_penetration;
};

/// One row per continuation round.
std::vector<TraceRow> continuation_trace(const OptimizationReport& report);

}  // namespace armplan
