#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "armplan/discrete_arm.hpp"
#include "armplan/geom.hpp"
#include "armplan/obstacle.hpp"
#include "armplan/soft_arm.hpp"

namespace armplan {

enum class ArmModel { discrete, soft };

/// How the obstacle term measures distance: clamped penetration (zero
/// outside, the semantics of the penalty) or the raw unsigned boundary
/// distance (the literal per-shape formulas, for A/B comparison).
enum class ObstacleMetric { clamped_penetration, raw_boundary };

struct Scenario {
    ArmModel model = ArmModel::discrete;
    DiscreteArmParams discrete;
    SoftArmParams soft;
    int samples_per_link = 13;  ///< discrete only
    Obstacle obstacles;
    Point2 target;
    double delta = 1e-8;
    double tau = 1e-10;  ///< final obstacle penalty (the continuation target)
    ObstacleMetric metric = ObstacleMetric::clamped_penetration;

    int control_size() const;
    void validate() const;  // throws ValidationError
};

struct CostBreakdown {
    double control_cost = 0.0;
    double tip_cost = 0.0;
    double obstacle_cost = 0.0;
    double total = 0.0;
};

/// Sampled configuration used by the quadrature, the reports and the plots:
/// S+1 interpolated points (discrete) or the N+1 curve nodes (soft).
std::vector<Point2> sample_configuration(const Scenario& sc, const std::vector<double>& u);

/// Arclength coordinate of each configuration sample.
std::vector<double> sample_arclengths(const Scenario& sc);

/// Cost functional at the scenario's tau.
CostBreakdown cost(const Scenario& sc, const std::vector<double>& u);

/// Cost functional at an explicit tau (used by the continuation).
CostBreakdown cost_at(const Scenario& sc, double tau, const std::vector<double>& u);

/// Analytic gradient of the total cost with respect to the control vector.
std::vector<double> grad_cost(const Scenario& sc, const std::vector<double>& u);
std::vector<double> grad_cost_at(const Scenario& sc, double tau, const std::vector<double>& u);

/// Component-wise central differences of an arbitrary functional.
std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& u, double step);

/// Central-difference gradient of the cost (verification oracle).
std::vector<double> fd_gradient(const Scenario& sc, const std::vector<double>& u, double step);

/// Largest clamped penetration over the configuration samples.
double max_penetration(const Scenario& sc, const std::vector<double>& u);

struct GradientCheckReport {
    double max_relative_error = 0.0;
    int trials = 0;
    int skipped_components = 0;  ///< components whose stencil crossed a kink
};

/// Monte-Carlo comparison of grad_cost against central differences on
/// random box controls, skipping components whose perturbed configurations
/// change distance branch (kinks of the penetration field).
GradientCheckReport check_gradients(const Scenario& sc, int trials, double step,
                                    std::uint64_t seed);

}  // namespace armplan
