#include "armplan/objective.hpp"

#include <cmath>
#include <random>

#include "armplan/errors.hpp"

namespace armplan {

namespace {

void check_dimension(const Scenario& sc, const std::vector<double>& u) {
    if (static_cast<int>(u.size()) != sc.control_size()) {
        throw DimensionMismatch("control size does not match the arm model");
    }
}

DepthEval distance_eval(const Scenario& sc, Point2 q) {
    if (sc.metric == ObstacleMetric::clamped_penetration) {
        return penetration_with_gradient(q, sc.obstacles);
    }
    return boundary_distance_with_gradient(q, sc.obstacles);
}

double distance_value(const Scenario& sc, Point2 q) {
    if (sc.metric == ObstacleMetric::clamped_penetration) return penetration(q, sc.obstacles);
    return boundary_distance(q, sc.obstacles);
}

}  // namespace

int Scenario::control_size() const {
    return model == ArmModel::discrete ? discrete.links : soft.nodes + 1;
}

void Scenario::validate() const {
    if (!(delta > 0.0)) throw ValidationError("target penalty delta must be positive");
    if (!(tau > 0.0)) throw ValidationError("obstacle penalty tau must be positive");
    if (!std::isfinite(target.x) || !std::isfinite(target.y)) {
        throw ValidationError("target must be finite");
    }
    if (model == ArmModel::discrete) {
        discrete.validate();
        if (samples_per_link < 1) throw ValidationError("samples per link must be >= 1");
    } else {
        soft.validate();
    }
}

std::vector<Point2> sample_configuration(const Scenario& sc, const std::vector<double>& u) {
    check_dimension(sc, u);
    if (sc.model == ArmModel::discrete) {
        return sample_chain(forward_joints(sc.discrete, u), sc.samples_per_link);
    }
    return forward_curve(sc.soft, u).points;
}

std::vector<double> sample_arclengths(const Scenario& sc) {
    std::vector<double> s;
    if (sc.model == ArmModel::discrete) {
        const int n = sc.discrete.links, m = sc.samples_per_link;
        s.reserve(static_cast<std::size_t>(n) * m + 1);
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < m; ++j) {
                s.push_back(acc + sc.discrete.lengths[k] * j / m);
            }
            acc += sc.discrete.lengths[k];
        }
        s.push_back(acc);
    } else {
        const int n = sc.soft.nodes;
        s.resize(n + 1);
        for (int i = 0; i <= n; ++i) s[i] = static_cast<double>(i) / n;
    }
    return s;
}

CostBreakdown cost_at(const Scenario& sc, double tau, const std::vector<double>& u) {
    check_dimension(sc, u);
    CostBreakdown out;

    if (sc.model == ArmModel::discrete) {
        const JointChain chain = forward_joints(sc.discrete, u);
        const std::vector<Point2> pts = sample_chain(chain, sc.samples_per_link);
        const int samples = static_cast<int>(pts.size()) - 1;  // S
        const double ds = 1.0 / samples;

        for (double v : u) out.control_cost += 0.5 * v * v;
        out.tip_cost = norm2(pts.back() - sc.target) / (2.0 * sc.delta);
        double acc = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double d = distance_value(sc, pts[i]);
            acc += d * d;
        }
        out.obstacle_cost = acc * ds / (2.0 * tau);
    } else {
        const SoftCurve curve = forward_curve(sc.soft, u);
        const int n = sc.soft.nodes;
        const double ds = sc.soft.ds();

        for (int i = 0; i < n; ++i) out.control_cost += 0.5 * ds * u[i] * u[i];
        out.tip_cost = norm2(curve.points[n] - sc.target) / (2.0 * sc.delta);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = distance_value(sc, curve.points[i]);
            acc += d * d;
        }
        out.obstacle_cost = acc * ds / (2.0 * tau);
    }
    out.total = out.control_cost + out.tip_cost + out.obstacle_cost;
    return out;
}

CostBreakdown cost(const Scenario& sc, const std::vector<double>& u) {
    return cost_at(sc, sc.tau, u);
}

std::vector<double> grad_cost_at(const Scenario& sc, double tau, const std::vector<double>& u) {
    check_dimension(sc, u);

    if (sc.model == ArmModel::discrete) {
        const int n = sc.discrete.links;
        const int m = sc.samples_per_link;
        const JointChain chain = forward_joints(sc.discrete, u);
        const std::vector<Point2> pts = sample_chain(chain, m);
        const int samples = static_cast<int>(pts.size()) - 1;
        const double ds = 1.0 / samples;
        const std::vector<double> dangle = effective_angle_derivatives(sc.discrete, u);

        std::vector<double> grad(u.begin(), u.end());  // control term

        const Point2 tip_pull = (1.0 / sc.delta) * (pts.back() - sc.target);
        for (int c = 0; c < n; ++c) {
            grad[c] += dangle[c] * dot(tip_pull, perp(chain.joints[n] - chain.joints[c]));
        }

        for (int i = 0; i < samples; ++i) {
            const DepthEval de = distance_eval(sc, pts[i]);
            if (de.value == 0.0) continue;
            const Point2 w = (ds / tau * de.value) * de.grad;
            const int k = i / m;
            const double lam = static_cast<double>(i % m) / m;
            // d p_i / d u_c = dangle_c * perp(p_i - q_c) for joints c < k,
            // and the partial segment lam*(q_{k+1} - q_k) at c = k.
            for (int c = 0; c < k; ++c) {
                grad[c] += dangle[c] * dot(w, perp(pts[i] - chain.joints[c]));
            }
            if (k < n && lam > 0.0) {
                grad[k] += dangle[k] *
                           dot(w, perp(lam * (chain.joints[k + 1] - chain.joints[k])));
            }
        }
        return grad;
    }

    const int n = sc.soft.nodes;
    const double ds = sc.soft.ds();
    const SoftCurve curve = forward_curve(sc.soft, u);
    const std::vector<double> wbar = effective_curvature_bound(sc.soft);

    std::vector<double> grad(n + 1, 0.0);
    for (int j = 0; j < n; ++j) grad[j] = ds * u[j];

    const Point2 tip_pull = (1.0 / sc.delta) * (curve.points[n] - sc.target);
    for (int j = 0; j < n; ++j) {
        grad[j] += wbar[j] * ds * dot(tip_pull, perp(curve.points[n] - curve.points[j + 1]));
    }

    for (int i = 1; i < n; ++i) {
        const DepthEval de = distance_eval(sc, curve.points[i]);
        if (de.value == 0.0) continue;
        const Point2 w = (ds / tau * de.value) * de.grad;
        for (int j = 0; j + 1 <= i - 1; ++j) {
            grad[j] += wbar[j] * ds * dot(w, perp(curve.points[i] - curve.points[j + 1]));
        }
    }
    return grad;
}

std::vector<double> grad_cost(const Scenario& sc, const std::vector<double>& u) {
    return grad_cost_at(sc, sc.tau, u);
}

std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& u, double step) {
    std::vector<double> g(u.size());
    std::vector<double> probe = u;
    for (std::size_t j = 0; j < u.size(); ++j) {
        probe[j] = u[j] + step;
        const double fp = f(probe);
        probe[j] = u[j] - step;
        const double fm = f(probe);
        probe[j] = u[j];
        g[j] = (fp - fm) / (2.0 * step);
    }
    return g;
}

std::vector<double> fd_gradient(const Scenario& sc, const std::vector<double>& u, double step) {
    check_dimension(sc, u);
    return central_difference(
        [&](const std::vector<double>& v) { return cost(sc, v).total; }, u, step);
}

double max_penetration(const Scenario& sc, const std::vector<double>& u) {
    double worst = 0.0;
    for (const Point2& p : sample_configuration(sc, u)) {
        worst = std::max(worst, penetration(p, sc.obstacles));
    }
    return worst;
}

GradientCheckReport check_gradients(const Scenario& sc, int trials, double step,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    const int n = sc.control_size();

    auto signatures = [&](const std::vector<double>& v) {
        const std::vector<Point2> pts = sample_configuration(sc, v);
        std::vector<std::uint64_t> sig(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sig[i] = branch_signature(pts[i], sc.obstacles);
        }
        return sig;
    };

    GradientCheckReport report;
    report.trials = trials;
    std::vector<double> u(n), probe(n);
    for (int t = 0; t < trials; ++t) {
        for (double& v : u) v = box(rng);
        const std::vector<std::uint64_t> base_sig = signatures(u);
        const std::vector<double> g = grad_cost(sc, u);

        std::vector<double> fd(n, 0.0);
        std::vector<bool> valid(n, true);
        probe = u;
        for (int j = 0; j < n; ++j) {
            probe[j] = u[j] + step;
            const double fp = cost(sc, probe).total;
            const bool smooth_p = signatures(probe) == base_sig;
            probe[j] = u[j] - step;
            const double fm = cost(sc, probe).total;
            const bool smooth_m = signatures(probe) == base_sig;
            probe[j] = u[j];
            fd[j] = (fp - fm) / (2.0 * step);
            if (!smooth_p || !smooth_m) {
                valid[j] = false;
                ++report.skipped_components;
            }
        }

        double diff2 = 0.0, fd2 = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!valid[j]) continue;
            diff2 += (g[j] - fd[j]) * (g[j] - fd[j]);
            fd2 += fd[j] * fd[j];
        }
        const double rel = std::sqrt(diff2) / (1.0 + std::sqrt(fd2));
        report.max_relative_error = std::max(report.max_relative_error, rel);
    }
    return report;
}

}  // namespace armplan
