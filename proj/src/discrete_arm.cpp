#include "armplan/discrete_arm.hpp"

#include <cmath>
#include <numbers>

#include "armplan/errors.hpp"

namespace armplan {

namespace {

// Cross product convention of the joint potentials, oriented so that a
// positive turn of the chain gives a positive bending value b_k.
double chain_cross(Point2 w, Point2 v) { return w.y * v.x - w.x * v.y; }

void check_control(const DiscreteArmParams& p, const ControlVector& u) {
    if (static_cast<int>(u.size()) != p.links) {
        throw DimensionMismatch("control vector size must equal the number of links");
    }
}

}  // namespace

void DiscreteArmParams::validate() const {
    if (links < 1) throw ValidationError("arm needs at least one link");
    const std::size_t n = static_cast<std::size_t>(links);
    if (lengths.size() != n || alpha.size() != n || eps.size() != n || mu.size() != n ||
        nu.size() != n) {
        throw ValidationError("arm parameter arrays must all have N entries");
    }
    if (!(ghost_length > 0.0)) throw ValidationError("ghost link length must be positive");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(lengths[k] > 0.0)) throw ValidationError("link lengths must be positive");
        if (!(eps[k] > 0.0)) throw ValidationError("bending weights must be positive");
        if (mu[k] < 0.0) throw ValidationError("control weights must be nonnegative");
        if (nu[k] < 0.0) throw ValidationError("angle-constraint weights must be nonnegative");
        if (alpha[k] < 0.0) throw ValidationError("angle bounds must be nonnegative");
    }
}

double DiscreteArmParams::total_length() const {
    double s = 0.0;
    for (double l : lengths) s += l;
    return s;
}

std::vector<double> effective_angles(const DiscreteArmParams& p, const ControlVector& u) {
    check_control(p, u);
    std::vector<double> out(p.links);
    for (int k = 0; k < p.links; ++k) {
        const double ratio = p.mu[k] / (p.eps[k] + p.mu[k]);
        out[k] = std::asin(ratio * std::sin(u[k] * p.alpha[k]));
    }
    return out;
}

std::vector<double> effective_angle_derivatives(const DiscreteArmParams& p,
                                                const ControlVector& u) {
    check_control(p, u);
    std::vector<double> out(p.links);
    for (int k = 0; k < p.links; ++k) {
        const double ratio = p.mu[k] / (p.eps[k] + p.mu[k]);
        const double s = ratio * std::sin(u[k] * p.alpha[k]);
        out[k] = ratio * p.alpha[k] * std::cos(u[k] * p.alpha[k]) / std::sqrt(1.0 - s * s);
    }
    return out;
}

JointChain chain_from_angles(const DiscreteArmParams& p, const std::vector<double>& turns) {
    if (static_cast<int>(turns.size()) != p.links) {
        throw DimensionMismatch("turn array size must equal the number of links");
    }
    JointChain chain;
    chain.joints.resize(p.links + 1);
    chain.arclength.resize(p.links + 1);
    chain.joints[0] = {0.0, 0.0};
    chain.arclength[0] = 0.0;
    double heading = 0.0;
    for (int k = 0; k < p.links; ++k) {
        heading += turns[k];
        const Point2 dir{std::sin(heading), -std::cos(heading)};
        chain.joints[k + 1] = chain.joints[k] + p.lengths[k] * dir;
        chain.arclength[k + 1] = chain.arclength[k] + p.lengths[k];
    }
    chain.ghost_pre = chain.joints[0] + Point2{0.0, p.ghost_length};
    const int n = p.links;
    chain.ghost_post = 2.0 * chain.joints[n] - chain.joints[n - 1];
    return chain;
}

JointChain forward_joints(const DiscreteArmParams& p, const ControlVector& u) {
    return chain_from_angles(p, effective_angles(p, u));
}

std::vector<Point2> sample_chain(const JointChain& chain, int samples_per_link) {
    if (samples_per_link < 1) throw DimensionMismatch("samples per link must be >= 1");
    const int n = static_cast<int>(chain.joints.size()) - 1;
    const int m = samples_per_link;
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(n) * m + 1);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < m; ++j) {
            const double lam = static_cast<double>(j) / m;
            out.push_back((1.0 - lam) * chain.joints[k] + lam * chain.joints[k + 1]);
        }
    }
    out.push_back(chain.joints[n]);
    return out;
}

bool alpha_exceeds_closed_form_domain(const DiscreteArmParams& p) {
    for (double a : p.alpha) {
        if (a > 0.5 * std::numbers::pi) return true;
    }
    return false;
}

std::vector<double> potential_gradient(const DiscreteArmParams& p, const ControlVector& u,
                                       const JointChain& chain) {
    check_control(p, u);
    const int n = p.links;
    std::vector<double> grad(2 * n, 0.0);

    auto joint = [&](int k) -> Point2 {
        if (k == -1) return chain.ghost_pre;
        return chain.joints[k];
    };
    auto add = [&](int k, Point2 g) {
        // q_0 and the ghosts are fixed; only q_1..q_N are free.
        if (k < 1 || k > n) return;
        grad[2 * (k - 1)] += g.x;
        grad[2 * (k - 1) + 1] += g.y;
    };

    for (int k = 0; k < n; ++k) {
        const Point2 v = joint(k) - joint(k - 1);
        const Point2 w = joint(k + 1) - joint(k);
        const double lk = (k == 0) ? p.ghost_length : p.lengths[k - 1];
        const double lk1 = p.lengths[k];
        const double ll = lk1 * lk;

        const double b = chain_cross(w, v);
        const double ctrl = ll * std::sin(p.alpha[k] * u[k]);
        // d b / d w = (v.y, -v.x), d b / d v = (-w.y, w.x) under chain_cross.
        const Point2 db_dw{v.y, -v.x};
        const Point2 db_dv{-w.y, w.x};

        const double coef_b = p.eps[k] * b - p.mu[k] * (ctrl - b);
        add(k + 1, coef_b * db_dw);
        add(k, -1.0 * coef_b * db_dw + coef_b * db_dv);
        add(k - 1, -1.0 * coef_b * db_dv);

        const double gk = std::cos(p.alpha[k]) - dot(w, v) / ll;
        if (gk > 0.0 && p.nu[k] > 0.0) {
            const double coef_g = -2.0 * p.nu[k] * gk / ll;
            add(k + 1, coef_g * v);
            add(k, coef_g * (w - v));
            add(k - 1, -1.0 * coef_g * w);
        }
    }
    return grad;
}

double equilibrium_residual(const DiscreteArmParams& p, const ControlVector& u,
                            const JointChain& chain) {
    const int n = p.links;
    std::vector<double> g = potential_gradient(p, u, chain);

    // Constraint rows C_k = |q_k - q_{k-1}|^2 - l_k^2, k = 1..n. Project g
    // onto their tangent space: g_t = g - J^T (J J^T)^{-1} J g, with J J^T
    // tridiagonal.
    std::vector<Point2> e(n);
    for (int k = 0; k < n; ++k) e[k] = chain.joints[k + 1] - chain.joints[k];

    std::vector<double> diag(n), off(std::max(0, n - 1));
    for (int k = 0; k < n; ++k) {
        diag[k] = 4.0 * norm2(e[k]) * (k == 0 ? 1.0 : 2.0);
        if (k + 1 < n) off[k] = -4.0 * dot(e[k], e[k + 1]);
    }

    std::vector<double> rhs(n);
    for (int k = 0; k < n; ++k) {
        const Point2 gk{g[2 * k], g[2 * k + 1]};
        const Point2 gkm1 = (k == 0) ? Point2{0.0, 0.0} : Point2{g[2 * (k - 1)], g[2 * k - 1]};
        rhs[k] = 2.0 * dot(e[k], gk - gkm1);
    }

    // Tridiagonal LDL^T solve.
    std::vector<double> d(n), l(std::max(0, n - 1)), y(n);
    d[0] = diag[0];
    for (int k = 0; k + 1 < n; ++k) {
        l[k] = off[k] / d[k];
        d[k + 1] = diag[k + 1] - l[k] * l[k] * d[k];
    }
    y[0] = rhs[0];
    for (int k = 1; k < n; ++k) y[k] = rhs[k] - l[k - 1] * y[k - 1];
    for (int k = 0; k < n; ++k) y[k] /= d[k];
    for (int k = n - 2; k >= 0; --k) y[k] -= l[k] * y[k + 1];

    // g_t = g - J^T y
    for (int k = 0; k < n; ++k) {
        const Point2 contrib = 2.0 * y[k] * e[k];
        g[2 * k] -= contrib.x;
        g[2 * k + 1] -= contrib.y;
        if (k >= 1) {
            g[2 * (k - 1)] += contrib.x;
            g[2 * k - 1] += contrib.y;
        }
    }

    double s = 0.0;
    for (double v : g) s += v * v;
    return std::sqrt(s);
}

}  // namespace armplan
