#include "armplan/soft_arm.hpp"

#include <cmath>

#include "armplan/errors.hpp"

namespace armplan {

void SoftArmParams::validate() const {
    if (nodes < 1) throw ValidationError("soft arm needs at least one quadrature interval");
    const std::size_t n = static_cast<std::size_t>(nodes) + 1;
    if (eps.size() != n || mu.size() != n || omega.size() != n) {
        throw ValidationError("soft profiles must have N+1 nodal samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0)) throw ValidationError("bending weight must be positive");
        if (mu[i] < 0.0) throw ValidationError("control weight must be nonnegative");
        if (!(omega[i] > 0.0)) throw ValidationError("curvature bound must be positive");
    }
}

SoftArmParams SoftArmParams::from_profiles(int n, const std::function<double(double)>& eps_fn,
                                           const std::function<double(double)>& mu_fn,
                                           const std::function<double(double)>& omega_fn) {
    SoftArmParams p;
    p.nodes = n;
    p.eps.resize(n + 1);
    p.mu.resize(n + 1);
    p.omega.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        p.eps[i] = eps_fn(s);
        p.mu[i] = mu_fn(s);
        p.omega[i] = omega_fn(s);
    }
    p.validate();
    return p;
}

std::vector<double> effective_curvature_bound(const SoftArmParams& p) {
    std::vector<double> out(p.nodes + 1);
    for (int i = 0; i <= p.nodes; ++i) {
        out[i] = p.mu[i] * p.omega[i] / (p.mu[i] + p.eps[i]);
    }
    return out;
}

SoftCurve forward_curve(const SoftArmParams& p, const SoftControl& u) {
    if (static_cast<int>(u.size()) != p.nodes + 1) {
        throw DimensionMismatch("soft control must have N+1 nodal values");
    }
    const double ds = p.ds();
    const std::vector<double> wbar = effective_curvature_bound(p);

    SoftCurve c;
    c.points.resize(p.nodes + 1);
    c.heading.resize(p.nodes + 1);
    c.curvature.resize(p.nodes + 1);

    c.points[0] = {0.0, 0.0};
    c.heading[0] = 0.0;
    for (int i = 1; i <= p.nodes; ++i) {
        c.heading[i] = c.heading[i - 1] + ds * wbar[i - 1] * u[i - 1];
        const double th = c.heading[i - 1];
        c.points[i] = c.points[i - 1] + ds * Point2{std::sin(th), -std::cos(th)};
    }
    for (int i = 0; i <= p.nodes; ++i) c.curvature[i] = wbar[i] * u[i];
    return c;
}

CurvatureProfile curvature_profile(const SoftCurve& curve, const SoftArmParams& p) {
    const std::vector<double> wbar = effective_curvature_bound(p);
    CurvatureProfile out;
    const int n = p.nodes;
    out.s.resize(n + 1);
    out.kappa = curve.curvature;
    out.upper.resize(n + 1);
    out.lower.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        out.s[i] = static_cast<double>(i) / n;
        out.upper[i] = wbar[i];
        out.lower[i] = -wbar[i];
    }
    return out;
}

}  // namespace armplan
