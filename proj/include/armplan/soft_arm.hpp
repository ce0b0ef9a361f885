#pragma once

#include <functional>
#include <vector>

#include "armplan/geom.hpp"

namespace armplan {

/// Quadrature description of the soft arm. Weight profiles are stored as
/// nodal samples at s_i = i/N, i = 0..N.
struct SoftArmParams {
    int nodes = 0;              ///< N quadrature intervals, N+1 nodes
    std::vector<double> eps;    ///< bending weight, > 0
    std::vector<double> mu;     ///< control weight, >= 0
    std::vector<double> omega;  ///< curvature bound, > 0

    double ds() const { return 1.0 / nodes; }
    void validate() const;  // throws ValidationError

    static SoftArmParams from_profiles(int n, const std::function<double(double)>& eps_fn,
                                       const std::function<double(double)>& mu_fn,
                                       const std::function<double(double)>& omega_fn);
};

using SoftControl = std::vector<double>;  ///< N+1 nodal controls in [-1,1]

struct SoftCurve {
    std::vector<Point2> points;     ///< N+1, points[0] = (0,0)
    std::vector<double> heading;    ///< measured from (0,-1)
    std::vector<double> curvature;  ///< kappa_i = wbar_i * u_i
};

/// Effective curvature bound wbar = mu*omega/(mu+eps) at each node.
std::vector<double> effective_curvature_bound(const SoftArmParams& p);

/// Input-to-state map by left-endpoint rectangular quadrature of the nested
/// integrals; increments have norm exactly ds.
SoftCurve forward_curve(const SoftArmParams& p, const SoftControl& u);

/// Arrays for curvature-band plots: s, kappa, +wbar, -wbar.
struct CurvatureProfile {
    std::vector<double> s;
    std::vector<double> kappa;
    std::vector<double> upper;
    std::vector<double> lower;
};

CurvatureProfile curvature_profile(const SoftCurve& curve, const SoftArmParams& p);

}  // namespace armplan
