#pragma once

#include <vector>

#include "armplan/geom.hpp"

namespace armplan {

/// Parameters of the N-link manipulator. Arrays are indexed by joint
/// k = 0..N-1; lengths[k] is the link joining joints k and k+1.
struct DiscreteArmParams {
    int links = 0;
    std::vector<double> lengths;
    std::vector<double> alpha;   ///< joint angle bounds (radians)
    std::vector<double> eps;     ///< bending weights, > 0
    std::vector<double> mu;      ///< control weights, >= 0 (0 deactivates a joint)
    std::vector<double> nu;      ///< angle-constraint weights, >= 0
    double ghost_length = 0.0;   ///< l0 > 0, anchor ghost link

    void validate() const;       // throws ValidationError
    double total_length() const;
};

using ControlVector = std::vector<double>;

/// Equilibrium joint positions plus the two ghost joints.
struct JointChain {
    std::vector<Point2> joints;     ///< N+1 points, joints[0] = (0,0)
    Point2 ghost_pre;               ///< q_{-1} = q_0 + l0*(0,1)
    Point2 ghost_post;              ///< q_{N+1} = 2 q_N - q_{N-1}
    std::vector<double> arclength;  ///< cumulative, arclength[0] = 0
};

/// Effective joint turns: arcsin(mu/(eps+mu) * sin(u_k alpha_k)).
std::vector<double> effective_angles(const DiscreteArmParams& p, const ControlVector& u);

/// d(effective angle)/du per joint.
std::vector<double> effective_angle_derivatives(const DiscreteArmParams& p,
                                                const ControlVector& u);

/// Chain with prescribed turn angles at the joints (heading 0 points (0,-1)).
JointChain chain_from_angles(const DiscreteArmParams& p, const std::vector<double>& turns);

/// Closed-form equilibrium for a control vector.
JointChain forward_joints(const DiscreteArmParams& p, const ControlVector& u);

/// Linear interpolation with m samples per link: S+1 = m*N+1 points,
/// sample k*m+j = (1-j/m) q_k + (j/m) q_{k+1}.
std::vector<Point2> sample_chain(const JointChain& chain, int samples_per_link);

/// True when some alpha_k exceeds pi/2, outside the closed form's proven
/// domain; callers may warn.
bool alpha_exceeds_closed_form_domain(const DiscreteArmParams& p);

/// Gradient of the total elastic potential (bending + angle constraint +
/// control coupling) with respect to the free joints q_1..q_N, packed as
/// (x1, y1, ..., xN, yN).
std::vector<double> potential_gradient(const DiscreteArmParams& p, const ControlVector& u,
                                       const JointChain& chain);

/// Norm of the potential gradient projected onto the tangent space of the
/// inextensibility constraints |q_k - q_{k-1}| = l_k. Vanishes exactly at
/// equilibria; the multipliers of the constrained formulation are never
/// formed.
double equilibrium_residual(const DiscreteArmParams& p, const ControlVector& u,
                            const JointChain& chain);

}  // namespace armplan
