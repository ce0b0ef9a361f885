#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "armplan/geom.hpp"

namespace armplan {

struct DistanceField;  // eikonal.hpp

struct Obstacle;

/// Finite union of obstacles; an empty member list is the empty workspace.
struct Union {
    std::vector<Obstacle> members;
};

struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// Square of side `side`; `rotation` is the counter-clockwise angle of the
/// local frame in radians (scenario files give clockwise degrees).
struct Square {
    Point2 center;
    double side = 0.0;
    double rotation = 0.0;
};

/// Ellipse with ordered semi-axes 0 < b <= a; rotation as for Square.
struct Ellipse {
    Point2 center;
    double a = 0.0;
    double b = 0.0;
    double rotation = 0.0;
};

/// Obstacle known only through a precomputed depth field.
struct Sampled {
    std::shared_ptr<const DistanceField> field;
};

struct Obstacle {
    using Shape = std::variant<Union, Circle, Square, Ellipse, Sampled>;
    Shape shape = Union{};

    bool empty() const;
    /// True when every leaf has an analytic depth formula (no Sampled parts).
    bool analytic() const;
};

// Validating factories; throw ValidationError on bad dimensions.
Obstacle make_circle(Point2 center, double radius);
Obstacle make_square(Point2 center, double side, double rotation = 0.0);
Obstacle make_ellipse(Point2 center, double a, double b, double rotation = 0.0);
Obstacle make_union(std::vector<Obstacle> members);
Obstacle make_sampled(std::shared_ptr<const DistanceField> field);

/// Unsigned distance from q to the circle |x - c| = r, i.e. ||q-c| - r|.
double circle_boundary_distance(Point2 q, Point2 center, double radius);

/// Depth of q inside the obstacle: zero outside and on the boundary,
/// distance to the boundary inside. Unions take the deepest member.
double penetration(Point2 q, const Obstacle& obs);

/// Strict interior test consistent with penetration > 0.
bool strictly_inside(Point2 q, const Obstacle& obs);

struct DepthEval {
    double value = 0.0;
    Point2 grad;  ///< spatial gradient of `value` on its smooth branch
};

/// Penetration together with its spatial gradient (zero outside; the argmax
/// member's gradient inside unions; central differences on sampled fields).
DepthEval penetration_with_gradient(Point2 q, const Obstacle& obs);

/// Unsigned boundary distance, nonzero outside as well (the unclamped
/// alternative). Unions take the nearest member boundary.
double boundary_distance(Point2 q, const Obstacle& obs);
DepthEval boundary_distance_with_gradient(Point2 q, const Obstacle& obs);

/// Hash identifying the active distance branch at q (inside flags, union
/// argmax, square face, ellipse case). Used to reject finite-difference
/// stencils that straddle a kink.
std::uint64_t branch_signature(Point2 q, const Obstacle& obs);

/// Conservative bounding box (degenerate box at the origin when empty).
Aabb bounding_box(const Obstacle& obs);

}  // namespace armplan
