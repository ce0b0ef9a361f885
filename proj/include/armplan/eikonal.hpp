#pragma once

#include <cstdint>
#include <vector>

#include "armplan/geom.hpp"

namespace armplan {

struct Obstacle;

/// Node-centered uniform grid.
struct Grid2D {
    /** Position of node (0,0). */
    Point2 origin;
    /** Node spacing h > 0, equal in both directions. */
    double spacing = 0.0;
    /** Node counts, each >= 2. */
    int nx = 0;
    int ny = 0;

    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    Point2 node(int i, int j) const {
        return {origin.x + i * spacing, origin.y + j * spacing};
    }
};

/// Obstacle rasterized onto a grid: interior mask plus the frozen boundary
/// band with its Dirichlet values.
struct RasterizedObstacle {
    Grid2D grid;
    std::vector<std::uint8_t> inside;
    std::vector<int> frozen;
    std::vector<double> frozen_values;
};

/// Depth field solving |grad d| = 1 inside the mask with d given on the
/// frozen band. Never-reached interior nodes keep +infinity.
struct DistanceField {
    Grid2D grid;
    std::vector<double> values;
    std::vector<std::uint8_t> inside;
    /** Node indices in the order they were finalized (non-decreasing value). */
    std::vector<int> acceptance_order;
};

/// Mask the grid by penetration > 0 at node centers and build the frozen
/// band: interior nodes with an exterior 4-neighbor, initialized with the
/// analytic boundary depth when available, else h/2.
/// Throws GridTooCoarse when a nonempty obstacle covers no node.
RasterizedObstacle rasterize(const Obstacle& obs, const Grid2D& grid);

/// First-order upwind fast marching over the rasterized mask.
DistanceField fast_march(const RasterizedObstacle& r);

/// Bilinear interpolation; exterior nodes contribute zero, and queries
/// outside the grid return zero.
double sample(const DistanceField& f, Point2 q);

/// Convenience: grid the obstacle bounding box (margin >= 3h) and solve.
DistanceField solve_depth_field(const Obstacle& obs, double h);

}  // namespace armplan
