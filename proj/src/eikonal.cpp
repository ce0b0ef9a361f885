#include "armplan/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "armplan/errors.hpp"
#include "armplan/obstacle.hpp"

namespace armplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapEntry {
    double value;
    std::uint64_t seq;  // FIFO tie-break for equal keys
    int index;
};

struct HeapOrder {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.value != b.value) return a.value > b.value;
        return a.seq > b.seq;
    }
};

// Upwind two-axis solve of |grad d| = 1; falls back to the one-sided update
// when the discriminant is negative.
double local_update(double ax, double ay, double h) {
    if (ax == kInf) return ay + h;
    if (ay == kInf) return ax + h;
    const double disc = 2.0 * h * h - (ax - ay) * (ax - ay);
    if (disc < 0.0) return std::min(ax, ay) + h;
    return 0.5 * (ax + ay + std::sqrt(disc));
}

}  // namespace

RasterizedObstacle rasterize(const Obstacle& obs, const Grid2D& grid) {
    RasterizedObstacle out;
    out.grid = grid;
    out.inside.assign(static_cast<std::size_t>(grid.size()), 0);

    std::vector<double> depth(static_cast<std::size_t>(grid.size()), 0.0);
    int count = 0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double d = penetration(grid.node(i, j), obs);
            if (d > 0.0) {
                const int idx = grid.index(i, j);
                out.inside[idx] = 1;
                depth[idx] = d;
                ++count;
            }
        }
    }
    if (count == 0) {
        if (!obs.empty()) {
            throw GridTooCoarse("obstacle contains no grid node at this resolution");
        }
        return out;
    }

    const bool analytic = obs.analytic();
    const double h = grid.spacing;
    auto is_inside = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= grid.nx || j >= grid.ny) return false;
        return out.inside[grid.index(i, j)] != 0;
    };
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (!out.inside[grid.index(i, j)]) continue;
            if (is_inside(i - 1, j) && is_inside(i + 1, j) && is_inside(i, j - 1) &&
                is_inside(i, j + 1)) {
                continue;
            }
            out.frozen.push_back(grid.index(i, j));
            out.frozen_values.push_back(analytic ? depth[grid.index(i, j)] : 0.5 * h);
        }
    }
    return out;
}

DistanceField fast_march(const RasterizedObstacle& r) {
    const Grid2D& grid = r.grid;
    DistanceField field;
    field.grid = grid;
    field.inside = r.inside;
    field.values.assign(static_cast<std::size_t>(grid.size()), kInf);

    enum : std::uint8_t { far_state = 0, accepted_state = 1 };
    std::vector<std::uint8_t> state(static_cast<std::size_t>(grid.size()), far_state);
    std::vector<std::uint8_t> frozen(static_cast<std::size_t>(grid.size()), 0);

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
    std::uint64_t seq = 0;

    for (std::size_t k = 0; k < r.frozen.size(); ++k) {
        const int idx = r.frozen[k];
        field.values[idx] = r.frozen_values[k];
        frozen[idx] = 1;
        heap.push({r.frozen_values[k], seq++, idx});
    }

    const double h = grid.spacing;
    auto axis_min = [&](int i, int j, int di, int dj) {
        double best = kInf;
        for (int s = -1; s <= 1; s += 2) {
            const int ii = i + s * di, jj = j + s * dj;
            if (ii < 0 || jj < 0 || ii >= grid.nx || jj >= grid.ny) continue;
            const int idx = grid.index(ii, jj);
            if (state[idx] == accepted_state) best = std::min(best, field.values[idx]);
        }
        return best;
    };

    while (!heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        if (state[top.index] == accepted_state) continue;       // stale entry
        if (top.value != field.values[top.index]) continue;     // superseded
        state[top.index] = accepted_state;
        field.acceptance_order.push_back(top.index);

        const int i = top.index % grid.nx;
        const int j = top.index / grid.nx;
        const int ni[4] = {i - 1, i + 1, i, i};
        const int nj[4] = {j, j, j - 1, j + 1};
        for (int n = 0; n < 4; ++n) {
            if (ni[n] < 0 || nj[n] < 0 || ni[n] >= grid.nx || nj[n] >= grid.ny) continue;
            const int idx = grid.index(ni[n], nj[n]);
            if (!r.inside[idx] || state[idx] == accepted_state || frozen[idx]) continue;
            const double ax = axis_min(ni[n], nj[n], 1, 0);
            const double ay = axis_min(ni[n], nj[n], 0, 1);
            const double trial = local_update(ax, ay, h);
            if (trial < field.values[idx]) {
                field.values[idx] = trial;
                heap.push({trial, seq++, idx});
            }
        }
    }
    return field;
}

double sample(const DistanceField& f, Point2 q) {
    const Grid2D& g = f.grid;
    const double fx = (q.x - g.origin.x) / g.spacing;
    const double fy = (q.y - g.origin.y) / g.spacing;
    if (fx < 0.0 || fy < 0.0 || fx > g.nx - 1 || fy > g.ny - 1) return 0.0;
    const int i0 = std::min(static_cast<int>(std::floor(fx)), g.nx - 2);
    const int j0 = std::min(static_cast<int>(std::floor(fy)), g.ny - 2);
    const double tx = fx - i0;
    const double ty = fy - j0;
    auto value_at = [&](int i, int j) {
        const int idx = g.index(i, j);
        if (!f.inside[idx]) return 0.0;
        const double v = f.values[idx];
        return std::isfinite(v) ? v : 0.0;
    };
    const double v00 = value_at(i0, j0);
    const double v10 = value_at(i0 + 1, j0);
    const double v01 = value_at(i0, j0 + 1);
    const double v11 = value_at(i0 + 1, j0 + 1);
    return (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 + (1.0 - tx) * ty * v01 +
           tx * ty * v11;
}

DistanceField solve_depth_field(const Obstacle& obs, double h) {
    if (!(h > 0.0)) throw ValidationError("grid spacing must be positive");
    const Aabb box = bounding_box(obs);
    const double margin = 3.0 * h;
    Grid2D grid;
    grid.spacing = h;
    grid.origin = {box.lo.x - margin, box.lo.y - margin};
    grid.nx = std::max(2, static_cast<int>(std::ceil((box.hi.x - box.lo.x + 2.0 * margin) / h)) + 1);
    grid.ny = std::max(2, static_cast<int>(std::ceil((box.hi.y - box.lo.y + 2.0 * margin) / h)) + 1);
    return fast_march(rasterize(obs, grid));
}

}  // namespace armplan
