#include "armplan/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "armplan/eikonal.hpp"
#include "armplan/ellipse.hpp"
#include "armplan/errors.hpp"

namespace armplan {

namespace {

Point2 to_local(Point2 q, Point2 center, double rotation) {
    return rotate(q - center, -rotation);
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

// ---------------------------------------------------------------------------
// Per-shape penetration (clamped depth) with local-frame gradients
// ---------------------------------------------------------------------------

DepthEval circle_depth(Point2 q, const Circle& c) {
    const double r = distance(q, c.center);
    if (r >= c.radius) return {};
    DepthEval out;
    out.value = c.radius - r;
    if (r > 1e-300) out.grad = (-1.0 / r) * (q - c.center);
    return out;  // gradient left zero at the center kink
}

DepthEval square_depth(Point2 q, const Square& s) {
    const Point2 p = to_local(q, s.center, s.rotation);
    const double m = 0.5 * s.side;
    const double ax = std::abs(p.x), ay = std::abs(p.y);
    if (std::max(ax, ay) >= m) return {};
    DepthEval out;
    out.value = m - std::max(ax, ay);
    Point2 g = (ax >= ay) ? Point2{p.x >= 0.0 ? -1.0 : 1.0, 0.0}
                          : Point2{0.0, p.y >= 0.0 ? -1.0 : 1.0};
    out.grad = rotate(g, s.rotation);
    return out;
}

DepthEval ellipse_depth(Point2 q, const Ellipse& e) {
    const Point2 p = to_local(q, e.center, e.rotation);
    const double lvl = p.x * p.x / (e.a * e.a) + p.y * p.y / (e.b * e.b);
    if (lvl >= 1.0) return {};
    const EllipseProjection proj = ellipse_distance_exact(p, e.a, e.b);
    DepthEval out;
    out.value = proj.distance;
    const Point2 away = p - proj.foot_point;
    const double len = norm(away);
    if (len > 1e-300) out.grad = rotate((1.0 / len) * away, e.rotation);
    return out;
}

DepthEval sampled_depth(Point2 q, const Sampled& s) {
    DepthEval out;
    if (!s.field) return out;
    const double h = s.field->grid.spacing;
    out.value = sample(*s.field, q);
    out.grad.x = (sample(*s.field, {q.x + h, q.y}) - sample(*s.field, {q.x - h, q.y})) / (2.0 * h);
    out.grad.y = (sample(*s.field, {q.x, q.y + h}) - sample(*s.field, {q.x, q.y - h})) / (2.0 * h);
    if (out.value <= 0.0) return {};
    return out;
}

DepthEval depth_eval(Point2 q, const Obstacle& obs);

DepthEval union_depth(Point2 q, const Union& u) {
    DepthEval best;
    for (const Obstacle& m : u.members) {
        DepthEval e = depth_eval(q, m);
        if (e.value > best.value) best = e;
    }
    return best;
}

DepthEval depth_eval(Point2 q, const Obstacle& obs) {
    return std::visit(
        [&](const auto& shape) -> DepthEval {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Union>) return union_depth(q, shape);
            if constexpr (std::is_same_v<T, Circle>) return circle_depth(q, shape);
            if constexpr (std::is_same_v<T, Square>) return square_depth(q, shape);
            if constexpr (std::is_same_v<T, Ellipse>) return ellipse_depth(q, shape);
            if constexpr (std::is_same_v<T, Sampled>) return sampled_depth(q, shape);
        },
        obs.shape);
}

// ---------------------------------------------------------------------------
// Raw (unclamped) boundary distances
// ---------------------------------------------------------------------------

DepthEval circle_boundary(Point2 q, const Circle& c) {
    const double r = distance(q, c.center);
    DepthEval out;
    out.value = std::abs(r - c.radius);
    if (r > 1e-300 && out.value > 0.0) {
        const double sgn = (r >= c.radius) ? 1.0 : -1.0;
        out.grad = (sgn / r) * (q - c.center);
    }
    return out;
}

DepthEval square_boundary(Point2 q, const Square& s) {
    const Point2 p = to_local(q, s.center, s.rotation);
    const double m = 0.5 * s.side;
    const double qx = std::abs(p.x) - m, qy = std::abs(p.y) - m;
    DepthEval out;
    Point2 g;
    if (qx <= 0.0 && qy <= 0.0) {
        // inside: nearest face
        out.value = -std::max(qx, qy);
        g = (qx >= qy) ? Point2{p.x >= 0.0 ? -1.0 : 1.0, 0.0}
                       : Point2{0.0, p.y >= 0.0 ? -1.0 : 1.0};
        out.grad = rotate(g, s.rotation);
        return out;
    }
    const double ox = std::max(qx, 0.0), oy = std::max(qy, 0.0);
    out.value = std::sqrt(ox * ox + oy * oy);
    g = {ox > 0.0 ? (p.x >= 0.0 ? ox : -ox) : 0.0, oy > 0.0 ? (p.y >= 0.0 ? oy : -oy) : 0.0};
    out.grad = rotate((1.0 / out.value) * g, s.rotation);
    return out;
}

DepthEval ellipse_boundary(Point2 q, const Ellipse& e) {
    const Point2 p = to_local(q, e.center, e.rotation);
    const EllipseProjection proj = ellipse_distance_exact(p, e.a, e.b);
    DepthEval out;
    out.value = proj.distance;
    const Point2 away = p - proj.foot_point;
    const double len = norm(away);
    if (len > 1e-300) out.grad = rotate((1.0 / len) * away, e.rotation);
    return out;
}

DepthEval boundary_eval(Point2 q, const Obstacle& obs);

DepthEval union_boundary(Point2 q, const Union& u) {
    DepthEval best;
    best.value = std::numeric_limits<double>::infinity();
    for (const Obstacle& m : u.members) {
        DepthEval e = boundary_eval(q, m);
        if (e.value < best.value) best = e;
    }
    if (u.members.empty()) return {};
    return best;
}

DepthEval boundary_eval(Point2 q, const Obstacle& obs) {
    return std::visit(
        [&](const auto& shape) -> DepthEval {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Union>) return union_boundary(q, shape);
            if constexpr (std::is_same_v<T, Circle>) return circle_boundary(q, shape);
            if constexpr (std::is_same_v<T, Square>) return square_boundary(q, shape);
            if constexpr (std::is_same_v<T, Ellipse>) return ellipse_boundary(q, shape);
            if constexpr (std::is_same_v<T, Sampled>) return sampled_depth(q, shape);
        },
        obs.shape);
}

// ---------------------------------------------------------------------------
// Branch signatures
// ---------------------------------------------------------------------------

std::uint64_t shape_signature(Point2 q, const Obstacle& obs) {
    return std::visit(
        [&](const auto& shape) -> std::uint64_t {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Union>) {
                std::uint64_t h = 11;
                int argmax = -1;
                double best = 0.0;
                for (std::size_t i = 0; i < shape.members.size(); ++i) {
                    const double d = penetration(q, shape.members[i]);
                    if (d > best) {
                        best = d;
                        argmax = static_cast<int>(i);
                    }
                    h = hash_mix(h, shape_signature(q, shape.members[i]));
                }
                return hash_mix(h, static_cast<std::uint64_t>(argmax + 1));
            }
            if constexpr (std::is_same_v<T, Circle>) {
                const double r = distance(q, shape.center);
                std::uint64_t h = 23;
                h = hash_mix(h, r < shape.radius ? 1 : 0);
                h = hash_mix(h, r < 1e-9 ? 1 : 0);
                return h;
            }
            if constexpr (std::is_same_v<T, Square>) {
                const Point2 p = to_local(q, shape.center, shape.rotation);
                const double m = 0.5 * shape.side;
                std::uint64_t h = 37;
                h = hash_mix(h, std::max(std::abs(p.x), std::abs(p.y)) < m ? 1 : 0);
                const int face = (std::abs(p.x) >= std::abs(p.y)) ? (p.x >= 0.0 ? 0 : 1)
                                                                  : (p.y >= 0.0 ? 2 : 3);
                h = hash_mix(h, static_cast<std::uint64_t>(face));
                h = hash_mix(h, std::max(std::abs(p.x), std::abs(p.y)) - m > 0.0 ? 1 : 0);
                return h;
            }
            if constexpr (std::is_same_v<T, Ellipse>) {
                const Point2 p = to_local(q, shape.center, shape.rotation);
                const double a2 = shape.a * shape.a, b2 = shape.b * shape.b;
                std::uint64_t h = 53;
                h = hash_mix(h, p.x * p.x / a2 + p.y * p.y / b2 < 1.0 ? 1 : 0);
                h = hash_mix(h, p.y > 0.0 ? 1 : (p.y < 0.0 ? 2 : 0));
                h = hash_mix(h, (a2 > b2 && a2 - shape.a * std::abs(p.x) >= b2) ? 1 : 0);
                return h;
            }
            if constexpr (std::is_same_v<T, Sampled>) {
                // Piecewise-bilinear: identify the containing cell.
                std::uint64_t h = 71;
                if (!shape.field) return h;
                const Grid2D& g = shape.field->grid;
                const int i = static_cast<int>(std::floor((q.x - g.origin.x) / g.spacing));
                const int j = static_cast<int>(std::floor((q.y - g.origin.y) / g.spacing));
                h = hash_mix(h, static_cast<std::uint64_t>(i + 1000000));
                h = hash_mix(h, static_cast<std::uint64_t>(j + 1000000));
                return h;
            }
        },
        obs.shape);
}

}  // namespace

// ---------------------------------------------------------------------------
// Obstacle surface
// ---------------------------------------------------------------------------

bool Obstacle::empty() const {
    if (const Union* u = std::get_if<Union>(&shape)) {
        return std::all_of(u->members.begin(), u->members.end(),
                           [](const Obstacle& m) { return m.empty(); });
    }
    return false;
}

bool Obstacle::analytic() const {
    if (const Union* u = std::get_if<Union>(&shape)) {
        return std::all_of(u->members.begin(), u->members.end(),
                           [](const Obstacle& m) { return m.analytic(); });
    }
    return !std::holds_alternative<Sampled>(shape);
}

Obstacle make_circle(Point2 center, double radius) {
    if (!(radius > 0.0)) throw ValidationError("circle radius must be positive");
    return Obstacle{Circle{center, radius}};
}

Obstacle make_square(Point2 center, double side, double rotation) {
    if (!(side > 0.0)) throw ValidationError("square side must be positive");
    return Obstacle{Square{center, side, rotation}};
}

Obstacle make_ellipse(Point2 center, double a, double b, double rotation) {
    if (!(b > 0.0) || !(b <= a)) {
        throw ValidationError("ellipse semi-axes must satisfy 0 < b <= a");
    }
    return Obstacle{Ellipse{center, a, b, rotation}};
}

Obstacle make_union(std::vector<Obstacle> members) {
    return Obstacle{Union{std::move(members)}};
}

Obstacle make_sampled(std::shared_ptr<const DistanceField> field) {
    if (!field) throw ValidationError("sampled obstacle requires a field");
    return Obstacle{Sampled{std::move(field)}};
}

double circle_boundary_distance(Point2 q, Point2 center, double radius) {
    return std::abs(distance(q, center) - radius);
}

double penetration(Point2 q, const Obstacle& obs) { return depth_eval(q, obs).value; }

bool strictly_inside(Point2 q, const Obstacle& obs) {
    return std::visit(
        [&](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Union>) {
                return std::any_of(shape.members.begin(), shape.members.end(),
                                   [&](const Obstacle& m) { return strictly_inside(q, m); });
            }
            if constexpr (std::is_same_v<T, Circle>) {
                return distance(q, shape.center) < shape.radius;
            }
            if constexpr (std::is_same_v<T, Square>) {
                const Point2 p = to_local(q, shape.center, shape.rotation);
                return std::max(std::abs(p.x), std::abs(p.y)) < 0.5 * shape.side;
            }
            if constexpr (std::is_same_v<T, Ellipse>) {
                const Point2 p = to_local(q, shape.center, shape.rotation);
                return p.x * p.x / (shape.a * shape.a) + p.y * p.y / (shape.b * shape.b) < 1.0;
            }
            if constexpr (std::is_same_v<T, Sampled>) {
                return sampled_depth(q, shape).value > 0.0;
            }
        },
        obs.shape);
}

DepthEval penetration_with_gradient(Point2 q, const Obstacle& obs) { return depth_eval(q, obs); }

double boundary_distance(Point2 q, const Obstacle& obs) { return boundary_eval(q, obs).value; }

DepthEval boundary_distance_with_gradient(Point2 q, const Obstacle& obs) {
    return boundary_eval(q, obs);
}

std::uint64_t branch_signature(Point2 q, const Obstacle& obs) { return shape_signature(q, obs); }

Aabb bounding_box(const Obstacle& obs) {
    return std::visit(
        [&](const auto& shape) -> Aabb {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Union>) {
                if (shape.members.empty()) return {{0.0, 0.0}, {0.0, 0.0}};
                Aabb box = bounding_box(shape.members.front());
                for (std::size_t i = 1; i < shape.members.size(); ++i) {
                    box = merge(box, bounding_box(shape.members[i]));
                }
                return box;
            }
            if constexpr (std::is_same_v<T, Circle>) {
                const double r = shape.radius;
                return {shape.center - Point2{r, r}, shape.center + Point2{r, r}};
            }
            if constexpr (std::is_same_v<T, Square>) {
                const double r = 0.5 * shape.side * std::sqrt(2.0);
                return {shape.center - Point2{r, r}, shape.center + Point2{r, r}};
            }
            if constexpr (std::is_same_v<T, Ellipse>) {
                const double r = shape.a;
                return {shape.center - Point2{r, r}, shape.center + Point2{r, r}};
            }
            if constexpr (std::is_same_v<T, Sampled>) {
                if (!shape.field) return {{0.0, 0.0}, {0.0, 0.0}};
                const Grid2D& g = shape.field->grid;
                return {g.origin, g.node(g.nx - 1, g.ny - 1)};
            }
        },
        obs.shape);
}

}  // namespace armplan
