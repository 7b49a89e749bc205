#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infconv/geometry.hpp"

namespace infconv {

// A closed convex subdifferential / normal-cone set: an interval in 1D; a
// polygon (possibly degenerate to a point or segment), ball, or ray-cone in
// 2D; or empty. Bounded variants compare under exact Hausdorff distance;
// cones are compared on their intersection with the unit ball.
class VecSet {
  public:
    enum class Kind { Empty, Interval, Polygon, Cone, Ball };
    // Canonical cone shapes after reducing the generator list.
    enum class ConeShape { Zero, Ray, Wedge, Line, Whole };

    static VecSet empty(int dim);
    static VecSet interval(double lo, double hi);        // 1D
    static VecSet singleton(Vec2 p, int dim);
    static VecSet segment(Vec2 a, Vec2 b);               // 2D
    static VecSet polygon(std::vector<Vec2> ccw_vertices);  // 2D, hulled
    static VecSet ball(Vec2 center, double radius);      // 2D
    static VecSet cone(int dim, const std::vector<Vec2>& generators);
    static VecSet whole_space(int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_bounded() const;
    bool is_singleton(double tol = 1e-12) const;

    // Interval access (1D).
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    // Polygon access (2D): CCW, strictly convex, 1..k vertices.
    const std::vector<Vec2>& vertices() const { return verts_; }
    // Ball access.
    Vec2 center() const { return center_; }
    double radius() const { return radius_; }
    // Cone access: canonical generators (unit), plus shape tag.
    const std::vector<Vec2>& rays() const { return rays_; }
    ConeShape cone_shape() const { return cone_shape_; }

    // Exact Euclidean distance from a point to the set (+inf if empty).
    double distance(Vec2 p) const;
    bool contains(Vec2 p, double tol = 0.0) const { return distance(p) <= tol; }

    // Finite witness points: interval endpoints, polygon vertices, sampled
    // ball boundary, truncated-cone corners. Enough for convex membership
    // and inequality spot checks.
    std::vector<Vec2> witness_points(int ball_samples = 64) const;
    Vec2 centroid() const;

    VecSet negated() const;

    std::string describe() const;

  private:
    Kind kind_ = Kind::Empty;
    int dim_ = 1;
    double lo_ = 0, hi_ = 0;
    std::vector<Vec2> verts_;
    Vec2 center_{0, 0};
    double radius_ = 0;
    std::vector<Vec2> rays_;
    ConeShape cone_shape_ = ConeShape::Zero;
};

// Exact Hausdorff distance. Unbounded sets (cones) are first intersected
// with the closed unit ball. Two empty sets are at distance 0; an empty and
// a nonempty set are at +inf.
double hausdorff(const VecSet& a, const VecSet& b);

// Intersection / Minkowski sum on the representable combinations; throws
// UnsupportedError for combinations that leave the VecSet family (e.g. a
// nondegenerate ball clipped by a wedge).
VecSet intersect(const VecSet& a, const VecSet& b);
VecSet minkowski_sum(const VecSet& a, const VecSet& b);

// Convex hull of 2D points: CCW, strictly convex (collinear dropped).
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

}  // namespace infconv
