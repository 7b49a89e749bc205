#pragma once

#include <vector>

#include "infconv/geometry.hpp"

namespace infconv {

// Geometric target/constraint sets: interval boxes, convex CCW polygons
// (2D), balls, and finite point lists (the nonconvex targets).
class SetSpec {
  public:
    enum class Kind { IntervalBox, PolygonV, Ball, FinitePoints };

    static SetSpec interval_box(Vec2 lo, Vec2 hi, int dim);
    static SetSpec polygon(std::vector<Vec2> ccw_vertices);  // 2D, strictly convex
    static SetSpec ball(Vec2 center, double radius, int dim);
    static SetSpec finite_points(std::vector<Vec2> pts, int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_convex() const { return kind_ != Kind::FinitePoints || pts_.size() == 1; }

    Vec2 box_lo() const { return lo_; }
    Vec2 box_hi() const { return hi_; }
    const std::vector<Vec2>& vertices() const { return pts_; }
    const std::vector<Vec2>& points() const { return pts_; }
    Vec2 center() const { return center_; }
    double radius() const { return radius_; }

    bool contains(Vec2 p, double tol = 0.0) const { return distance(p) <= tol; }
    double distance(Vec2 p) const;

  private:
    Kind kind_ = Kind::IntervalBox;
    int dim_ = 1;
    Vec2 lo_{0, 0}, hi_{0, 0};
    std::vector<Vec2> pts_;
    Vec2 center_{0, 0};
    double radius_ = 0;
};

}  // namespace infconv
