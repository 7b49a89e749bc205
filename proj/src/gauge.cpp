#include "infconv/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "infconv/errors.hpp"

namespace infconv {

// --- SetSpec -----------------------------------------------------------

SetSpec SetSpec::interval_box(Vec2 lo, Vec2 hi, int dim) {
    if (dim != 1 && dim != 2) throw ShapeError("SetSpec: dim must be 1 or 2");
    for (int a = 0; a < dim; ++a)
        if (!(lo[a] <= hi[a])) throw ValueError("SetSpec: box lo > hi");
    SetSpec s;
    s.kind_ = Kind::IntervalBox;
    s.dim_ = dim;
    s.lo_ = lo;
    s.hi_ = hi;
    if (dim == 1) s.lo_[1] = s.hi_[1] = 0;
    return s;
}

SetSpec SetSpec::polygon(std::vector<Vec2> ccw_vertices) {
    if (ccw_vertices.size() < 3) throw ValueError("SetSpec: polygon needs >= 3 vertices");
    const auto& v = ccw_vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Vec2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
        if (cross(b - a, c - b) <= 0)
            throw ValueError("SetSpec: polygon vertices must be strictly convex CCW");
    }
    SetSpec s;
    s.kind_ = Kind::PolygonV;
    s.dim_ = 2;
    s.pts_ = std::move(ccw_vertices);
    return s;
}

SetSpec SetSpec::ball(Vec2 center, double radius, int dim) {
    if (!(radius > 0)) throw ValueError("SetSpec: ball radius must be > 0");
    SetSpec s;
    s.kind_ = Kind::Ball;
    s.dim_ = dim;
    s.center_ = center;
    if (dim == 1) s.center_[1] = 0;
    s.radius_ = radius;
    return s;
}

SetSpec SetSpec::finite_points(std::vector<Vec2> pts, int dim) {
    if (pts.empty()) throw ValueError("SetSpec: finite point set must be nonempty");
    SetSpec s;
    s.kind_ = Kind::FinitePoints;
    s.dim_ = dim;
    if (dim == 1)
        for (auto& p : pts) p[1] = 0;
    s.pts_ = std::move(pts);
    return s;
}

double SetSpec::distance(Vec2 p) const {
    switch (kind_) {
        case Kind::IntervalBox: {
            double d2 = 0;
            for (int a = 0; a < dim_; ++a) {
                double g = std::max({0.0, lo_[a] - p[a], p[a] - hi_[a]});
                d2 += g * g;
            }
            return std::sqrt(d2);
        }
        case Kind::Ball:
            return std::max(0.0, norm2(p - center_) - radius_);
        case Kind::PolygonV: {
            bool inside = true;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                Vec2 a = pts_[i], b = pts_[(i + 1) % pts_.size()];
                if (cross(b - a, p - a) < 0) inside = false;
                best = std::min(best, point_segment_distance(p, a, b));
            }
            return inside ? 0.0 : best;
        }
        case Kind::FinitePoints: {
            double best = std::numeric_limits<double>::infinity();
            for (auto q : pts_) best = std::min(best, norm2(p - q));
            return best;
        }
    }
    return 0;
}

// --- GaugeSet ----------------------------------------------------------

GaugeSet::GaugeSet(const SetSpec& shape) : shape_(shape) {
    switch (shape.kind()) {
        case SetSpec::Kind::IntervalBox: {
            Vec2 lo = shape.box_lo(), hi = shape.box_hi();
            for (int a = 0; a < shape.dim(); ++a)
                if (!(lo[a] < 0 && 0 < hi[a]))
                    throw ValueError("GaugeSet: box must contain 0 in its interior");
            if (shape.dim() == 1) {
                norm_of_set_ = std::max(-lo[0], hi[0]);
                inradius_ = std::min(-lo[0], hi[0]);
                facet_n_ = {vec(1.0), vec(-1.0)};
                facet_b_ = {hi[0], -lo[0]};
            } else {
                // treat as a polygon through its corners
                std::vector<Vec2> corners{vec(hi[0], hi[1]), vec(lo[0], hi[1]),
                                          vec(lo[0], lo[1]), vec(hi[0], lo[1])};
                for (auto c : corners) norm_of_set_ = std::max(norm_of_set_, norm2(c));
                facet_n_ = {vec(1.0, 0.0), vec(0.0, 1.0), vec(-1.0, 0.0), vec(0.0, -1.0)};
                facet_b_ = {hi[0], hi[1], -lo[0], -lo[1]};
                inradius_ = std::min({hi[0], hi[1], -lo[0], -lo[1]});
            }
            break;
        }
        case SetSpec::Kind::PolygonV: {
            const auto& v = shape.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
                Vec2 a = v[i], b = v[(i + 1) % v.size()];
                Vec2 n = outward_normal(b - a);
                double bb = dot(n, a);
                if (!(bb > 0))
                    throw ValueError("GaugeSet: polygon must contain 0 in its interior");
                facet_n_.push_back(n);
                facet_b_.push_back(bb);
            }
            for (auto p : v) norm_of_set_ = std::max(norm_of_set_, norm2(p));
            inradius_ = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < facet_n_.size(); ++i)
                inradius_ = std::min(inradius_, facet_b_[i] / norm2(facet_n_[i]));
            break;
        }
        case SetSpec::Kind::Ball: {
            if (!(norm2(shape.center()) < shape.radius()))
                throw ValueError("GaugeSet: ball must contain 0 in its interior");
            norm_of_set_ = norm2(shape.center()) + shape.radius();
            inradius_ = shape.radius() - norm2(shape.center());
            break;
        }
        case SetSpec::Kind::FinitePoints:
            throw ValueError("GaugeSet: finite point sets are not valid dynamics");
    }
    m_ = 1.0 / norm_of_set_;
    calm_ = 1.0 / inradius_;
    // For facet shapes the exact calmness constant is max ||n_i||/b_i, which
    // coincides with 1/inradius.
}

double gauge_eval(const GaugeSet& F, Vec2 x) {
    const SetSpec& s = F.shape_;
    if (s.kind() == SetSpec::Kind::Ball) {
        // smallest t >= 0 with ||x - t c|| <= t r
        Vec2 c = s.center();
        double r = s.radius();
        double A = r * r - norm2sq(c);
        double xc = dot(x, c);
        double t = (-xc + std::sqrt(xc * xc + A * norm2sq(x))) / A;
        return std::max(0.0, t);
    }
    double best = 0;
    for (std::size_t i = 0; i < F.facet_n_.size(); ++i)
        best = std::max(best, dot(F.facet_n_[i], x) / F.facet_b_[i]);
    return best;
}

std::pair<double, double> coercivity(const GaugeSet& F) {
    return {F.norm_of_set(), F.coercivity_m()};
}

VecSet gauge_subdiff_at_zero(const GaugeSet& F) {
    const SetSpec& s = F.shape_;
    if (F.dim() == 1) {
        // polar of [a, b] with a < 0 < b is [1/a, 1/b]
        double a = s.kind() == SetSpec::Kind::Ball ? s.center()[0] - s.radius() : s.box_lo()[0];
        double b = s.kind() == SetSpec::Kind::Ball ? s.center()[0] + s.radius() : s.box_hi()[0];
        return VecSet::interval(1.0 / a, 1.0 / b);
    }
    if (s.kind() == SetSpec::Kind::Ball) {
        if (norm2(s.center()) > 1e-12)
            throw UnsupportedError(
                "gauge_subdiff_at_zero: polar of an off-center ball is not a VecSet shape");
        return VecSet::ball(vec(0.0, 0.0), 1.0 / s.radius());
    }
    // Facet shapes: the polar's vertices are n_i / b_i.
    std::vector<Vec2> verts;
    for (std::size_t i = 0; i < F.facet_n_.size(); ++i) {
        double b = F.facet_b_[i];
        verts.push_back({F.facet_n_[i][0] / b, F.facet_n_[i][1] / b});
    }
    return VecSet::polygon(std::move(verts));
}

VecSet gauge_subdiff(const GaugeSet& F, Vec2 x) {
    const SetSpec& s = F.shape_;
    double nx = F.dim() == 1 ? std::abs(x[0]) : norm2(x);
    if (nx <= 1e-12) return gauge_subdiff_at_zero(F);
    if (F.dim() == 1) {
        double a = s.kind() == SetSpec::Kind::Ball ? s.center()[0] - s.radius() : s.box_lo()[0];
        double b = s.kind() == SetSpec::Kind::Ball ? s.center()[0] + s.radius() : s.box_hi()[0];
        return x[0] > 0 ? VecSet::interval(1.0 / b, 1.0 / b) : VecSet::interval(1.0 / a, 1.0 / a);
    }
    if (s.kind() == SetSpec::Kind::Ball) {
        // gradient by implicit differentiation of ||x - t c||^2 = (t r)^2
        Vec2 c = s.center();
        double r = s.radius();
        double t = gauge_eval(F, x);
        Vec2 w = x - t * c;
        double denom = dot(w, c) + t * r * r;
        return VecSet::singleton({w[0] / denom, w[1] / denom}, 2);
    }
    // active facets of the max formula
    double rho = gauge_eval(F, x);
    std::vector<Vec2> active;
    for (std::size_t i = 0; i < F.facet_n_.size(); ++i) {
        double vi = dot(F.facet_n_[i], x) / F.facet_b_[i];
        if (vi >= rho - 1e-12 * std::max(1.0, std::abs(rho))) {
            double b = F.facet_b_[i];
            active.push_back({F.facet_n_[i][0] / b, F.facet_n_[i][1] / b});
        }
    }
    if (active.size() == 1) return VecSet::singleton(active[0], 2);
    if (active.size() == 2) return VecSet::segment(active[0], active[1]);
    return VecSet::polygon(std::move(active));
}

}  // namespace infconv
