#include "infconv/vecset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
    while (a > kPi) a -= 2 * kPi;
    while (a <= -kPi) a += 2 * kPi;
    return a;
}

// CCW angular offset of b from a, in [0, 2*pi).
double ccw_span(double a, double b) {
    double d = b - a;
    while (d < 0) d += 2 * kPi;
    while (d >= 2 * kPi) d -= 2 * kPi;
    return d;
}

}  // namespace

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return norm2(a - b) <= kTol; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    double scale = 0;
    for (auto& p : pts) scale = std::max(scale, norm_inf(p));
    const double eps = 1e-12 * std::max(1.0, scale * scale);

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        // All points collinear: keep the two extremes.
        std::vector<Vec2> seg{pts.front(), pts.back()};
        if (norm2(seg[0] - seg[1]) <= kTol) seg.pop_back();
        return seg;
    }
    return hull;
}

VecSet VecSet::empty(int dim) {
    VecSet s;
    s.kind_ = Kind::Empty;
    s.dim_ = dim;
    return s;
}

VecSet VecSet::interval(double lo, double hi) {
    if (!(lo <= hi)) throw ValueError("VecSet::interval: lo > hi");
    VecSet s;
    s.kind_ = Kind::Interval;
    s.dim_ = 1;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
}

VecSet VecSet::singleton(Vec2 p, int dim) {
    if (dim == 1) return interval(p[0], p[0]);
    VecSet s;
    s.kind_ = Kind::Polygon;
    s.dim_ = 2;
    s.verts_ = {p};
    return s;
}

VecSet VecSet::segment(Vec2 a, Vec2 b) {
    if (norm2(a - b) <= kTol) return singleton(a, 2);
    VecSet s;
    s.kind_ = Kind::Polygon;
    s.dim_ = 2;
    s.verts_ = {a, b};
    return s;
}

VecSet VecSet::polygon(std::vector<Vec2> ccw_vertices) {
    if (ccw_vertices.empty()) throw ValueError("VecSet::polygon: no vertices");
    auto hull = convex_hull(std::move(ccw_vertices));
    if (hull.size() == 1) return singleton(hull[0], 2);
    if (hull.size() == 2) return segment(hull[0], hull[1]);
    VecSet s;
    s.kind_ = Kind::Polygon;
    s.dim_ = 2;
    s.verts_ = std::move(hull);
    return s;
}

VecSet VecSet::ball(Vec2 center, double radius) {
    if (radius < 0) throw ValueError("VecSet::ball: negative radius");
    if (radius <= kTol) return singleton(center, 2);
    VecSet s;
    s.kind_ = Kind::Ball;
    s.dim_ = 2;
    s.center_ = center;
    s.radius_ = radius;
    return s;
}

VecSet VecSet::whole_space(int dim) {
    if (dim == 1) return cone(1, {vec(1.0), vec(-1.0)});  // the 1D whole space is a line
    VecSet s;
    s.kind_ = Kind::Cone;
    s.dim_ = dim;
    s.cone_shape_ = ConeShape::Whole;
    return s;
}

VecSet VecSet::cone(int dim, const std::vector<Vec2>& generators) {
    VecSet s;
    s.kind_ = Kind::Cone;
    s.dim_ = dim;

    std::vector<Vec2> rays;
    for (auto g : generators) {
        double n = norm2(g);
        if (n <= kTol) continue;
        Vec2 u = normalized(g);
        bool dup = false;
        for (auto r : rays)
            if (norm2(r - u) <= 1e-9) dup = true;
        if (!dup) rays.push_back(u);
    }

    if (dim == 1) {
        bool pos = false, neg = false;
        for (auto r : rays) (r[0] > 0 ? pos : neg) = true;
        if (pos && neg) {
            s.cone_shape_ = ConeShape::Line;
            s.rays_ = {vec(1.0), vec(-1.0)};
        } else if (pos) {
            s.cone_shape_ = ConeShape::Ray;
            s.rays_ = {vec(1.0)};
        } else if (neg) {
            s.cone_shape_ = ConeShape::Ray;
            s.rays_ = {vec(-1.0)};
        } else {
            s.cone_shape_ = ConeShape::Zero;
        }
        return s;
    }

    if (rays.empty()) {
        s.cone_shape_ = ConeShape::Zero;
        return s;
    }
    if (rays.size() == 1) {
        s.cone_shape_ = ConeShape::Ray;
        s.rays_ = rays;
        return s;
    }

    // Sort generators by angle and inspect the largest cyclic gap.
    std::vector<double> ang;
    for (auto r : rays) ang.push_back(std::atan2(r[1], r[0]));
    std::sort(ang.begin(), ang.end());
    double max_gap = 0;
    std::size_t gap_at = 0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
        double next = (i + 1 < ang.size()) ? ang[i + 1] : ang[0] + 2 * kPi;
        double gap = next - ang[i];
        if (gap > max_gap) {
            max_gap = gap;
            gap_at = i;
        }
    }
    const double ang_tol = 1e-9;
    if (max_gap > kPi + ang_tol) {
        double a1 = ang[(gap_at + 1) % ang.size()];  // first ray after the gap
        double a2 = ang[gap_at];                     // last ray before the gap
        if (ccw_span(a1, a2) <= ang_tol) {
            s.cone_shape_ = ConeShape::Ray;
            s.rays_ = {vec(std::cos(a1), std::sin(a1))};
        } else {
            s.cone_shape_ = ConeShape::Wedge;
            s.rays_ = {vec(std::cos(a1), std::sin(a1)), vec(std::cos(a2), std::sin(a2))};
        }
    } else if (max_gap > kPi - ang_tol) {
        // Extremes are antipodal: a line if nothing lies strictly between.
        double a1 = ang[(gap_at + 1) % ang.size()];
        bool interior = false;
        for (double a : ang) {
            double d = ccw_span(a1, a);
            if (d > ang_tol && d < kPi - ang_tol) interior = true;
        }
        if (interior)
            throw UnsupportedError("VecSet::cone: half-plane cones are not representable");
        s.cone_shape_ = ConeShape::Line;
        s.rays_ = {vec(std::cos(a1), std::sin(a1)),
                   vec(-std::cos(a1), -std::sin(a1))};
    } else {
        s.cone_shape_ = ConeShape::Whole;
        s.rays_.clear();
    }
    return s;
}

bool VecSet::is_bounded() const {
    if (kind_ == Kind::Cone) return cone_shape_ == ConeShape::Zero;
    return true;
}

bool VecSet::is_singleton(double tol) const {
    switch (kind_) {
        case Kind::Empty: return false;
        case Kind::Interval: return hi_ - lo_ <= tol;
        case Kind::Polygon: {
            for (auto v : verts_)
                if (norm2(v - verts_[0]) > tol) return false;
            return true;
        }
        case Kind::Ball: return radius_ <= tol;
        case Kind::Cone: return cone_shape_ == ConeShape::Zero;
    }
    return false;
}

double VecSet::distance(Vec2 p) const {
    switch (kind_) {
        case Kind::Empty:
            return kInf;
        case Kind::Interval:
            return std::max({0.0, lo_ - p[0], p[0] - hi_});
        case Kind::Ball:
            return std::max(0.0, norm2(p - center_) - radius_);
        case Kind::Polygon: {
            if (verts_.size() == 1) return norm2(p - verts_[0]);
            if (verts_.size() == 2) return point_segment_distance(p, verts_[0], verts_[1]);
            bool inside = true;
            double best = kInf;
            for (std::size_t i = 0; i < verts_.size(); ++i) {
                Vec2 a = verts_[i], b = verts_[(i + 1) % verts_.size()];
                if (cross(b - a, p - a) < 0) inside = false;
                best = std::min(best, point_segment_distance(p, a, b));
            }
            return inside ? 0.0 : best;
        }
        case Kind::Cone: {
            if (dim_ == 1) {
                switch (cone_shape_) {
                    case ConeShape::Zero: return std::abs(p[0]);
                    case ConeShape::Ray:
                        return rays_[0][0] > 0 ? std::max(0.0, -p[0]) : std::max(0.0, p[0]);
                    default: return 0.0;  // line / whole
                }
            }
            switch (cone_shape_) {
                case ConeShape::Zero: return norm2(p);
                case ConeShape::Whole: return 0.0;
                case ConeShape::Ray: {
                    double t = std::max(0.0, dot(p, rays_[0]));
                    return norm2(p - t * rays_[0]);
                }
                case ConeShape::Line: {
                    double t = dot(p, rays_[0]);
                    return norm2(p - t * rays_[0]);
                }
                case ConeShape::Wedge: {
                    Vec2 r1 = rays_[0], r2 = rays_[1];
                    if (cross(r1, p) >= 0 && cross(p, r2) >= 0) return 0.0;
                    double t1 = std::max(0.0, dot(p, r1));
                    double t2 = std::max(0.0, dot(p, r2));
                    return std::min(norm2(p - t1 * r1), norm2(p - t2 * r2));
                }
            }
        }
    }
    return kInf;
}

std::vector<Vec2> VecSet::witness_points(int ball_samples) const {
    switch (kind_) {
        case Kind::Empty:
            return {};
        case Kind::Interval:
            return {vec(lo_), vec(hi_)};
        case Kind::Polygon:
            return verts_;
        case Kind::Ball: {
            std::vector<Vec2> pts;
            for (int k = 0; k < ball_samples; ++k) {
                double a = 2 * kPi * k / ball_samples;
                pts.push_back(center_ + radius_ * vec(std::cos(a), std::sin(a)));
            }
            return pts;
        }
        case Kind::Cone: {
            std::vector<Vec2> pts{vec(0.0, 0.0)};
            for (auto r : rays_) pts.push_back(r);
            if (cone_shape_ == ConeShape::Wedge) {
                double a1 = std::atan2(rays_[0][1], rays_[0][0]);
                double mid = a1 + ccw_span(a1, std::atan2(rays_[1][1], rays_[1][0])) / 2;
                pts.push_back(vec(std::cos(mid), std::sin(mid)));
            }
            if (cone_shape_ == ConeShape::Whole) {
                for (int k = 0; k < 4; ++k) {
                    double a = kPi * k / 2;
                    pts.push_back(vec(std::cos(a), std::sin(a)));
                }
            }
            return pts;
        }
    }
    return {};
}

Vec2 VecSet::centroid() const {
    switch (kind_) {
        case Kind::Empty: throw ValueError("VecSet::centroid: empty set");
        case Kind::Interval: return vec((lo_ + hi_) / 2);
        case Kind::Ball: return center_;
        case Kind::Cone: return vec(0.0, 0.0);
        case Kind::Polygon: {
            Vec2 c{0, 0};
            for (auto v : verts_) c = c + v;
            return {c[0] / verts_.size(), c[1] / verts_.size()};
        }
    }
    return {0, 0};
}

VecSet VecSet::negated() const {
    switch (kind_) {
        case Kind::Empty: return *this;
        case Kind::Interval: return interval(-hi_, -lo_);
        case Kind::Ball: return ball(-center_, radius_);
        case Kind::Polygon: {
            std::vector<Vec2> v;
            for (auto p : verts_) v.push_back(-p);
            if (v.size() <= 2) return v.size() == 1 ? singleton(v[0], 2) : segment(v[0], v[1]);
            return polygon(std::move(v));
        }
        case Kind::Cone: {
            std::vector<Vec2> r;
            for (auto p : rays_) r.push_back(-p);
            if (cone_shape_ == ConeShape::Whole) return whole_space(dim_);
            return cone(dim_, r);
        }
    }
    return *this;
}

std::string VecSet::describe() const {
    std::ostringstream ss;
    switch (kind_) {
        case Kind::Empty: ss << "empty"; break;
        case Kind::Interval: ss << "[" << lo_ << ", " << hi_ << "]"; break;
        case Kind::Ball: ss << "ball((" << center_[0] << "," << center_[1] << "), " << radius_ << ")"; break;
        case Kind::Polygon:
            ss << "poly{";
            for (auto v : verts_) ss << "(" << v[0] << "," << v[1] << ")";
            ss << "}";
            break;
        case Kind::Cone:
            ss << "cone{";
            for (auto r : rays_) ss << "(" << r[0] << "," << r[1] << ")";
            ss << (cone_shape_ == ConeShape::Whole ? " whole" : "") << "}";
            break;
    }
    return ss.str();
}

// ---------------------------------------------------------------------------
// Hausdorff distance via support functions. On each angular interval both
// support functions have the form A cos t + B sin t + C, so the sup of their
// absolute difference is attained at interval ends or at the phase angle of
// (A,B) — all computable in closed form.
// ---------------------------------------------------------------------------

namespace {

struct SupportView {
    std::vector<double> breaks;  // angles in (-pi, pi]
    // coefficients (A,B,C) of the active piece at angle t
    std::array<double, 3> (*coeffs_fn)(const void*, double);
    const void* ctx;
    std::array<double, 3> coeffs(double t) const { return coeffs_fn(ctx, t); }
};

struct PointsCtx {
    const std::vector<Vec2>* pts;
};

std::array<double, 3> points_coeffs(const void* ctx, double t) {
    const auto& pts = *static_cast<const PointsCtx*>(ctx)->pts;
    Vec2 u = vec(std::cos(t), std::sin(t));
    std::size_t best = 0;
    double bv = -kInf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double v = dot(pts[i], u);
        if (v > bv) {
            bv = v;
            best = i;
        }
    }
    return {pts[best][0], pts[best][1], 0.0};
}

struct BallCtx {
    Vec2 c;
    double r;
};

std::array<double, 3> ball_coeffs(const void* ctx, double) {
    const auto* b = static_cast<const BallCtx*>(ctx);
    return {b->c[0], b->c[1], b->r};
}

struct SectorCtx {
    double a1, span;  // arc from a1 CCW over span (<= pi)
};

std::array<double, 3> sector_coeffs(const void* ctx, double t) {
    const auto* s = static_cast<const SectorCtx*>(ctx);
    double off = ccw_span(s->a1, t);
    if (off <= s->span) return {0.0, 0.0, 1.0};  // arc point active
    double a2 = s->a1 + s->span;
    double d_after = ccw_span(a2, t);           // CCW distance past the end ray
    double d_before = ccw_span(t, s->a1);       // CCW distance to the start ray
    if (d_after <= d_before && d_after < kPi / 2)
        return {std::cos(a2), std::sin(a2), 0.0};
    if (d_before < d_after && d_before < kPi / 2)
        return {std::cos(s->a1), std::sin(s->a1), 0.0};
    return {0.0, 0.0, 0.0};  // apex active
}

void add_break(std::vector<double>& v, double a) { v.push_back(wrap_angle(a)); }

// Candidate breakpoints where the active piece may change.
std::vector<double> points_breaks(const std::vector<Vec2>& pts) {
    std::vector<double> b;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Vec2 d = pts[i] - pts[j];
            if (norm2(d) <= kTol) continue;
            double a = std::atan2(d[1], d[0]);
            add_break(b, a + kPi / 2);
            add_break(b, a - kPi / 2);
        }
    return b;
}

}  // namespace

double hausdorff(const VecSet& a, const VecSet& b) {
    if (a.dim() != b.dim()) throw ShapeError("hausdorff: dimension mismatch");
    if (a.is_empty() && b.is_empty()) return 0.0;
    if (a.is_empty() || b.is_empty()) return kInf;

    if (a.dim() == 1) {
        auto bounds1d = [](const VecSet& s) -> std::pair<double, double> {
            if (s.kind() == VecSet::Kind::Interval) return {s.lo(), s.hi()};
            // truncated 1D cone
            switch (s.cone_shape()) {
                case VecSet::ConeShape::Zero: return {0.0, 0.0};
                case VecSet::ConeShape::Ray:
                    return s.rays()[0][0] > 0 ? std::pair{0.0, 1.0} : std::pair{-1.0, 0.0};
                default: return {-1.0, 1.0};
            }
        };
        auto [alo, ahi] = bounds1d(a);
        auto [blo, bhi] = bounds1d(b);
        return std::max(std::abs(alo - blo), std::abs(ahi - bhi));
    }

    // 2D: normalize every shape into a support view. Cones truncate to the
    // unit ball first.
    struct Holder {
        std::vector<Vec2> pts;
        PointsCtx pctx;
        BallCtx bctx;
        SectorCtx sctx;
    };
    static thread_local Holder ha, hb;

    auto make_view = [](const VecSet& s, Holder& h) -> SupportView {
        SupportView v{};
        switch (s.kind()) {
            case VecSet::Kind::Polygon:
                h.pts = s.vertices();
                break;
            case VecSet::Kind::Ball:
                h.bctx = {s.center(), s.radius()};
                v.coeffs_fn = ball_coeffs;
                v.ctx = &h.bctx;
                return v;
            case VecSet::Kind::Cone:
                switch (s.cone_shape()) {
                    case VecSet::ConeShape::Zero:
                        h.pts = {vec(0.0, 0.0)};
                        break;
                    case VecSet::ConeShape::Ray:
                        h.pts = {vec(0.0, 0.0), s.rays()[0]};
                        break;
                    case VecSet::ConeShape::Line:
                        h.pts = {-1.0 * s.rays()[0], s.rays()[0]};
                        break;
                    case VecSet::ConeShape::Whole:
                        h.bctx = {vec(0.0, 0.0), 1.0};
                        v.coeffs_fn = ball_coeffs;
                        v.ctx = &h.bctx;
                        return v;
                    case VecSet::ConeShape::Wedge: {
                        double a1 = std::atan2(s.rays()[0][1], s.rays()[0][0]);
                        double a2 = std::atan2(s.rays()[1][1], s.rays()[1][0]);
                        h.sctx = {a1, ccw_span(a1, a2)};
                        v.coeffs_fn = sector_coeffs;
                        v.ctx = &h.sctx;
                        add_break(v.breaks, a1);
                        add_break(v.breaks, a1 + h.sctx.span);
                        add_break(v.breaks, a1 - kPi / 2);
                        add_break(v.breaks, a1 + h.sctx.span + kPi / 2);
                        return v;
                    }
                }
                break;
            default:
                throw UnsupportedError("hausdorff: unsupported 2D shape");
        }
        h.pctx = {&h.pts};
        v.coeffs_fn = points_coeffs;
        v.ctx = &h.pctx;
        v.breaks = points_breaks(h.pts);
        return v;
    };

    SupportView va = make_view(a, ha);
    SupportView vb = make_view(b, hb);

    std::vector<double> breaks;
    breaks.push_back(-kPi);
    breaks.push_back(kPi);
    for (double t : va.breaks) breaks.push_back(t);
    for (double t : vb.breaks) breaks.push_back(t);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                 breaks.end());

    double best = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double t0 = breaks[i], t1 = breaks[i + 1];
        double mid = (t0 + t1) / 2;
        auto ca = va.coeffs(mid);
        auto cb = vb.coeffs(mid);
        double A = ca[0] - cb[0], B = ca[1] - cb[1], C = ca[2] - cb[2];
        auto eval = [&](double t) { return std::abs(A * std::cos(t) + B * std::sin(t) + C); };
        best = std::max({best, eval(t0), eval(t1)});
        double phase = std::atan2(B, A);
        for (double t : {phase, phase + kPi, phase - kPi})
            if (t > t0 && t < t1) best = std::max(best, eval(t));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Intersection
// ---------------------------------------------------------------------------

namespace {

struct HalfPlane {
    Vec2 n;    // outward normal (not necessarily unit)
    double b;  // <n, x> <= b
};

std::vector<HalfPlane> polygon_halfplanes(const std::vector<Vec2>& v) {
    std::vector<HalfPlane> hs;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Vec2 a = v[i], c = v[(i + 1) % v.size()];
        Vec2 n = outward_normal(c - a);
        hs.push_back({n, dot(n, a)});
    }
    return hs;
}

// Sutherland-Hodgman step: clip a CCW convex polygon by <n,x> <= b.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, HalfPlane hp, double tol) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 cur = poly[i], nxt = poly[(i + 1) % n];
        double dc = dot(hp.n, cur) - hp.b;
        double dn = dot(hp.n, nxt) - hp.b;
        if (dc <= tol) out.push_back(cur);
        if ((dc < -tol && dn > tol) || (dc > tol && dn < -tol)) {
            double t = dc / (dc - dn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

VecSet classify_points(std::vector<Vec2> pts) {
    if (pts.empty()) return VecSet::empty(2);
    auto hull = convex_hull(std::move(pts));
    if (hull.size() == 1) return VecSet::singleton(hull[0], 2);
    if (hull.size() == 2) return VecSet::segment(hull[0], hull[1]);
    return VecSet::polygon(std::move(hull));
}

// Intersect the parameter range {t : t*d <= b} constraints with [tmin, tmax].
bool range_clip(double d, double b, double& tmin, double& tmax, double tol) {
    if (std::abs(d) <= tol) return b >= -tol;
    double t = b / d;
    if (d > 0)
        tmax = std::min(tmax, t);
    else
        tmin = std::max(tmin, t);
    return tmin <= tmax + tol;
}

VecSet line_like_intersect_polygon(Vec2 dir, bool full_line, const VecSet& poly, double tol) {
    if (poly.vertices().size() < 3)
        throw UnsupportedError("intersect: ray/line with degenerate polygon");
    double tmin = full_line ? -kInf : 0.0;
    double tmax = kInf;
    for (auto hp : polygon_halfplanes(poly.vertices()))
        if (!range_clip(dot(hp.n, dir), hp.b, tmin, tmax, tol)) return VecSet::empty(2);
    if (tmin > tmax) return VecSet::empty(2);
    if (!std::isfinite(tmin) || !std::isfinite(tmax))
        throw UnsupportedError("intersect: unbounded ray/line section");
    return VecSet::segment(tmin * dir, tmax * dir);
}

VecSet line_like_intersect_ball(Vec2 dir, bool full_line, Vec2 c, double r, double tol) {
    // || t*dir - c || <= r with unit dir
    double pd = dot(dir, c);
    double disc = pd * pd - (norm2sq(c) - r * r);
    if (disc < -tol) return VecSet::empty(2);
    disc = std::max(0.0, disc);
    double t0 = pd - std::sqrt(disc), t1 = pd + std::sqrt(disc);
    if (!full_line) {
        t0 = std::max(0.0, t0);
        if (t1 < -tol) return VecSet::empty(2);
        t1 = std::max(0.0, t1);
    }
    if (t0 > t1) return VecSet::empty(2);
    return VecSet::segment(t0 * dir, t1 * dir);
}

}  // namespace

VecSet intersect(const VecSet& a, const VecSet& b) {
    if (a.dim() != b.dim()) throw ShapeError("intersect: dimension mismatch");
    const int dim = a.dim();
    if (a.is_empty() || b.is_empty()) return VecSet::empty(dim);
    const double tol = 1e-12;

    // Singletons resolve by membership regardless of the partner's shape.
    if (a.is_singleton()) {
        Vec2 p = a.centroid();
        return b.contains(p, 1e-9) ? a : VecSet::empty(dim);
    }
    if (b.is_singleton()) {
        Vec2 p = b.centroid();
        return a.contains(p, 1e-9) ? b : VecSet::empty(dim);
    }

    if (dim == 1) {
        // Map to extended bounds, intersect, map back.
        auto bounds = [](const VecSet& s) -> std::pair<double, double> {
            if (s.kind() == VecSet::Kind::Interval) return {s.lo(), s.hi()};
            switch (s.cone_shape()) {
                case VecSet::ConeShape::Zero: return {0.0, 0.0};
                case VecSet::ConeShape::Ray:
                    return s.rays()[0][0] > 0 ? std::pair{0.0, kInf} : std::pair{-kInf, 0.0};
                default: return {-kInf, kInf};
            }
        };
        auto [alo, ahi] = bounds(a);
        auto [blo, bhi] = bounds(b);
        double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
        if (lo > hi) return VecSet::empty(1);
        if (std::isfinite(lo) && std::isfinite(hi)) return VecSet::interval(lo, hi);
        if (!std::isfinite(lo) && !std::isfinite(hi)) return VecSet::whole_space(1);
        if (!std::isfinite(hi) && lo == 0) return VecSet::cone(1, {vec(1.0)});
        if (!std::isfinite(lo) && hi == 0) return VecSet::cone(1, {vec(-1.0)});
        throw UnsupportedError("intersect: 1D result is a shifted ray");
    }

    using K = VecSet::Kind;
    // Normalize order: Cone first, then Polygon, then Ball.
    auto rank = [](K k) {
        switch (k) {
            case K::Cone: return 0;
            case K::Polygon: return 1;
            case K::Ball: return 2;
            default: return 3;
        }
    };
    const VecSet& x = rank(a.kind()) <= rank(b.kind()) ? a : b;
    const VecSet& y = rank(a.kind()) <= rank(b.kind()) ? b : a;

    if (x.kind() == K::Cone) {
        switch (x.cone_shape()) {
            case VecSet::ConeShape::Zero:
                return y.contains(vec(0.0, 0.0), 1e-9) ? VecSet::singleton(vec(0.0, 0.0), 2)
                                                       : VecSet::empty(2);
            case VecSet::ConeShape::Whole:
                return y;
            case VecSet::ConeShape::Ray:
                if (y.kind() == K::Polygon)
                    return line_like_intersect_polygon(x.rays()[0], false, y, tol);
                if (y.kind() == K::Ball)
                    return line_like_intersect_ball(x.rays()[0], false, y.center(), y.radius(), tol);
                break;
            case VecSet::ConeShape::Line:
                if (y.kind() == K::Polygon)
                    return line_like_intersect_polygon(x.rays()[0], true, y, tol);
                if (y.kind() == K::Ball)
                    return line_like_intersect_ball(x.rays()[0], true, y.center(), y.radius(), tol);
                break;
            case VecSet::ConeShape::Wedge: {
                if (y.kind() == K::Polygon) {
                    std::vector<Vec2> poly = y.vertices();
                    if (poly.size() == 2)
                        throw UnsupportedError("intersect: wedge with segment");
                    Vec2 r1 = x.rays()[0], r2 = x.rays()[1];
                    poly = clip_polygon(poly, {vec(r1[1], -r1[0]), 0.0}, tol);
                    if (poly.size() >= 2) poly = clip_polygon(poly, {vec(-r2[1], r2[0]), 0.0}, tol);
                    return classify_points(std::move(poly));
                }
                throw UnsupportedError("intersect: wedge with ball");
            }
        }
        throw UnsupportedError("intersect: cone combination");
    }

    if (x.kind() == K::Polygon && y.kind() == K::Polygon) {
        const auto& xs = x.vertices();
        const auto& ys = y.vertices();
        if (xs.size() >= 3) {
            std::vector<Vec2> poly = ys;
            for (auto hp : polygon_halfplanes(xs)) {
                if (poly.size() < 2) break;
                if (poly.size() == 2) {
                    // clip a segment
                    Vec2 p0 = poly[0], p1 = poly[1];
                    double d0 = dot(hp.n, p0) - hp.b, d1 = dot(hp.n, p1) - hp.b;
                    if (d0 > tol && d1 > tol) {
                        poly.clear();
                        break;
                    }
                    if (d0 > tol || d1 > tol) {
                        double t = d0 / (d0 - d1);
                        Vec2 m = p0 + t * (p1 - p0);
                        poly = d0 > tol ? std::vector<Vec2>{m, p1} : std::vector<Vec2>{p0, m};
                    }
                    continue;
                }
                poly = clip_polygon(poly, hp, tol);
            }
            return classify_points(std::move(poly));
        }
        if (ys.size() >= 3) return intersect(y, x);
        // segment-segment
        Vec2 p = xs[0], q = xs[1], r = ys[0], s = ys[1];
        Vec2 d1 = q - p, d2 = s - r;
        double denom = cross(d1, d2);
        if (std::abs(denom) > tol) {
            double t = cross(r - p, d2) / denom;
            double u = cross(r - p, d1) / denom;
            if (t >= -tol && t <= 1 + tol && u >= -tol && u <= 1 + tol)
                return VecSet::singleton(p + t * d1, 2);
            return VecSet::empty(2);
        }
        if (std::abs(cross(r - p, d1)) > 1e-9 * std::max(1.0, norm2(d1)))
            return VecSet::empty(2);
        double L = norm2(d1);
        Vec2 u = normalized(d1);
        double t0 = 0, t1 = L;
        double s0 = dot(r - p, u), s1 = dot(s - p, u);
        if (s0 > s1) std::swap(s0, s1);
        double lo = std::max(t0, s0), hi = std::min(t1, s1);
        if (lo > hi + tol) return VecSet::empty(2);
        return VecSet::segment(p + lo * u, p + hi * u);
    }

    if (x.kind() == K::Polygon && y.kind() == K::Ball) {
        const auto& v = x.vertices();
        if (v.size() == 2) {
            // segment against ball: quadratic in the segment parameter
            Vec2 u = normalized(v[1] - v[0]);
            double L = norm2(v[1] - v[0]);
            Vec2 c = y.center() - v[0];
            double pd = dot(u, c);
            double disc = pd * pd - (norm2sq(c) - y.radius() * y.radius());
            if (disc < -tol) return VecSet::empty(2);
            disc = std::max(0.0, disc);
            double t0 = std::max(0.0, pd - std::sqrt(disc));
            double t1 = std::min(L, pd + std::sqrt(disc));
            if (t0 > t1 + tol) return VecSet::empty(2);
            return VecSet::segment(v[0] + t0 * u, v[0] + std::max(t0, t1) * u);
        }
        bool poly_in_ball = true;
        for (auto p : v)
            if (norm2(p - y.center()) > y.radius() + 1e-9) poly_in_ball = false;
        if (poly_in_ball) return x;
        bool ball_in_poly = v.size() >= 3;
        if (v.size() >= 3)
            for (auto hp : polygon_halfplanes(v)) {
                double nn = norm2(hp.n);
                if (dot(hp.n, y.center()) + y.radius() * nn > hp.b + 1e-9 * nn)
                    ball_in_poly = false;
            }
        if (ball_in_poly) return y;
        throw UnsupportedError("intersect: polygon/ball overlap is not representable");
    }

    if (x.kind() == K::Ball && y.kind() == K::Ball) {
        double d = norm2(x.center() - y.center());
        if (d + x.radius() <= y.radius() + 1e-12) return x;
        if (d + y.radius() <= x.radius() + 1e-12) return y;
        if (d > x.radius() + y.radius() + 1e-12) return VecSet::empty(2);
        if (std::abs(d - (x.radius() + y.radius())) <= 1e-12) {
            Vec2 u = normalized(y.center() - x.center());
            return VecSet::singleton(x.center() + x.radius() * u, 2);
        }
        throw UnsupportedError("intersect: ball/ball lens is not representable");
    }

    throw UnsupportedError("intersect: unsupported shape combination");
}

// ---------------------------------------------------------------------------
// Minkowski sum
// ---------------------------------------------------------------------------

VecSet minkowski_sum(const VecSet& a, const VecSet& b) {
    if (a.dim() != b.dim()) throw ShapeError("minkowski_sum: dimension mismatch");
    const int dim = a.dim();
    if (a.is_empty() || b.is_empty()) return VecSet::empty(dim);
    using K = VecSet::Kind;

    if (dim == 1) {
        auto is_cone = [](const VecSet& s) { return s.kind() == K::Cone; };
        if (is_cone(a) || is_cone(b)) {
            const VecSet& c = is_cone(a) ? a : b;
            const VecSet& o = is_cone(a) ? b : a;
            if (c.cone_shape() == VecSet::ConeShape::Zero) return o;
            if (c.cone_shape() == VecSet::ConeShape::Line || c.cone_shape() == VecSet::ConeShape::Whole)
                return VecSet::whole_space(1);
            if (o.kind() == K::Cone) {
                std::vector<Vec2> r = c.rays();
                for (auto q : o.rays()) r.push_back(q);
                return VecSet::cone(1, r);
            }
            if (o.is_singleton() && std::abs(o.centroid()[0]) <= 1e-12) return c;
            throw UnsupportedError("minkowski_sum: shifted 1D ray");
        }
        return VecSet::interval(a.lo() + b.lo(), a.hi() + b.hi());
    }

    if (a.kind() == K::Cone || b.kind() == K::Cone) {
        const VecSet& c = a.kind() == K::Cone ? a : b;
        const VecSet& o = a.kind() == K::Cone ? b : a;
        if (c.cone_shape() == VecSet::ConeShape::Zero) return o;
        if (c.cone_shape() == VecSet::ConeShape::Whole) return VecSet::whole_space(2);
        if (o.is_singleton() && norm2(o.centroid()) <= 1e-12) return c;
        throw UnsupportedError("minkowski_sum: cone with offset set");
    }

    if (a.kind() == K::Ball || b.kind() == K::Ball) {
        const VecSet& u = a.kind() == K::Ball ? a : b;
        const VecSet& o = a.kind() == K::Ball ? b : a;
        if (o.kind() == K::Ball)
            return VecSet::ball(u.center() + o.center(), u.radius() + o.radius());
        if (o.is_singleton()) return VecSet::ball(u.center() + o.centroid(), u.radius());
        throw UnsupportedError("minkowski_sum: ball with non-singleton polygon");
    }

    // polygon + polygon (vertex sums, re-hulled)
    std::vector<Vec2> sums;
    for (auto p : a.vertices())
        for (auto q : b.vertices()) sums.push_back(p + q);
    auto hull = convex_hull(std::move(sums));
    if (hull.size() == 1) return VecSet::singleton(hull[0], 2);
    if (hull.size() == 2) return VecSet::segment(hull[0], hull[1]);
    return VecSet::polygon(std::move(hull));
}

}  // namespace infconv
