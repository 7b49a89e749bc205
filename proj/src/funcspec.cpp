#include "infconv/funcspec.hpp"

#include <cmath>
#include <sstream>

#include "infconv/errors.hpp"

namespace infconv {

FuncSpec FuncSpec::norm_p(int p, int dim) {
    if (p != 1 && p != 2 && p != kPInf) throw ValueError("FuncSpec: p must be 1, 2 or inf");
    FuncSpec f;
    f.kind_ = Kind::NormP;
    f.dim_ = dim;
    f.p_ = p;
    return f;
}

FuncSpec FuncSpec::scaled_squared_norm(double alpha, int dim) {
    if (!(alpha > 0)) throw ValueError("FuncSpec: alpha must be > 0");
    FuncSpec f;
    f.kind_ = Kind::ScaledSquaredNorm;
    f.dim_ = dim;
    f.alpha_ = alpha;
    return f;
}

FuncSpec FuncSpec::indicator(SetSpec set) {
    FuncSpec f;
    f.kind_ = Kind::Indicator;
    f.dim_ = set.dim();
    f.set_ = std::make_shared<SetSpec>(std::move(set));
    return f;
}

FuncSpec FuncSpec::gauge_of(GaugeSet F) {
    FuncSpec f;
    f.kind_ = Kind::GaugeOf;
    f.dim_ = F.dim();
    f.gauge_ = std::make_shared<GaugeSet>(std::move(F));
    return f;
}

FuncSpec FuncSpec::max_affine(std::vector<AffinePiece> pieces, int dim) {
    if (pieces.empty()) throw ValueError("FuncSpec: max_affine needs at least one piece");
    FuncSpec f;
    f.kind_ = Kind::MaxAffine;
    f.dim_ = dim;
    if (dim == 1)
        for (auto& p : pieces) p.slope[1] = 0;
    f.pieces_ = std::move(pieces);
    return f;
}

FuncSpec FuncSpec::sum(std::vector<FuncSpec> terms) {
    if (terms.empty()) throw ValueError("FuncSpec: sum needs at least one term");
    FuncSpec f;
    f.kind_ = Kind::Sum;
    f.dim_ = terms.front().dim();
    for (const auto& t : terms)
        if (t.dim() != f.dim_) throw ShapeError("FuncSpec: sum terms disagree on dimension");
    f.terms_ = std::move(terms);
    return f;
}

FuncSpec FuncSpec::shift(FuncSpec inner, Vec2 offset) {
    FuncSpec f;
    f.kind_ = Kind::Shift;
    f.dim_ = inner.dim();
    if (f.dim_ == 1) offset[1] = 0;
    f.offset_ = offset;
    f.terms_.push_back(std::move(inner));
    return f;
}

ExtReal FuncSpec::eval(Vec2 x) const {
    switch (kind_) {
        case Kind::NormP:
            if (p_ == 1) return norm1(x);
            if (p_ == 2) return norm2(x);
            return norm_inf(x);
        case Kind::ScaledSquaredNorm:
            return alpha_ * norm2sq(x);
        case Kind::Indicator:
            return set_->contains(x, 1e-12) ? ExtReal(0.0) : ExtReal::infinity();
        case Kind::GaugeOf:
            return gauge_eval(*gauge_, x);
        case Kind::MaxAffine: {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& p : pieces_) best = std::max(best, dot(p.slope, x) + p.intercept);
            return best;
        }
        case Kind::Sum: {
            ExtReal s(0.0);
            for (const auto& t : terms_) s += t.eval(x);
            return s;
        }
        case Kind::Shift:
            return terms_.front().eval(x - offset_);
    }
    return ExtReal(0.0);
}

bool FuncSpec::is_convex() const {
    switch (kind_) {
        case Kind::Indicator:
            return set_->is_convex();
        case Kind::Sum:
        case Kind::Shift: {
            for (const auto& t : terms_)
                if (!t.is_convex()) return false;
            return true;
        }
        default:
            return true;
    }
}

std::string FuncSpec::describe() const {
    std::ostringstream ss;
    switch (kind_) {
        case Kind::NormP:
            ss << "norm_" << (p_ == kPInf ? std::string("inf") : std::to_string(p_));
            break;
        case Kind::ScaledSquaredNorm: ss << alpha_ << "*||.||^2"; break;
        case Kind::Indicator: ss << "indicator"; break;
        case Kind::GaugeOf: ss << "gauge"; break;
        case Kind::MaxAffine: ss << "max_affine[" << pieces_.size() << "]"; break;
        case Kind::Sum: ss << "sum[" << terms_.size() << "]"; break;
        case Kind::Shift: ss << "shift(" << terms_.front().describe() << ")"; break;
    }
    return ss.str();
}

ExtReal eval_spec(const FuncSpec& f, Vec2 x) { return f.eval(x); }

GridFn sample(const FuncSpec& f, const Grid& grid) {
    if (f.dim() != grid.dim()) throw ShapeError("sample: spec/grid dimension mismatch");
    std::vector<ExtReal> vals(grid.size(), ExtReal::infinity());

    if (f.kind() == FuncSpec::Kind::Indicator &&
        f.set().kind() == SetSpec::Kind::FinitePoints) {
        for (auto p : f.set().points()) {
            double d = 0;
            Idx k = grid.nearest(p, &d);
            if (d > grid.hmax() / 2)
                throw ValueError("sample: finite-point target misses the grid by more than h/2");
            vals[grid.flat(k)] = 0.0;
        }
        return GridFn(grid, std::move(vals));
    }

    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f.eval(grid.point(grid.unflat(i)));
    return GridFn(grid, std::move(vals));  // throws if the domain is empty
}

namespace {

// Kronecker low-discrepancy sequence; fixed phase so probes are reproducible.
double kron1(int k) {
    double v = 0.5 + k * 0.6180339887498949;
    return v - std::floor(v);
}
Vec2 kron2(int k) {
    double a = 0.5 + k * 0.7548776662466927;
    double b = 0.5 + k * 0.5698402909980532;
    return {a - std::floor(a), b - std::floor(b)};
}

}  // namespace

CalmnessReport calmness_probe(const FuncSpec& f, Vec2 xbar, double radius, int samples) {
    if (!(radius > 0)) throw ValueError("calmness_probe: radius must be > 0");
    ExtReal fx = f.eval(xbar);
    if (fx.is_inf()) throw PreconditionError("calmness_probe: point outside dom f");

    CalmnessReport rep;
    rep.point = xbar;
    rep.radius = radius;

    double ell = 0;
    int used = 0;
    auto consider = [&](Vec2 x) {
        Vec2 d = x - xbar;
        double dist = norm2(d);
        if (dist <= 1e-15 || dist > radius) return;
        ExtReal v = f.eval(x);
        if (v.is_inf()) return;  // outside D = dom f
        ell = std::max(ell, std::abs(v.value() - fx.value()) / dist);
        ++used;
    };

    if (f.dim() == 1) {
        consider(xbar + vec(radius));
        consider(xbar - vec(radius));
        for (int k = 1; k <= samples; ++k)
            consider(xbar + vec((2 * kron1(k) - 1) * radius));
    } else {
        for (int a = 0; a < 2; ++a)
            for (int s = -1; s <= 1; s += 2) {
                Vec2 x = xbar;
                x[a] += s * radius;
                consider(x);
            }
        for (int k = 1; k <= samples; ++k) {
            Vec2 u = kron2(k);
            consider(xbar + vec((2 * u[0] - 1) * radius, (2 * u[1] - 1) * radius));
        }
    }

    if (used == 0)
        throw InsufficientDataError("calmness_probe: no domain point sampled within radius");
    rep.ell = ell;
    rep.samples_used = used;
    return rep;
}

}  // namespace infconv
