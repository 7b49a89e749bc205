#include "infconv/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "infconv/errors.hpp"

namespace infconv {

static void check_axis(double lo, double hi, int n) {
    if (!(lo < hi)) throw ValueError("Grid: lo must be < hi");
    if (n < 2) throw ValueError("Grid: need at least 2 points per axis");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValueError("Grid: bounds must be finite");
}

Grid Grid::make_1d(double lo, double hi, int n) {
    check_axis(lo, hi, n);
    Grid g;
    g.dim_ = 1;
    g.lo_[0] = lo;
    g.hi_[0] = hi;
    g.n_[0] = n;
    g.n_[1] = 1;
    g.h_[0] = (hi - lo) / (n - 1);
    g.h_[1] = 0;
    if (g.size() > kMaxPoints) throw SizeError("Grid: point count exceeds cap");
    return g;
}

Grid Grid::make_2d(double lo0, double hi0, int n0, double lo1, double hi1, int n1) {
    check_axis(lo0, hi0, n0);
    check_axis(lo1, hi1, n1);
    Grid g;
    g.dim_ = 2;
    g.lo_[0] = lo0;
    g.hi_[0] = hi0;
    g.n_[0] = n0;
    g.lo_[1] = lo1;
    g.hi_[1] = hi1;
    g.n_[1] = n1;
    g.h_[0] = (hi0 - lo0) / (n0 - 1);
    g.h_[1] = (hi1 - lo1) / (n1 - 1);
    if (g.size() > kMaxPoints) throw SizeError("Grid: point count exceeds cap");
    return g;
}

Idx Grid::nearest(Vec2 p, double* dist) const {
    Idx k;
    k.i = std::clamp(int(std::lround((p[0] - lo_[0]) / h_[0])), 0, n_[0] - 1);
    if (dim_ == 2)
        k.j = std::clamp(int(std::lround((p[1] - lo_[1]) / h_[1])), 0, n_[1] - 1);
    if (dist) *dist = norm2(p - point(k));
    return k;
}

int Grid::edge_margin(Idx k) const {
    int m = std::min(k.i, n_[0] - 1 - k.i);
    if (dim_ == 2) m = std::min(m, std::min(k.j, n_[1] - 1 - k.j));
    return m;
}

bool Grid::same_layout(const Grid& o) const {
    if (dim_ != o.dim_) return false;
    for (int a = 0; a < dim_; ++a)
        if (lo_[a] != o.lo_[a] || hi_[a] != o.hi_[a] || n_[a] != o.n_[a]) return false;
    return true;
}

GridFn::GridFn(Grid grid, std::vector<ExtReal> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ShapeError("GridFn: value count does not match grid size");
    if (finite_count() == 0)
        throw ValueError("GridFn: effective domain is empty");
}

ExtReal GridFn::eval(Idx k) const {
    if (!grid_.in_bounds(k)) throw BoundsError("GridFn: index out of bounds");
    return values_[grid_.flat(k)];
}

std::vector<double> GridFn::dense() const {
    std::vector<double> d(values_.size());
    for (std::size_t f = 0; f < values_.size(); ++f) d[f] = values_[f].as_double();
    return d;
}

std::size_t GridFn::finite_count() const {
    std::size_t c = 0;
    for (const auto& v : values_)
        if (v.is_finite()) ++c;
    return c;
}

double lipschitz_estimate(const GridFn& g, const IndexBox& region) {
    const Grid& gr = g.grid();
    std::size_t finite = 0;
    for (int i = region.lo.i; i <= region.hi.i; ++i)
        for (int j = region.lo.j; j <= region.hi.j; ++j)
            if (g.eval({i, j}).is_finite()) ++finite;
    if (finite < 2)
        throw InsufficientDataError("lipschitz_estimate: fewer than 2 finite points in region");

    double best = 0;
    for (int i = region.lo.i; i <= region.hi.i; ++i) {
        for (int j = region.lo.j; j <= region.hi.j; ++j) {
            ExtReal v = g.eval({i, j});
            if (v.is_inf()) continue;
            if (i + 1 <= region.hi.i) {
                ExtReal w = g.eval({i + 1, j});
                if (w.is_finite())
                    best = std::max(best, std::abs(v.value() - w.value()) / gr.h(0));
            }
            if (gr.dim() == 2 && j + 1 <= region.hi.j) {
                ExtReal w = g.eval({i, j + 1});
                if (w.is_finite())
                    best = std::max(best, std::abs(v.value() - w.value()) / gr.h(1));
            }
        }
    }
    return best;
}

double lipschitz_estimate(const GridFn& g) {
    return lipschitz_estimate(g, g.grid().full_box());
}

LscReport lsc_spot_check(const GridFn& g, double slack_c) {
    const Grid& gr = g.grid();
    LscReport rep;
    rep.slack = slack_c * gr.hmax();
    for (int i = 0; i < gr.n(0); ++i) {
        for (int j = 0; j < gr.n(1); ++j) {
            ExtReal v = g.eval({i, j});
            if (v.is_inf()) continue;  // +inf never violates lower semicontinuity
            ExtReal nb = ExtReal::infinity();
            auto visit = [&](int ii, int jj) {
                Idx k{ii, jj};
                if (gr.in_bounds(k)) nb = min(nb, g.eval(k));
            };
            visit(i - 1, j);
            visit(i + 1, j);
            if (gr.dim() == 2) {
                visit(i, j - 1);
                visit(i, j + 1);
            }
            if (nb.is_inf()) continue;
            double gap = v.value() - (nb.value() + rep.slack);
            if (gap > 0) rep.violations.push_back({{i, j}, gap});
        }
    }
    return rep;
}

static void print_double(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void write_csv(std::ostream& os, const GridFn& g) {
    const Grid& gr = g.grid();
    for (std::size_t f = 0; f < gr.size(); ++f) {
        Idx k = gr.unflat(f);
        Vec2 p = gr.point(k);
        print_double(os, p[0]);
        if (gr.dim() == 2) {
            os << ',';
            print_double(os, p[1]);
        }
        os << ',';
        ExtReal v = g[f];
        if (v.is_inf())
            os << "inf";
        else
            print_double(os, v.value());
        os << '\n';
    }
}

std::string to_csv(const GridFn& g) {
    std::ostringstream ss;
    write_csv(ss, g);
    return ss.str();
}

GridFn read_csv(std::istream& is, const Grid& grid) {
    std::vector<ExtReal> vals;
    vals.reserve(grid.size());
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto pos = line.rfind(',');
        if (pos == std::string::npos) throw ParseError("GridFn csv: missing value column");
        std::string tok = line.substr(pos + 1);
        if (tok == "inf") {
            vals.push_back(ExtReal::infinity());
        } else {
            double v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || p != tok.data() + tok.size())
                throw ParseError("GridFn csv: bad value token '" + tok + "'");
            vals.push_back(ExtReal(v));
        }
    }
    if (vals.size() != grid.size()) throw ParseError("GridFn csv: row count does not match grid");
    return GridFn(grid, std::move(vals));
}

}  // namespace infconv
