#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "infconv/extreal.hpp"
#include "infconv/geometry.hpp"

namespace infconv {

// Multi-index into a grid; j is 0 in one dimension.
struct Idx {
    int i = 0;
    int j = 0;
    friend bool operator==(Idx a, Idx b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(Idx a, Idx b) { return !(a == b); }
};

// Inclusive index box used to restrict operations to a sub-region.
struct IndexBox {
    Idx lo;
    Idx hi;
    bool contains(Idx k) const {
        return k.i >= lo.i && k.i <= hi.i && k.j >= lo.j && k.j <= hi.j;
    }
};

// Uniform box grid in dimension 1 or 2. Points are addressed by index and
// mapped to coordinates as lo + i*h; nothing ever compares coordinates for
// floating-point equality.
class Grid {
  public:
    static constexpr std::size_t kMaxPoints = std::size_t{1} << 24;

    static Grid make_1d(double lo, double hi, int n);
    static Grid make_2d(double lo0, double hi0, int n0, double lo1, double hi1, int n1);

    int dim() const { return dim_; }
    int n(int axis) const { return n_[axis]; }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    double h(int axis) const { return h_[axis]; }
    // Largest axis spacing; the natural length scale for tolerances.
    double hmax() const { return dim_ == 1 ? h_[0] : std::max(h_[0], h_[1]); }

    std::size_t size() const { return std::size_t(n_[0]) * std::size_t(n_[1]); }

    bool in_bounds(Idx k) const {
        return k.i >= 0 && k.i < n_[0] && k.j >= 0 && k.j < n_[1];
    }
    std::size_t flat(Idx k) const { return std::size_t(k.i) * n_[1] + k.j; }
    Idx unflat(std::size_t f) const {
        return Idx{int(f / n_[1]), int(f % n_[1])};
    }

    double coord(int axis, int i) const { return lo_[axis] + i * h_[axis]; }
    Vec2 point(Idx k) const {
        if (dim_ == 1) return vec(coord(0, k.i));
        return vec(coord(0, k.i), coord(1, k.j));
    }

    // Nearest grid index; reports the snap distance if asked.
    Idx nearest(Vec2 p, double* dist = nullptr) const;

    IndexBox full_box() const { return {{0, 0}, {n_[0] - 1, n_[1] - 1}}; }

    // Margin (in points) to the nearest grid edge.
    int edge_margin(Idx k) const;

    bool same_layout(const Grid& o) const;

    friend bool operator==(const Grid& a, const Grid& b) { return a.same_layout(b); }

  private:
    int dim_ = 1;
    double lo_[2] = {0, 0};
    double hi_[2] = {0, 0};
    int n_[2] = {2, 1};
    double h_[2] = {0, 0};
};

// An extended-real-valued function sampled on a grid. Immutable once built.
class GridFn {
  public:
    GridFn(Grid grid, std::vector<ExtReal> values);

    const Grid& grid() const { return grid_; }
    ExtReal eval(Idx k) const;
    ExtReal operator[](std::size_t f) const { return values_[f]; }
    const std::vector<ExtReal>& values() const { return values_; }

    // Values as plain doubles with +inf for the infinite tag (kernel view).
    std::vector<double> dense() const;

    std::size_t finite_count() const;

  private:
    Grid grid_;
    std::vector<ExtReal> values_;
};

// Largest |g(x)-g(w)|/||x-w|| over axis-adjacent finite-valued pairs in the
// region. Never negative; throws InsufficientDataError if the region holds
// fewer than two finite values.
double lipschitz_estimate(const GridFn& g, const IndexBox& region);
double lipschitz_estimate(const GridFn& g);

// Discrete lower-semicontinuity surrogate: flags points whose value exceeds
// the minimum over axis neighbors by more than slack_c * h.
struct LscViolation {
    Idx where;
    double margin;  // amount by which the inequality fails
};
struct LscReport {
    std::vector<LscViolation> violations;
    double slack = 0;
    bool pass() const { return violations.empty(); }
};
LscReport lsc_spot_check(const GridFn& g, double slack_c = 2.0);

// CSV serialization: one row per grid point, coordinates then value, +inf
// written as the literal token `inf`. Row order is flat index order.
void write_csv(std::ostream& os, const GridFn& g);
std::string to_csv(const GridFn& g);
// Reads back a CSV produced by write_csv onto the given grid layout.
GridFn read_csv(std::istream& is, const Grid& grid);

}  // namespace infconv
