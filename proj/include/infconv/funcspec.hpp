#pragma once

#include <memory>
#include <string>
#include <vector>

#include "infconv/gauge.hpp"
#include "infconv/grid.hpp"
#include "infconv/setspec.hpp"

namespace infconv {

// Closed-form analytic functions with exact evaluation and (for the convex
// variants) exact subdifferentials. The only source of +inf is Indicator.
class FuncSpec {
  public:
    enum class Kind { NormP, ScaledSquaredNorm, Indicator, GaugeOf, MaxAffine, Sum, Shift };
    // p = 0 encodes the max norm.
    static constexpr int kPInf = 0;

    struct AffinePiece {
        Vec2 slope;
        double intercept;
    };

    static FuncSpec norm_p(int p, int dim);
    static FuncSpec scaled_squared_norm(double alpha, int dim);
    static FuncSpec indicator(SetSpec set);
    static FuncSpec gauge_of(GaugeSet F);
    static FuncSpec max_affine(std::vector<AffinePiece> pieces, int dim);
    static FuncSpec sum(std::vector<FuncSpec> terms);
    static FuncSpec shift(FuncSpec inner, Vec2 offset);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    int p() const { return p_; }
    double alpha() const { return alpha_; }
    const SetSpec& set() const { return *set_; }
    const GaugeSet& gauge() const { return *gauge_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    const std::vector<FuncSpec>& terms() const { return terms_; }
    const FuncSpec& inner() const { return terms_.front(); }
    Vec2 offset() const { return offset_; }

    ExtReal eval(Vec2 x) const;
    bool in_domain(Vec2 x) const { return eval(x).is_finite(); }
    // True when the function is convex (everything except multi-point
    // Indicator(FinitePoints) targets).
    bool is_convex() const;

    std::string describe() const;

  private:
    Kind kind_ = Kind::NormP;
    int dim_ = 1;
    int p_ = 2;
    double alpha_ = 1.0;
    std::shared_ptr<const SetSpec> set_;
    std::shared_ptr<const GaugeSet> gauge_;
    std::vector<AffinePiece> pieces_;
    std::vector<FuncSpec> terms_;  // Sum terms, or the Shift inner
    Vec2 offset_{0, 0};
};

// Exact analytic value of the spec at a point (dimension checked).
ExtReal eval_spec(const FuncSpec& f, Vec2 x);

// Pointwise-exact sampling onto a grid. Top-level finite-point indicator
// targets snap to the nearest grid point when within h/2, so aligned targets
// land exactly; a spec that is +inf on the whole grid is an error.
GridFn sample(const FuncSpec& f, const Grid& grid);

// Calmness certificate at a point relative to D = dom f.
struct CalmnessReport {
    Vec2 point;
    double ell = 0;          // witnessed constant
    double radius = 0;       // sampling radius ("global" when covering dom f)
    std::string relative_to = "dom f";
    int samples_used = 0;
};

// Smallest ell (up to sampling) with |f(x)-f(xbar)| <= ell*||x-xbar|| over
// deterministically sampled x in dom f within the radius.
CalmnessReport calmness_probe(const FuncSpec& f, Vec2 xbar, double radius, int samples);

}  // namespace infconv
