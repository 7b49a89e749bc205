#pragma once

#include "infconv/setspec.hpp"
#include "infconv/vecset.hpp"

namespace infconv {

// A dynamics set F: closed, bounded, convex, with 0 in its interior. Carries
// the derived constants ||F|| = sup{||f|| : f in F} and the coercivity
// constant m = 1/||F|| of the gauge rho_F.
class GaugeSet {
  public:
    // Validates shape (interval box / convex polygon / ball only) and the
    // zero-interior condition.
    explicit GaugeSet(const SetSpec& shape);

    const SetSpec& shape() const { return shape_; }
    int dim() const { return shape_.dim(); }
    double norm_of_set() const { return norm_of_set_; }
    double coercivity_m() const { return m_; }
    // Radius of the largest origin-centered ball inside F; bounds the gauge's
    // calmness constant at 0 by 1/inradius.
    double inradius() const { return inradius_; }
    // Smallest ell with rho_F(x) <= ell * ||x||, i.e. the calmness constant of
    // the gauge at 0 (exact per shape).
    double calm_at_zero() const { return calm_; }

    friend double gauge_eval(const GaugeSet& F, Vec2 x);
    friend VecSet gauge_subdiff_at_zero(const GaugeSet& F);
    friend VecSet gauge_subdiff(const GaugeSet& F, Vec2 x);

  private:
    SetSpec shape_;
    double norm_of_set_ = 0;
    double m_ = 0;
    double inradius_ = 0;
    double calm_ = 0;
    // facet form for polygon/box: rho(x) = max_i <n_i,x>/b_i
    std::vector<Vec2> facet_n_;
    std::vector<double> facet_b_;
};

// Minkowski function rho_F(x) = inf{t >= 0 : x in tF}; exact per shape.
double gauge_eval(const GaugeSet& F, Vec2 x);

// (||F||, m) with m = 1/||F||.
std::pair<double, double> coercivity(const GaugeSet& F);

// Exact convex subdifferential of rho_F at 0: the polar set of F.
VecSet gauge_subdiff_at_zero(const GaugeSet& F);

// Exact convex subdifferential of rho_F at any x (exposed face of the polar).
VecSet gauge_subdiff(const GaugeSet& F, Vec2 x);

}  // namespace infconv
