#pragma once

#include <optional>
#include <vector>

#include "infconv/envelope.hpp"
#include "infconv/funcspec.hpp"
#include "infconv/grid.hpp"
#include "infconv/setspec.hpp"
#include "infconv/vecset.hpp"

namespace infconv {

// Exact convex subdifferential of a closed-form spec at a point. Returns the
// empty set when x is outside dom f; throws UnsupportedError for nonconvex
// variants (multi-point finite targets).
VecSet convex_subdiff(const FuncSpec& f, Vec2 x);

// Exact normal cone. Interior points give {0}; facet/vertex points give ray
// or wedge cones; points of finite sets give the whole space; x outside the
// set (beyond 1e-12) gives the empty set.
VecSet normal_cone(const SetSpec& omega, Vec2 x);

// Grid evidence that v is an eps-subgradient of g at xbar: the defining
// inequality is evaluated over shrinking neighborhoods with an explicit
// discretization slack. A pass is one-sided evidence, not a proof.
struct Certificate {
    Vec2 point{0, 0};
    Vec2 candidate{0, 0};
    double epsilon = 0;
    double eta_slack = 0;                // internal slack 10h(1+||v||)
    std::vector<double> radii;           // schedule {8h, 4h, 2h, h}
    std::vector<double> worst_violation; // min of the slacked inequality per radius
    bool pass = false;
};
Certificate frechet_certificate(const GridFn& g, Idx xbar, Vec2 v, double eps);

// Two-point difference-quotient probe for strict differentiability with
// candidate derivative v: worst |g(x)-g(y)-<v,x-y>|/||x-y|| over exhaustive
// pairs within shrinking radii. Pass needs the worst quotient to both fall
// below the tolerance at radius h and to decay from the widest radius.
struct DiffProbe {
    Vec2 point{0, 0};
    Vec2 candidate{0, 0};
    std::vector<double> radii;
    std::vector<double> worst;  // worst quotient per radius (nonincreasing)
    int pair_count = 0;
    double tolerance = 0;
    bool pass = false;
};
DiffProbe strict_diff_probe(const GridFn& g, Idx xbar, Vec2 v);

// Constructive variational principle on the finite grid: from an eta-
// approximate minimizer returns a point satisfying all three conclusions
// exactly in grid arithmetic. Descent always takes the largest improvement.
Idx ekeland_point(const GridFn& g, Idx wtilde, double eta_tilde, double lambda);

// Subgradient transfer searches. Starting from a certified envelope
// subgradient v at xbar, construct an approximate minimizer w-tilde, run the
// variational descent on the auxiliary function, and certify the transferred
// subgradient at the resulting w-bar.
struct TransferResult {
    Idx wtilde{};
    Idx wbar{};
    Certificate cert;
    bool subadditive_bound_ok = true;  // displayed inequality when phi subadditive
};
TransferResult transfer_to_phi(const ConvCase& c, Idx xbar, Vec2 v, double eps, double eta,
                               const GridFn* envelope = nullptr);
TransferResult transfer_to_f(const ConvCase& c, Idx xbar, Vec2 v, double eps, double eta,
                             const GridFn* envelope = nullptr);

// Gradient of the quadratic envelope at points with a unique projection:
// 2*alpha*(xbar - wbar). Throws AmbiguityError when the projection is a tie.
Vec2 moreau_grad(const GridFn& f, double alpha, Idx xbar);
Vec2 moreau_grad(const FuncSpec& f, double alpha, const Grid& grid, Idx xbar);

}  // namespace infconv
