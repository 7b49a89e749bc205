#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "infconv/funcspec.hpp"
#include "infconv/grid.hpp"

namespace infconv {

// One infimal-convolution instance: f on a grid against a real-valued
// kernel phi (gauge, scaled squared norm, or plain norm).
struct ConvCase {
    FuncSpec f;
    FuncSpec phi;
    Grid grid;
    double tol_argmin_base = 1e-9;

    ConvCase(FuncSpec f_, FuncSpec phi_, Grid grid_);

    // Tie tolerance scaled by the magnitude of the minimum value.
    double tol_argmin(double min_value) const {
        return tol_argmin_base * (1.0 + std::abs(min_value));
    }

    GridFn sample_f() const { return sample(f, grid); }
};

// Argmin set of w -> f(w) + phi(w - x); ties within tolerance all kept.
struct ArgminSet {
    Idx x;
    std::vector<Idx> minimizers;
    double min_value = 0;
    double tol = 0;
};

struct WellPosednessReport {
    Idx xbar;
    bool singleton = false;
    Idx wbar;
    int sequences_tested = 0;
    double max_terminal_distance = 0;
    // per-step max distance over all sequences (tail should shrink)
    std::vector<double> step_max_distance;
    std::optional<double> ell, m;
    bool prop_bound_ok = true;  // ||w_k - xbar|| <= eps_k/(m-ell) when constants given
};

// Brute-force discrete envelope: at each grid x, the min over all grid w of
// f(w) + phi(w - x). The parallel kernel and the serial reference perform
// identical arithmetic, so their outputs match exactly.
GridFn inf_conv_brute(const ConvCase& c, std::uint64_t budget = std::uint64_t(4e9));
GridFn inf_conv_brute_serial(const ConvCase& c, std::uint64_t budget = std::uint64_t(4e9));

// Fast quadratic path: separable lower envelope of parabolas per axis,
// +inf sites skipped, intersections in closed form. O(N) per axis pass.
GridFn moreau_fast(const GridFn& f, double alpha);
GridFn moreau_fast_serial(const GridFn& f, double alpha);

// Minimal time function to a target under dynamics F, computed exactly as
// the discrete envelope of the target indicator with the gauge kernel.
GridFn min_time(const SetSpec& target, const GaugeSet& F, const Grid& grid);
// Distance function: minimal time with the unit-ball dynamics.
GridFn distance_fn(const SetSpec& target, const Grid& grid);

// All grid minimizers at x within the tie tolerance. Pass the precomputed
// envelope to avoid recomputation; it is only used for consistency checks.
ArgminSet projection_set(const ConvCase& c, Idx x);

// Grid points where the envelope coincides with f (within tie tolerance).
std::vector<Idx> s0_set(const ConvCase& c, const GridFn* envelope = nullptr);

// Builds seeded minimizing sequences by sampling sublevel shells with value
// gap 1/k and reports terminal convergence plus the coercivity bound.
WellPosednessReport wellposed_probe(const ConvCase& c, Idx xbar, int trials,
                                    std::optional<double> ell = {},
                                    std::optional<double> m = {},
                                    std::uint64_t seed = 0);

}  // namespace infconv
