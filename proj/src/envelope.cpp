#include "infconv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_phi(const FuncSpec& phi) {
    switch (phi.kind()) {
        case FuncSpec::Kind::GaugeOf:
        case FuncSpec::Kind::ScaledSquaredNorm:
        case FuncSpec::Kind::NormP:
            return;
        default:
            throw ValueError("ConvCase: phi must be a gauge, scaled squared norm, or norm");
    }
}

}  // namespace

ConvCase::ConvCase(FuncSpec f_, FuncSpec phi_, Grid grid_)
    : f(std::move(f_)), phi(std::move(phi_)), grid(grid_) {
    if (f.dim() != grid.dim() || phi.dim() != grid.dim())
        throw ShapeError("ConvCase: dimension mismatch");
    validate_phi(phi);
    // phi(0) finite and phi >= 0 hold by construction for all allowed kinds.
}

// ---------------------------------------------------------------------------
// Brute-force envelope
// ---------------------------------------------------------------------------

namespace {

template <class Phi>
std::vector<double> brute_kernel(const Grid& g, const std::vector<double>& fv, Phi phi,
                                 bool parallel) {
    const std::int64_t n = std::int64_t(g.size());
    std::vector<Vec2> pts(n);
    for (std::int64_t i = 0; i < n; ++i) pts[i] = g.point(g.unflat(std::size_t(i)));

    std::vector<double> env(n, kInf);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t xi = 0; xi < n; ++xi) {
        const Vec2 px = pts[xi];
        double best = kInf;
        for (std::int64_t wi = 0; wi < n; ++wi) {
            const double fw = fv[wi];
            if (fw == kInf) continue;
            const double v = fw + phi(pts[wi] - px);
            if (v < best) best = v;
        }
        env[xi] = best;
    }
    return env;
}

GridFn run_brute(const ConvCase& c, std::uint64_t budget, bool parallel) {
    const Grid& g = c.grid;
    const std::uint64_t cost = std::uint64_t(g.size()) * std::uint64_t(g.size());
    if (cost > budget) throw SizeError("inf_conv_brute: grid^2 exceeds budget");

    GridFn fs = c.sample_f();
    std::vector<double> fv = fs.dense();
    std::vector<double> env;

    switch (c.phi.kind()) {
        case FuncSpec::Kind::ScaledSquaredNorm: {
            const double a = c.phi.alpha();
            env = brute_kernel(g, fv, [a](Vec2 d) { return a * norm2sq(d); }, parallel);
            break;
        }
        case FuncSpec::Kind::NormP: {
            const int p = c.phi.p();
            if (p == 1)
                env = brute_kernel(g, fv, [](Vec2 d) { return norm1(d); }, parallel);
            else if (p == 2)
                env = brute_kernel(g, fv, [](Vec2 d) { return norm2(d); }, parallel);
            else
                env = brute_kernel(g, fv, [](Vec2 d) { return norm_inf(d); }, parallel);
            break;
        }
        case FuncSpec::Kind::GaugeOf: {
            const GaugeSet& F = c.phi.gauge();
            env = brute_kernel(g, fv, [&F](Vec2 d) { return gauge_eval(F, d); }, parallel);
            break;
        }
        default:
            throw ValueError("inf_conv_brute: unsupported phi");
    }

    std::vector<ExtReal> out(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) out[i] = ExtReal(env[i]);
    return GridFn(g, std::move(out));
}

}  // namespace

GridFn inf_conv_brute(const ConvCase& c, std::uint64_t budget) {
    return run_brute(c, budget, true);
}

GridFn inf_conv_brute_serial(const ConvCase& c, std::uint64_t budget) {
    return run_brute(c, budget, false);
}

// ---------------------------------------------------------------------------
// Fast quadratic path: lower envelope of parabolas, one pass per axis
// ---------------------------------------------------------------------------

namespace {

// One line: dst[i] = min_j src[j] + alpha*(coord[i]-coord[j])^2, +inf sites
// skipped. idx/bound are caller scratch of size n and n+1.
void parabola_envelope_line(const double* src, double* dst, const double* coord, int n,
                            double alpha, int* idx, double* bound) {
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (src[q] == kInf) continue;
        if (k < 0) {
            k = 0;
            idx[0] = q;
            bound[0] = -kInf;
            bound[1] = kInf;
            continue;
        }
        double s;
        for (;;) {
            const int p = idx[k];
            s = ((src[q] + alpha * coord[q] * coord[q]) -
                 (src[p] + alpha * coord[p] * coord[p])) /
                (2 * alpha * (coord[q] - coord[p]));
            if (s > bound[k]) break;
            if (--k < 0) break;
        }
        ++k;
        idx[k] = q;
        bound[k] = k == 0 ? -kInf : s;
        bound[k + 1] = kInf;
    }
    if (k < 0) {
        std::fill(dst, dst + n, kInf);
        return;
    }
    int j = 0;
    for (int i = 0; i < n; ++i) {
        while (bound[j + 1] < coord[i]) ++j;
        const double d = coord[i] - coord[idx[j]];
        dst[i] = src[idx[j]] + alpha * d * d;
    }
}

GridFn run_moreau(const GridFn& f, double alpha, bool parallel) {
    if (!(alpha > 0)) throw ValueError("moreau_fast: alpha must be > 0");
    const Grid& g = f.grid();
    std::vector<double> vals = f.dense();

    const int n0 = g.n(0);
    const int n1 = g.n(1);

    std::vector<double> coord0(n0), coord1(n1);
    for (int i = 0; i < n0; ++i) coord0[i] = g.coord(0, i);
    for (int j = 0; j < n1; ++j) coord1[j] = g.coord(1, j);

    if (g.dim() == 1) {
        std::vector<double> out(static_cast<std::size_t>(n0));
        std::vector<int> idx(static_cast<std::size_t>(n0));
        std::vector<double> bound(static_cast<std::size_t>(n0) + 1);
        parabola_envelope_line(vals.data(), out.data(), coord0.data(), n0, alpha, idx.data(),
                               bound.data());
        std::vector<ExtReal> er(out.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            er[i] = out[i] == kInf ? ExtReal::infinity() : ExtReal(out[i]);
        return GridFn(g, std::move(er));
    }

    // axis 1 (contiguous lines), then axis 0 (strided lines)
    std::vector<double> stage(vals.size());
#pragma omp parallel if (parallel)
    {
        std::vector<int> idx(static_cast<std::size_t>(std::max(n0, n1)));
        std::vector<double> bound(static_cast<std::size_t>(std::max(n0, n1)) + 1);
        std::vector<double> line(static_cast<std::size_t>(std::max(n0, n1)));
        std::vector<double> out(static_cast<std::size_t>(std::max(n0, n1)));

#pragma omp for schedule(static)
        for (int i = 0; i < n0; ++i)
            parabola_envelope_line(vals.data() + std::size_t(i) * n1,
                                   stage.data() + std::size_t(i) * n1, coord1.data(), n1, alpha,
                                   idx.data(), bound.data());

#pragma omp for schedule(static)
        for (int j = 0; j < n1; ++j) {
            for (int i = 0; i < n0; ++i) line[std::size_t(i)] = stage[std::size_t(i) * n1 + j];
            parabola_envelope_line(line.data(), out.data(), coord0.data(), n0, alpha, idx.data(),
                                   bound.data());
            for (int i = 0; i < n0; ++i) stage[std::size_t(i) * n1 + j] = out[std::size_t(i)];
        }
    }

    std::vector<ExtReal> er(stage.size());
    for (std::size_t i = 0; i < stage.size(); ++i)
        er[i] = stage[i] == kInf ? ExtReal::infinity() : ExtReal(stage[i]);
    return GridFn(g, std::move(er));
}

}  // namespace

GridFn moreau_fast(const GridFn& f, double alpha) { return run_moreau(f, alpha, true); }
GridFn moreau_fast_serial(const GridFn& f, double alpha) { return run_moreau(f, alpha, false); }

// ---------------------------------------------------------------------------
// Minimal time / distance / projections / S0
// ---------------------------------------------------------------------------

GridFn min_time(const SetSpec& target, const GaugeSet& F, const Grid& grid) {
    ConvCase c(FuncSpec::indicator(target), FuncSpec::gauge_of(F), grid);
    return inf_conv_brute(c);
}

GridFn distance_fn(const SetSpec& target, const Grid& grid) {
    GaugeSet unit_ball(SetSpec::ball(grid.dim() == 1 ? vec(0.0) : vec(0.0, 0.0), 1.0, grid.dim()));
    return min_time(target, unit_ball, grid);
}

namespace {

// Objective values q(w) = f(w) + phi(w - x) for a fixed base point.
std::vector<double> objective_row(const ConvCase& c, const GridFn& fs, Idx x) {
    const Grid& g = c.grid;
    const Vec2 px = g.point(x);
    std::vector<double> q(g.size(), kInf);
    for (std::size_t wi = 0; wi < g.size(); ++wi) {
        ExtReal fw = fs[wi];
        if (fw.is_inf()) continue;
        q[wi] = fw.value() + c.phi.eval(g.point(g.unflat(wi)) - px).value();
    }
    return q;
}

}  // namespace

ArgminSet projection_set(const ConvCase& c, Idx x) {
    const Grid& g = c.grid;
    if (!g.in_bounds(x)) throw BoundsError("projection_set: x outside grid");
    GridFn fs = c.sample_f();
    std::vector<double> q = objective_row(c, fs, x);
    double m = *std::min_element(q.begin(), q.end());

    ArgminSet out;
    out.x = x;
    out.min_value = m;
    out.tol = c.tol_argmin(m);
    for (std::size_t wi = 0; wi < q.size(); ++wi)
        if (q[wi] <= m + out.tol) out.minimizers.push_back(g.unflat(wi));
    return out;
}

std::vector<Idx> s0_set(const ConvCase& c, const GridFn* envelope) {
    const Grid& g = c.grid;
    GridFn env = envelope ? *envelope : inf_conv_brute(c);
    GridFn fs = c.sample_f();
    std::vector<Idx> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (fs[i].is_inf()) continue;
        double e = env[i].value();
        if (std::abs(e - fs[i].value()) <= c.tol_argmin(e)) out.push_back(g.unflat(i));
    }
    return out;
}

WellPosednessReport wellposed_probe(const ConvCase& c, Idx xbar, int trials,
                                    std::optional<double> ell, std::optional<double> m,
                                    std::uint64_t seed) {
    const Grid& g = c.grid;
    GridFn fs = c.sample_f();
    std::vector<double> q = objective_row(c, fs, xbar);
    const double env_val = *std::min_element(q.begin(), q.end());

    // precondition: xbar in S0
    ExtReal fx = fs.eval(xbar);
    if (fx.is_inf() || std::abs(env_val - fx.value()) > c.tol_argmin(env_val))
        throw PreconditionError("wellposed_probe: xbar is not in S0");

    ArgminSet proj = projection_set(c, xbar);
    WellPosednessReport rep;
    rep.xbar = xbar;
    rep.singleton = proj.minimizers.size() == 1;
    rep.wbar = proj.minimizers.front();
    rep.ell = ell;
    rep.m = m;

    const Vec2 pxbar = g.point(xbar);
    const Vec2 pwbar = g.point(rep.wbar);
    const int steps = 16;
    rep.step_max_distance.assign(steps, 0.0);

    // Sorted views of the sublevel shells.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] < kInf) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });

    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + t + 1);
        Idx terminal{};
        for (int k = 1; k <= steps; ++k) {
            const double cap = env_val + 1.0 / k;
            // shell = order[0..end) with q <= cap; nonempty since the argmin qualifies
            std::size_t end = std::size_t(
                std::upper_bound(order.begin(), order.end(), cap,
                                 [&](double v, std::size_t i) { return v < q[i]; }) -
                order.begin());
            std::size_t pick = order[rng() % end];
            Idx w = g.unflat(pick);
            const double dist = norm2(g.point(w) - pxbar);
            rep.step_max_distance[k - 1] = std::max(rep.step_max_distance[k - 1], dist);
            if (ell && m) {
                const double eps = q[pick] - env_val;
                const double bound = eps / (*m - *ell);
                if (dist > bound + 1e-9 * (1 + std::abs(bound))) rep.prop_bound_ok = false;
            }
            terminal = w;
        }
        rep.max_terminal_distance =
            std::max(rep.max_terminal_distance, norm2(g.point(terminal) - pwbar));
        ++rep.sequences_tested;
    }
    return rep;
}

}  // namespace infconv
