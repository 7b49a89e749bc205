#include "infconv/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infconv/errors.hpp"

namespace infconv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPointTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// Exact convex calculus
// ---------------------------------------------------------------------------

VecSet normal_cone(const SetSpec& omega, Vec2 x) {
    const int dim = omega.dim();
    if (omega.distance(x) > kPointTol) return VecSet::empty(dim);

    switch (omega.kind()) {
        case SetSpec::Kind::IntervalBox: {
            std::vector<Vec2> rays;
            for (int a = 0; a < dim; ++a) {
                Vec2 e{0, 0};
                e[a] = 1;
                if (std::abs(x[a] - omega.box_lo()[a]) <= kPointTol) rays.push_back(-e);
                if (std::abs(x[a] - omega.box_hi()[a]) <= kPointTol) rays.push_back(e);
            }
            return VecSet::cone(dim, rays);
        }
        case SetSpec::Kind::Ball: {
            double d = norm2(x - omega.center());
            if (d < omega.radius() - kPointTol) return VecSet::cone(dim, {});
            return VecSet::cone(dim, {normalized(x - omega.center())});
        }
        case SetSpec::Kind::PolygonV: {
            const auto& v = omega.vertices();
            std::vector<Vec2> rays;
            for (std::size_t i = 0; i < v.size(); ++i) {
                Vec2 a = v[i], b = v[(i + 1) % v.size()];
                Vec2 n = normalized(outward_normal(b - a));
                if (std::abs(dot(n, x - a)) <= kPointTol) rays.push_back(n);
            }
            return VecSet::cone(2, rays);
        }
        case SetSpec::Kind::FinitePoints:
            // isolated points: every direction is normal
            return VecSet::whole_space(dim);
    }
    return VecSet::empty(dim);
}

namespace {

VecSet norm_subdiff(int p, int dim, Vec2 x) {
    const double nx = dim == 1 ? std::abs(x[0]) : norm2(x);
    if (dim == 1) {
        if (nx <= kPointTol) return VecSet::interval(-1, 1);
        return VecSet::singleton(vec(x[0] > 0 ? 1.0 : -1.0), 1);
    }
    if (p == 2) {
        if (nx <= kPointTol) return VecSet::ball(vec(0.0, 0.0), 1.0);
        return VecSet::singleton({x[0] / nx, x[1] / nx}, 2);
    }
    if (p == 1) {
        if (nx <= kPointTol)
            return VecSet::polygon({vec(1.0, 1.0), vec(-1.0, 1.0), vec(-1.0, -1.0), vec(1.0, -1.0)});
        auto sgn = [](double t) { return t > 0 ? 1.0 : -1.0; };
        bool z0 = std::abs(x[0]) <= kPointTol, z1 = std::abs(x[1]) <= kPointTol;
        if (!z0 && !z1) return VecSet::singleton({sgn(x[0]), sgn(x[1])}, 2);
        if (z0) return VecSet::segment(vec(-1.0, sgn(x[1])), vec(1.0, sgn(x[1])));
        return VecSet::segment(vec(sgn(x[0]), -1.0), vec(sgn(x[0]), 1.0));
    }
    // max norm
    if (nx <= kPointTol)
        return VecSet::polygon({vec(1.0, 0.0), vec(0.0, 1.0), vec(-1.0, 0.0), vec(0.0, -1.0)});
    double m = norm_inf(x);
    std::vector<Vec2> active;
    for (int a = 0; a < 2; ++a)
        if (std::abs(std::abs(x[a]) - m) <= kPointTol * (1 + m)) {
            Vec2 e{0, 0};
            e[a] = x[a] > 0 ? 1.0 : -1.0;
            active.push_back(e);
        }
    if (active.size() == 1) return VecSet::singleton(active[0], 2);
    return VecSet::segment(active[0], active[1]);
}

}  // namespace

VecSet convex_subdiff(const FuncSpec& f, Vec2 x) {
    if (!f.is_convex())
        throw UnsupportedError("convex_subdiff: nonconvex spec (finite multi-point target)");
    if (f.eval(x).is_inf()) return VecSet::empty(f.dim());

    switch (f.kind()) {
        case FuncSpec::Kind::NormP:
            return norm_subdiff(f.p(), f.dim(), x);
        case FuncSpec::Kind::ScaledSquaredNorm: {
            Vec2 g = 2 * f.alpha() * x;
            return VecSet::singleton(g, f.dim());
        }
        case FuncSpec::Kind::Indicator:
            return normal_cone(f.set(), x);
        case FuncSpec::Kind::GaugeOf:
            return gauge_subdiff(f.gauge(), x);
        case FuncSpec::Kind::MaxAffine: {
            double best = -kInf;
            for (const auto& p : f.pieces())
                best = std::max(best, dot(p.slope, x) + p.intercept);
            std::vector<Vec2> active;
            for (const auto& p : f.pieces())
                if (dot(p.slope, x) + p.intercept >= best - 1e-12 * (1 + std::abs(best)))
                    active.push_back(p.slope);
            if (f.dim() == 1) {
                double lo = kInf, hi = -kInf;
                for (auto s : active) {
                    lo = std::min(lo, s[0]);
                    hi = std::max(hi, s[0]);
                }
                return VecSet::interval(lo, hi);
            }
            if (active.size() == 1) return VecSet::singleton(active[0], 2);
            if (active.size() == 2) return VecSet::segment(active[0], active[1]);
            return VecSet::polygon(std::move(active));
        }
        case FuncSpec::Kind::Sum: {
            VecSet acc = convex_subdiff(f.terms().front(), x);
            for (std::size_t i = 1; i < f.terms().size(); ++i) {
                if (acc.is_empty()) return acc;
                acc = minkowski_sum(acc, convex_subdiff(f.terms()[i], x));
            }
            return acc;
        }
        case FuncSpec::Kind::Shift:
            return convex_subdiff(f.inner(), x - f.offset());
    }
    return VecSet::empty(f.dim());
}

// ---------------------------------------------------------------------------
// Grid certificates
// ---------------------------------------------------------------------------

Certificate frechet_certificate(const GridFn& g, Idx xbar, Vec2 v, double eps) {
    const Grid& gr = g.grid();
    ExtReal gx = g.eval(xbar);
    if (gx.is_inf()) throw PreconditionError("frechet_certificate: g(xbar) = +inf");
    if (gr.edge_margin(xbar) < 1)
        throw BoundsError("frechet_certificate: xbar within margin h of the grid edge");

    const double h = gr.hmax();
    Certificate cert;
    cert.point = gr.point(xbar);
    cert.candidate = v;
    cert.epsilon = eps;
    cert.eta_slack = 10 * h * (1 + norm2(v));
    cert.radii = {8 * h, 4 * h, 2 * h, h};
    cert.pass = true;

    const Vec2 px = gr.point(xbar);
    for (double delta : cert.radii) {
        const int ri = int(std::ceil(delta / gr.h(0))) + 1;
        const int rj = gr.dim() == 2 ? int(std::ceil(delta / gr.h(1))) + 1 : 0;
        double worst = kInf;
        for (int i = std::max(0, xbar.i - ri); i <= std::min(gr.n(0) - 1, xbar.i + ri); ++i) {
            for (int j = std::max(0, xbar.j - rj); j <= std::min(gr.n(1) - 1, xbar.j + rj); ++j) {
                if (i == xbar.i && j == xbar.j) continue;
                Vec2 p = gr.point({i, j});
                double d = norm2(p - px);
                if (d > delta * (1 + 1e-12)) continue;
                ExtReal gv = g.eval({i, j});
                if (gv.is_inf()) continue;  // +inf satisfies the inequality
                double expr = gv.value() - gx.value() - dot(v, p - px) +
                              (eps + cert.eta_slack) * d;
                worst = std::min(worst, expr);
            }
        }
        if (worst == kInf) worst = 0;  // nothing finite nearby: vacuous
        cert.worst_violation.push_back(worst);
        if (worst < -1e-9) cert.pass = false;
    }
    return cert;
}

DiffProbe strict_diff_probe(const GridFn& g, Idx xbar, Vec2 v) {
    const Grid& gr = g.grid();
    if (gr.edge_margin(xbar) < 8)
        throw BoundsError("strict_diff_probe: point needs an interior margin of 8h");

    const double h = gr.hmax();
    DiffProbe probe;
    probe.point = gr.point(xbar);
    probe.candidate = v;
    probe.radii = {8 * h, 4 * h, 2 * h, h};

    // collect finite-valued points within the widest radius
    const Vec2 px = gr.point(xbar);
    struct Pt {
        Vec2 p;
        double val;
        double dist;
    };
    std::vector<Pt> pts;
    const int ri = int(std::ceil(8 * h / gr.h(0))) + 1;
    const int rj = gr.dim() == 2 ? int(std::ceil(8 * h / gr.h(1))) + 1 : 0;
    for (int i = std::max(0, xbar.i - ri); i <= std::min(gr.n(0) - 1, xbar.i + ri); ++i)
        for (int j = std::max(0, xbar.j - rj); j <= std::min(gr.n(1) - 1, xbar.j + rj); ++j) {
            Vec2 p = gr.point({i, j});
            double d = norm2(p - px);
            if (d > 8 * h * (1 + 1e-12)) continue;
            ExtReal gv = g.eval({i, j});
            if (gv.is_inf()) continue;
            pts.push_back({p, gv.value(), d});
        }

    probe.worst.assign(probe.radii.size(), 0.0);
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            Vec2 d = pts[a].p - pts[b].p;
            double nd = norm2(d);
            if (nd <= 0) continue;
            double q = std::abs(pts[a].val - pts[b].val - dot(v, d)) / nd;
            double reach = std::max(pts[a].dist, pts[b].dist);
            for (std::size_t r = 0; r < probe.radii.size(); ++r)
                if (reach <= probe.radii[r] * (1 + 1e-12)) probe.worst[r] = std::max(probe.worst[r], q);
            ++probe.pair_count;
        }

    // robust local curvature scale: median absolute second difference / h^2
    std::vector<double> curv;
    for (int i = std::max(1, xbar.i - ri); i <= std::min(gr.n(0) - 2, xbar.i + ri); ++i)
        for (int j = std::max(0, xbar.j - rj); j <= std::min(gr.n(1) - 1, xbar.j + rj); ++j) {
            ExtReal a = g.eval({i - 1, j}), b = g.eval({i, j}), c = g.eval({i + 1, j});
            if (a.is_inf() || b.is_inf() || c.is_inf()) continue;
            curv.push_back(std::abs(a.value() - 2 * b.value() + c.value()) / (gr.h(0) * gr.h(0)));
        }
    if (gr.dim() == 2)
        for (int i = std::max(0, xbar.i - ri); i <= std::min(gr.n(0) - 1, xbar.i + ri); ++i)
            for (int j = std::max(1, xbar.j - rj); j <= std::min(gr.n(1) - 2, xbar.j + rj); ++j) {
                ExtReal a = g.eval({i, j - 1}), b = g.eval({i, j}), c = g.eval({i, j + 1});
                if (a.is_inf() || b.is_inf() || c.is_inf()) continue;
                curv.push_back(std::abs(a.value() - 2 * b.value() + c.value()) /
                               (gr.h(1) * gr.h(1)));
            }
    double scale = 1.0;
    if (!curv.empty()) {
        std::nth_element(curv.begin(), curv.begin() + curv.size() / 2, curv.end());
        scale = std::max(1.0, curv[curv.size() / 2]);
    }
    probe.tolerance = 20 * h * scale;

    const double wh = probe.worst.back();   // radius h
    const double w8 = probe.worst.front();  // radius 8h
    probe.pass = wh <= probe.tolerance && (wh <= 0.5 * w8 + 1e-9 || w8 <= probe.tolerance);
    return probe;
}

// ---------------------------------------------------------------------------
// Variational descent and transfers
// ---------------------------------------------------------------------------

Idx ekeland_point(const GridFn& g, Idx wtilde, double eta_tilde, double lambda) {
    const Grid& gr = g.grid();
    if (!(eta_tilde > 0) || !(lambda > 0))
        throw ValueError("ekeland_point: eta and lambda must be positive");
    ExtReal gw = g.eval(wtilde);
    if (gw.is_inf()) throw PreconditionError("ekeland_point: g(wtilde) = +inf");

    double gmin = kInf;
    for (std::size_t i = 0; i < gr.size(); ++i)
        if (g[i].is_finite()) gmin = std::min(gmin, g[i].value());
    if (gw.value() > gmin + eta_tilde)
        throw PreconditionError("ekeland_point: wtilde is not an eta-approximate minimizer");

    const double rate = eta_tilde / lambda;
    Idx cur = wtilde;
    for (;;) {
        const Vec2 pc = gr.point(cur);
        const double gc = g.eval(cur).value();
        double best = gc;
        Idx best_idx = cur;
        for (std::size_t i = 0; i < gr.size(); ++i) {
            if (g[i].is_inf()) continue;
            Idx k = gr.unflat(i);
            if (k == cur) continue;
            double val = g[i].value() + rate * norm2(gr.point(k) - pc);
            if (val < best) {
                best = val;
                best_idx = k;
            }
        }
        if (best_idx == cur) return cur;
        cur = best_idx;
    }
}

namespace {

GridFn envelope_of(const ConvCase& c, const GridFn* envelope) {
    return envelope ? *envelope : inf_conv_brute(c);
}

struct TransferSetup {
    double delta;
    double eta_tilde;
    Idx wtilde;
    double env_at_xbar;
};

TransferSetup transfer_setup(const ConvCase& c, const GridFn& fs, const GridFn& env, Idx xbar,
                             double eta) {
    const Grid& gr = c.grid;
    const double h = gr.hmax();
    TransferSetup s{};
    s.delta = std::max(std::min(eta / 2, 8 * h), 2 * h);
    s.eta_tilde = s.delta / 4;
    s.env_at_xbar = env.eval(xbar).value();

    const Vec2 px = gr.point(xbar);
    const double cap = s.env_at_xbar + s.eta_tilde * s.eta_tilde;
    bool found = false;
    for (std::size_t i = 0; i < gr.size() && !found; ++i) {
        if (fs[i].is_inf()) continue;
        Vec2 pw = gr.point(gr.unflat(i));
        double q = fs[i].value() + c.phi.eval(pw - px).value();
        if (q < cap) {
            s.wtilde = gr.unflat(i);
            found = true;
        }
    }
    if (!found) throw PreconditionError("transfer: no approximate minimizer found");
    return s;
}

TransferResult run_transfer(const ConvCase& c, Idx xbar, Vec2 v, double eps, double eta,
                            const GridFn* envelope, bool to_phi) {
    const Grid& gr = c.grid;
    GridFn env = envelope_of(c, envelope);
    Certificate pre = frechet_certificate(env, xbar, v, eps);
    if (!pre.pass)
        throw PreconditionError("transfer: envelope certificate fails for the given v");

    GridFn fs = c.sample_f();
    TransferSetup s = transfer_setup(c, fs, env, xbar, eta);

    const Vec2 px = gr.point(xbar);
    const Vec2 pwt = gr.point(s.wtilde);
    const double eta2 = s.eta_tilde * s.eta_tilde;
    const double slack_rate = eps + eta / 2;

    // auxiliary objective on the ball B(wtilde, delta); +inf outside
    std::vector<ExtReal> aux(gr.size(), ExtReal::infinity());
    if (to_phi) {
        const double phi_wt = c.phi.eval(pwt - px).value();
        for (std::size_t i = 0; i < gr.size(); ++i) {
            Vec2 pw = gr.point(gr.unflat(i));
            double dwt = norm2(pwt - pw);
            if (dwt > s.delta) continue;
            aux[i] = -dot(v, pwt - pw) + c.phi.eval(pw - px).value() - phi_wt + eta2 +
                     slack_rate * dwt;
        }
    } else {
        const double f_wt = fs.eval(s.wtilde).value();
        for (std::size_t i = 0; i < gr.size(); ++i) {
            if (fs[i].is_inf()) continue;
            Vec2 pw = gr.point(gr.unflat(i));
            double dwt = norm2(pw - pwt);
            if (dwt > s.delta) continue;
            aux[i] = -dot(v, pw - pwt) + fs[i].value() - f_wt + eta2 + slack_rate * dwt;
        }
    }
    GridFn aux_fn(gr, std::move(aux));

    // The grid surrogate can dip slightly below zero; widen the Ekeland gap
    // accordingly so its precondition holds by construction.
    double aux_min = kInf;
    for (std::size_t i = 0; i < gr.size(); ++i)
        if (aux_fn[i].is_finite()) aux_min = std::min(aux_min, aux_fn[i].value());
    double gap = std::max(eta2, eta2 - aux_min) + 1e-15;

    TransferResult out;
    out.wtilde = s.wtilde;
    out.wbar = ekeland_point(aux_fn, s.wtilde, gap, s.eta_tilde);

    if (to_phi) {
        // certify -v as an (eps+eta)-subgradient of phi(. - xbar) at wbar
        std::vector<ExtReal> shifted(gr.size(), ExtReal(0.0));
        for (std::size_t i = 0; i < gr.size(); ++i)
            shifted[i] = c.phi.eval(gr.point(gr.unflat(i)) - px);
        GridFn phi_fn(gr, std::move(shifted));
        out.cert = frechet_certificate(phi_fn, out.wbar, -v, eps + eta);
    } else {
        out.cert = frechet_certificate(fs, out.wbar, v, eps + eta);
        if (c.phi.kind() == FuncSpec::Kind::GaugeOf || c.phi.kind() == FuncSpec::Kind::NormP) {
            // displayed bound for subadditive phi
            const Vec2 pwb = gr.point(out.wbar);
            double lhs = fs.eval(s.wtilde).value() + c.phi.eval(pwb - px).value();
            double rhs = s.env_at_xbar + c.phi.eval(pwb - pwt).value() + eta;
            out.subadditive_bound_ok = lhs <= rhs + 1e-9;
        }
    }
    return out;
}

}  // namespace

TransferResult transfer_to_phi(const ConvCase& c, Idx xbar, Vec2 v, double eps, double eta,
                               const GridFn* envelope) {
    return run_transfer(c, xbar, v, eps, eta, envelope, true);
}

TransferResult transfer_to_f(const ConvCase& c, Idx xbar, Vec2 v, double eps, double eta,
                             const GridFn* envelope) {
    return run_transfer(c, xbar, v, eps, eta, envelope, false);
}

// ---------------------------------------------------------------------------
// Quadratic envelope gradient
// ---------------------------------------------------------------------------

Vec2 moreau_grad(const GridFn& f, double alpha, Idx xbar) {
    const Grid& gr = f.grid();
    if (!gr.in_bounds(xbar)) throw BoundsError("moreau_grad: xbar outside grid");
    const Vec2 px = gr.point(xbar);

    double best = kInf;
    for (std::size_t i = 0; i < gr.size(); ++i) {
        if (f[i].is_inf()) continue;
        double q = f[i].value() + alpha * norm2sq(gr.point(gr.unflat(i)) - px);
        best = std::min(best, q);
    }
    const double tol = 1e-9 * (1 + std::abs(best));
    std::vector<Idx> mins;
    for (std::size_t i = 0; i < gr.size(); ++i) {
        if (f[i].is_inf()) continue;
        double q = f[i].value() + alpha * norm2sq(gr.point(gr.unflat(i)) - px);
        if (q <= best + tol) mins.push_back(gr.unflat(i));
    }
    if (mins.size() != 1)
        throw AmbiguityError("moreau_grad: projection at xbar is not a singleton");
    return 2 * alpha * (px - gr.point(mins.front()));
}

Vec2 moreau_grad(const FuncSpec& f, double alpha, const Grid& grid, Idx xbar) {
    return moreau_grad(sample(f, grid), alpha, xbar);
}

}  // namespace infconv
