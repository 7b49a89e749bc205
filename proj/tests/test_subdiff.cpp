#include "doctest.h"

#include <cmath>
#include <random>

#include "infconv/envelope.hpp"
#include "infconv/errors.hpp"
#include "infconv/subdiff.hpp"

using namespace infconv;

namespace {

FuncSpec gauge_abs() {
    return FuncSpec::gauge_of(GaugeSet(SetSpec::interval_box(vec(-1.0), vec(1.0), 1)));
}
FuncSpec gauge_scaled_abs(double c) {
    return FuncSpec::gauge_of(GaugeSet(SetSpec::interval_box(vec(-1.0 / c), vec(1.0 / c), 1)));
}

GridFn sample_dist_unit_interval(const Grid& g) {
    std::vector<ExtReal> v(g.size());
    for (int i = 0; i < g.n(0); ++i) {
        double x = g.coord(0, i);
        v[i] = std::max({0.0, -x, x - 1.0});
    }
    return GridFn(g, std::move(v));
}

}  // namespace

TEST_CASE("convex_subdiff: norms, squares, max-affine") {
    auto n1 = FuncSpec::norm_p(1, 1);
    VecSet s = convex_subdiff(n1, vec(0.0));
    CHECK(s.lo() == -1.0);
    CHECK(s.hi() == 1.0);
    CHECK(convex_subdiff(n1, vec(0.7)).is_singleton());
    CHECK(convex_subdiff(n1, vec(0.7)).centroid()[0] == 1.0);

    auto sq = FuncSpec::scaled_squared_norm(1.0, 1);
    VecSet g4 = convex_subdiff(sq, vec(2.0));
    REQUIRE(g4.is_singleton());
    CHECK(g4.centroid()[0] == doctest::Approx(4.0));

    // max(x, -x) = |x|: the hull-of-active-slopes route must agree with the
    // norm route at 0 and away from 0
    auto ma = FuncSpec::max_affine({{vec(1.0), 0.0}, {vec(-1.0), 0.0}}, 1);
    CHECK(hausdorff(convex_subdiff(ma, vec(0.0)), convex_subdiff(n1, vec(0.0))) <= 1e-12);
    CHECK(hausdorff(convex_subdiff(ma, vec(0.4)), convex_subdiff(n1, vec(0.4))) <= 1e-12);

    // 2D norms at and off the origin
    CHECK(convex_subdiff(FuncSpec::norm_p(2, 2), vec(0.0, 0.0)).kind() == VecSet::Kind::Ball);
    VecSet g2 = convex_subdiff(FuncSpec::norm_p(2, 2), vec(3.0, 4.0));
    CHECK(g2.centroid()[0] == doctest::Approx(0.6));
    CHECK(g2.centroid()[1] == doctest::Approx(0.8));
    CHECK(convex_subdiff(FuncSpec::norm_p(1, 2), vec(0.0, 0.0)).vertices().size() == 4);
    CHECK(convex_subdiff(FuncSpec::norm_p(1, 2), vec(0.0, 2.0)).vertices().size() == 2);

    // outside the domain: empty set, not an error
    auto ind = FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1));
    CHECK(convex_subdiff(ind, vec(2.0)).is_empty());
    // nonconvex variant: unsupported
    auto two = FuncSpec::indicator(SetSpec::finite_points({vec(-1.0), vec(1.0)}, 1));
    CHECK_THROWS_AS(convex_subdiff(two, vec(1.0)), UnsupportedError);

    // sum rule: |x| + x^2 at 0 gives [-1, 1]
    auto both = FuncSpec::sum({n1, sq});
    CHECK(convex_subdiff(both, vec(0.0)).lo() == doctest::Approx(-1.0));
    CHECK(convex_subdiff(both, vec(0.0)).hi() == doctest::Approx(1.0));
    // shift rule
    auto sh = FuncSpec::shift(n1, vec(0.5));
    CHECK(convex_subdiff(sh, vec(0.5)).lo() == -1.0);
}

TEST_CASE("global convex inequality holds at witness points") {
    std::mt19937_64 rng(13);
    auto u = [&] { return (double(rng() % 4001) - 2000.0) / 500.0; };
    std::vector<FuncSpec> corpus;
    corpus.push_back(FuncSpec::norm_p(1, 2));
    corpus.push_back(FuncSpec::norm_p(2, 2));
    corpus.push_back(FuncSpec::norm_p(FuncSpec::kPInf, 2));
    corpus.push_back(FuncSpec::scaled_squared_norm(1.5, 2));
    corpus.push_back(FuncSpec::gauge_of(GaugeSet(SetSpec::polygon(
        {vec(1.0, 3.0), vec(-1.0, 3.0), vec(-1.0, -3.0), vec(1.0, -3.0)}))));
    corpus.push_back(FuncSpec::max_affine({{vec(1.0, 0.5), 0.0}, {vec(-1.0, 0.25), 0.5}}, 2));

    for (const auto& f : corpus) {
        for (int t = 0; t < 40; ++t) {
            Vec2 xb = vec(u(), u());
            VecSet sd = convex_subdiff(f, xb);
            REQUIRE_FALSE(sd.is_empty());
            double fxb = f.eval(xb).value();
            for (auto v : sd.witness_points(16))
                for (int s = 0; s < 25; ++s) {
                    Vec2 x = vec(u(), u());
                    CHECK(dot(v, x - xb) <= f.eval(x).value() - fxb + 1e-9);
                }
        }
    }
}

TEST_CASE("frechet_certificate: |x| candidates and the distance function") {
    Grid g = Grid::make_1d(-2, 2, 401);
    GridFn absf = sample(FuncSpec::norm_p(1, 1), g);
    Idx at0 = g.nearest(vec(0.0));

    CHECK(frechet_certificate(absf, at0, vec(0.5), 0.0).pass);
    auto bad = frechet_certificate(absf, at0, vec(1.5), 0.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_violation.back() < -1e-9);

    Grid gd = Grid::make_1d(-2, 3, 501);
    GridFn dfn = sample_dist_unit_interval(gd);
    CHECK(frechet_certificate(dfn, gd.nearest(vec(0.0)), vec(-1.0), 0.0).pass);
    CHECK(frechet_certificate(dfn, gd.nearest(vec(0.0)), vec(0.0), 0.0).pass);
    CHECK_FALSE(frechet_certificate(dfn, gd.nearest(vec(0.0)), vec(0.9), 0.0).pass);

    // epsilon slack admits slightly-off candidates
    CHECK(frechet_certificate(absf, at0, vec(1.2), 0.25).pass);

    CHECK_THROWS_AS(frechet_certificate(absf, Idx{0, 0}, vec(0.0), 0.0), BoundsError);
    GridFn ind = sample(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), g);
    CHECK_THROWS_AS(frechet_certificate(ind, Idx{1, 0}, vec(0.0), 0.0), PreconditionError);
}

TEST_CASE("certificates accept the exact subdifferential vertices of convex specs") {
    Grid g = Grid::make_1d(-2, 2, 401);
    std::vector<FuncSpec> corpus;
    corpus.push_back(FuncSpec::norm_p(1, 1));
    corpus.push_back(FuncSpec::scaled_squared_norm(2.0, 1));
    corpus.push_back(gauge_scaled_abs(2.0));
    corpus.push_back(FuncSpec::max_affine({{vec(1.0), 0.0}, {vec(-2.0), 0.0}}, 1));
    for (const auto& f : corpus) {
        GridFn s = sample(f, g);
        for (double xq : {-1.0, -0.25, 0.0, 0.5, 1.5}) {
            Idx at = g.nearest(vec(xq));
            VecSet sd = convex_subdiff(f, g.point(at));
            for (auto v : sd.witness_points())
                CHECK(frechet_certificate(s, at, v, 0.0).pass);
        }
    }
}

TEST_CASE("ekeland_point: minimizer fixed point and exact conclusions") {
    Grid g = Grid::make_1d(-1, 1, 201);
    GridFn sq = sample(FuncSpec::scaled_squared_norm(1.0, 1), g);
    CHECK(ekeland_point(sq, g.nearest(vec(0.0)), 0.5, 0.5) == g.nearest(vec(0.0)));

    // start off the minimum; verify (i)-(iii) over every grid point
    Idx start = g.nearest(vec(0.3));
    double eta = sq.eval(start).value(), lambda = 0.3;  // exact grid-arithmetic gap
    Idx wbar = ekeland_point(sq, start, eta, lambda);
    double gw = sq.eval(wbar).value();
    CHECK(gw <= sq.eval(start).value());
    CHECK(std::abs(g.point(wbar)[0] - g.point(start)[0]) <= lambda);
    for (int i = 0; i < g.n(0); ++i)
        CHECK(gw <= sq.eval({i, 0}).value() +
                        (eta / lambda) * std::abs(g.coord(0, i) - g.point(wbar)[0]) + 1e-15);

    // non-attained pattern: |w| with the origin knocked out
    double h = g.h(0);
    std::vector<ExtReal> vals(g.size());
    for (int i = 0; i < g.n(0); ++i) vals[i] = std::abs(g.coord(0, i));
    vals[g.flat(g.nearest(vec(0.0)))] = ExtReal::infinity();
    GridFn vshape(g, std::move(vals));
    Idx whopeful = g.nearest(vec(h));
    Idx out = ekeland_point(vshape, whopeful, h, h);
    CHECK(out == whopeful);  // no strictly improving point at rate 1

    CHECK_THROWS_AS(ekeland_point(sq, g.nearest(vec(0.9)), 1e-6, 0.5), PreconditionError);
}

TEST_CASE("ekeland_point conclusions hold exactly on 100 seeded instances") {
    for (int inst = 0; inst < 100; ++inst) {
        std::mt19937_64 rng(1000 + inst);
        int n = 51 + int(rng() % 150);
        Grid g = Grid::make_1d(-2, 2, n);
        std::vector<ExtReal> v(g.size());
        for (auto& x : v)
            x = (rng() % 7 == 0) ? ExtReal::infinity() : ExtReal(double(rng() % 4096) / 512.0);
        v[rng() % v.size()] = ExtReal(0.5);
        GridFn f(g, std::move(v));

        double gmin = 1e300;
        std::vector<int> finite;
        for (int i = 0; i < n; ++i)
            if (f[i].is_finite()) {
                gmin = std::min(gmin, f[i].value());
                finite.push_back(i);
            }
        int start_i = finite[rng() % finite.size()];
        double eta = f[start_i].value() - gmin + double(rng() % 100 + 1) / 100.0;
        double lambda = double(rng() % 100 + 1) / 50.0;

        Idx wbar = ekeland_point(f, {start_i, 0}, eta, lambda);
        double gw = f.eval(wbar).value();
        CHECK(gw <= f[start_i].value());                                   // (i)
        CHECK(std::abs(g.point(wbar)[0] - g.coord(0, start_i)) <= lambda); // (ii)
        bool iii = true;                                                   // (iii)
        for (int i = 0; i < n; ++i) {
            if (f[i].is_inf()) continue;
            if (gw > f[i].value() + (eta / lambda) * std::abs(g.coord(0, i) - g.point(wbar)[0]))
                iii = false;
        }
        CHECK(iii);
    }
}

TEST_CASE("transfer_to_phi: boundary, point target, dominated kernel") {
    Grid g = Grid::make_1d(-2, 3, 501);
    ConvCase c(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)), gauge_abs(), g);
    GridFn env = inf_conv_brute(c);
    auto r = transfer_to_phi(c, g.nearest(vec(0.0)), vec(-1.0), 0.0, 0.1, &env);
    CHECK(r.cert.pass);
    CHECK(std::abs(g.point(r.wbar)[0]) <= 0.1);

    Grid gp = Grid::make_1d(-1, 1, 201);
    ConvCase c2(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)),
                FuncSpec::scaled_squared_norm(1.0, 1), gp);
    GridFn env2 = inf_conv_brute(c2);
    auto r2 = transfer_to_phi(c2, gp.nearest(vec(0.0)), vec(0.0), 0.0, 0.1, &env2);
    CHECK(r2.cert.pass);
    CHECK(gp.point(r2.wbar)[0] == doctest::Approx(0.0).epsilon(1e-12));

    Grid ga = Grid::make_1d(-2, 2, 401);
    ConvCase c3(FuncSpec::norm_p(1, 1), gauge_scaled_abs(2.0), ga);
    GridFn env3 = inf_conv_brute(c3);
    auto r3 = transfer_to_phi(c3, ga.nearest(vec(0.5)), vec(1.0), 0.0, 0.1, &env3);
    CHECK(r3.cert.pass);

    // precondition: the envelope certificate must pass first
    CHECK_THROWS_AS(transfer_to_phi(c3, ga.nearest(vec(0.5)), vec(9.0), 0.0, 0.1, &env3),
                    PreconditionError);
}

TEST_CASE("transfer_to_f: boundary normal, singleton target, kink") {
    Grid g = Grid::make_1d(-2, 3, 501);
    ConvCase c(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)), gauge_abs(), g);
    GridFn env = inf_conv_brute(c);
    auto r = transfer_to_f(c, g.nearest(vec(2.0)), vec(1.0), 0.0, 0.1, &env);
    CHECK(r.cert.pass);
    CHECK(r.subadditive_bound_ok);
    CHECK(g.point(r.wbar)[0] == doctest::Approx(1.0).epsilon(0.11));

    Grid gp = Grid::make_1d(-2, 2, 401);
    ConvCase c2(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)),
                FuncSpec::scaled_squared_norm(1.0, 1), gp);
    GridFn env2 = inf_conv_brute(c2);
    auto r2 = transfer_to_f(c2, gp.nearest(vec(1.0)), vec(2.0), 0.0, 0.1, &env2);
    CHECK(r2.cert.pass);
    CHECK(gp.point(r2.wbar)[0] == doctest::Approx(0.0).epsilon(1e-12));

    Grid ga = Grid::make_1d(-2, 2, 401);
    ConvCase c3(FuncSpec::norm_p(1, 1), gauge_scaled_abs(2.0), ga);
    GridFn env3 = inf_conv_brute(c3);
    auto r3 = transfer_to_f(c3, ga.nearest(vec(0.0)), vec(0.5), 0.0, 0.1, &env3);
    CHECK(r3.cert.pass);
    CHECK(r3.subadditive_bound_ok);
}

TEST_CASE("strict_diff_probe: smooth pass, kink fail, Huber region") {
    Grid g = Grid::make_1d(-2, 2, 401);
    GridFn sq = sample(FuncSpec::scaled_squared_norm(1.0, 1), g);
    CHECK(strict_diff_probe(sq, g.nearest(vec(1.0)), vec(2.0)).pass);
    CHECK_FALSE(strict_diff_probe(sq, g.nearest(vec(1.0)), vec(2.5)).pass);

    GridFn absf = sample(FuncSpec::norm_p(1, 1), g);
    auto kink = strict_diff_probe(absf, g.nearest(vec(0.0)), vec(0.0));
    CHECK_FALSE(kink.pass);
    CHECK(kink.worst.back() == doctest::Approx(1.0));

    Grid gh = Grid::make_1d(-4, 4, 1601);
    GridFn envh = moreau_fast(sample(FuncSpec::norm_p(1, 1), gh), 1.0);
    // Huber derivative at 2 is sign(2) = 1
    CHECK(strict_diff_probe(envh, gh.nearest(vec(2.0)), vec(1.0)).pass);

    CHECK_THROWS_AS(strict_diff_probe(sq, Idx{3, 0}, vec(0.0)), BoundsError);
}

TEST_CASE("moreau_grad formula and finite differences") {
    Grid g = Grid::make_1d(-4, 4, 1601);
    GridFn absf = sample(FuncSpec::norm_p(1, 1), g);
    Vec2 grad = moreau_grad(absf, 1.0, g.nearest(vec(2.0)));
    CHECK(grad[0] == doctest::Approx(1.0).epsilon(1e-12));

    Grid gp = Grid::make_1d(-4, 4, 801);
    Vec2 g2 = moreau_grad(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), 2.0, gp,
                          gp.nearest(vec(3.0)));
    CHECK(g2[0] == doctest::Approx(12.0).epsilon(1e-12));

    // at points of S0 the projection is the point itself: gradient zero
    Vec2 g3 = moreau_grad(absf, 1.0, g.nearest(vec(0.0)));
    CHECK(g3[0] == doctest::Approx(0.0));

    // two-point target at the midpoint: ambiguous projection
    Grid gt = Grid::make_1d(-3, 3, 601);
    GridFn two = sample(FuncSpec::indicator(SetSpec::finite_points({vec(-1.0), vec(1.0)}, 1)), gt);
    CHECK_THROWS_AS(moreau_grad(two, 1.0, gt.nearest(vec(0.0))), AmbiguityError);

    // central differences of the computed envelope agree within max(1e-4, 5h)
    GridFn env = moreau_fast(absf, 1.0);
    double h = g.h(0);
    for (double xq : {-3.0, -2.0, -0.25, 0.1, 1.0, 2.5}) {
        Idx at = g.nearest(vec(xq));
        Vec2 mg = moreau_grad(absf, 1.0, at);
        double fd = (env.eval({at.i + 1, 0}).value() - env.eval({at.i - 1, 0}).value()) / (2 * h);
        CHECK(std::abs(mg[0] - fd) <= std::max(1e-4, 5 * h));
    }
}
