#include "doctest.h"

#include <cmath>
#include <random>

#include "infconv/envelope.hpp"
#include "infconv/errors.hpp"

using namespace infconv;

namespace {

FuncSpec abs_spec() { return FuncSpec::norm_p(1, 1); }
FuncSpec gauge_abs() {
    return FuncSpec::gauge_of(GaugeSet(SetSpec::interval_box(vec(-1.0), vec(1.0), 1)));
}
FuncSpec gauge_scaled_abs(double c) {  // c*|x| as the gauge of [-1/c, 1/c]
    return FuncSpec::gauge_of(GaugeSet(SetSpec::interval_box(vec(-1.0 / c), vec(1.0 / c), 1)));
}

double huber(double x, double alpha) {
    return std::abs(x) <= 1.0 / (2 * alpha) ? alpha * x * x : std::abs(x) - 1.0 / (4 * alpha);
}

GridFn random_fn(const Grid& g, std::uint64_t seed, double inf_share = 0.1) {
    std::mt19937_64 rng(seed);
    std::vector<ExtReal> v(g.size());
    for (auto& x : v) {
        if (double(rng() >> 11) * 0x1.0p-53 < inf_share)
            x = ExtReal::infinity();
        else
            x = 5.0 * double(rng() >> 11) * 0x1.0p-53;
    }
    v[rng() % v.size()] = ExtReal(1.0);  // keep the domain nonempty
    return GridFn(g, std::move(v));
}

}  // namespace

TEST_CASE("brute envelope: indicator and interval targets") {
    Grid g = Grid::make_1d(-2, 2, 401);
    ConvCase c(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), gauge_abs(), g);
    GridFn env = inf_conv_brute(c);
    for (int i = 0; i < g.n(0); ++i)
        CHECK(env.eval({i, 0}).value() ==
              doctest::Approx(std::abs(g.coord(0, i))).epsilon(1e-12));

    Grid g2 = Grid::make_1d(-2, 3, 501);
    ConvCase c2(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)), gauge_abs(), g2);
    GridFn env2 = inf_conv_brute(c2);
    Idx at2 = g2.nearest(vec(2.0));
    CHECK(env2.eval(at2).value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("brute envelope reproduces the Huber value at x = 2") {
    Grid g = Grid::make_1d(-4, 4, 1601);
    ConvCase c(abs_spec(), FuncSpec::scaled_squared_norm(1.0, 1), g);
    GridFn env = inf_conv_brute(c);
    Idx at = g.nearest(vec(2.0));
    CHECK(env.eval(at).value() == doctest::Approx(1.75).epsilon(1e-12));
    // sweep against the closed form away from the boundary
    for (int i = 0; i < g.n(0); ++i) {
        double x = g.coord(0, i);
        if (std::abs(x) > 3.5) continue;
        CHECK(env.eval({i, 0}).value() ==
              doctest::Approx(huber(x, 1.0)).epsilon(0).scale(1).epsilon(1e-6));
    }
}

TEST_CASE("brute budget guard") {
    Grid g = Grid::make_1d(-1, 1, 4096);
    ConvCase c(abs_spec(), FuncSpec::scaled_squared_norm(1.0, 1), g);
    CHECK_THROWS_AS(inf_conv_brute(c, 1000), SizeError);
}

TEST_CASE("moreau_fast: constants, point indicators, Huber region") {
    Grid g = Grid::make_1d(-1, 1, 201);
    GridFn zero(g, std::vector<ExtReal>(g.size(), ExtReal(0.0)));
    GridFn envz = moreau_fast(zero, 3.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(envz[i].value() == 0.0);

    GridFn ind = sample(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), g);
    GridFn env = moreau_fast(ind, 2.0);
    for (int i = 0; i < g.n(0); ++i) {
        double x = g.coord(0, i);
        CHECK(env.eval({i, 0}).value() == doctest::Approx(2 * x * x).epsilon(1e-12));
    }

    Grid gh = Grid::make_1d(-4, 4, 1601);
    GridFn absf = sample(abs_spec(), gh);
    GridFn envh = moreau_fast(absf, 1.0);
    Idx at = gh.nearest(vec(0.25));
    CHECK(envh.eval(at).value() == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("moreau_fast equals brute force on random functions") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Grid g = Grid::make_1d(-2, 2, 257);
        GridFn f = random_fn(g, seed);
        ConvCase c(abs_spec(), FuncSpec::scaled_squared_norm(1.0, 1), g);  // spec placeholder
        for (double alpha : {0.5, 1.0, 4.0}) {
            GridFn fast = moreau_fast(f, alpha);
            // brute oracle straight from the definition
            for (int i = 0; i < g.n(0); i += 7) {
                double x = g.coord(0, i);
                double best = 1e300;
                for (int w = 0; w < g.n(0); ++w) {
                    if (f[w].is_inf()) continue;
                    double d = g.coord(0, w) - x;
                    best = std::min(best, f[w].value() + alpha * d * d);
                }
                CHECK(std::abs(fast.eval({i, 0}).value() - best) <= 1e-9);
            }
        }
    }
}

TEST_CASE("moreau_fast 2D equals brute force, including all-inf rows") {
    Grid g = Grid::make_2d(-1, 1, 33, -1, 1, 29);
    GridFn f = [&] {
        GridFn base = random_fn(g, 99);
        std::vector<ExtReal> v(base.values());
        for (int j = 0; j < g.n(1); ++j) v[g.flat({7, j})] = ExtReal::infinity();  // dead row
        return GridFn(g, std::move(v));
    }();
    for (double alpha : {0.5, 4.0}) {
        GridFn fast = moreau_fast(f, alpha);
        for (std::size_t s = 0; s < g.size(); s += 11) {
            Idx k = g.unflat(s);
            Vec2 x = g.point(k);
            double best = 1e300;
            for (std::size_t w = 0; w < g.size(); ++w) {
                if (f[w].is_inf()) continue;
                best = std::min(best, f[w].value() + alpha * norm2sq(g.point(g.unflat(w)) - x));
            }
            CHECK(std::abs(fast[s].value() - best) <= 1e-9);
        }
    }
}

TEST_CASE("parallel kernels match serial references exactly") {
    Grid g1 = Grid::make_1d(-2, 2, 513);
    GridFn f1 = random_fn(g1, 42);
    GridFn a = moreau_fast(f1, 1.5);
    GridFn b = moreau_fast_serial(f1, 1.5);
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(a[i].as_double() == b[i].as_double());

    Grid g2 = Grid::make_2d(-1, 1, 41, -1, 1, 37);
    GridFn f2 = random_fn(g2, 43);
    GridFn c = moreau_fast(f2, 0.75);
    GridFn d = moreau_fast_serial(f2, 0.75);
    for (std::size_t i = 0; i < g2.size(); ++i) CHECK(c[i].as_double() == d[i].as_double());

    ConvCase cc(FuncSpec::indicator(SetSpec::ball(vec(0.0, 0.0), 1.0, 2)),
                FuncSpec::norm_p(2, 2), g2);
    GridFn e = inf_conv_brute(cc);
    GridFn s = inf_conv_brute_serial(cc);
    for (std::size_t i = 0; i < g2.size(); ++i) CHECK(e[i].as_double() == s[i].as_double());
}

TEST_CASE("min_time: ball dynamics reduce to distance; asymmetric 1D dynamics") {
    Grid g = Grid::make_2d(-5, 5, 41, -5, 5, 41);
    GaugeSet ball(SetSpec::ball(vec(0.0, 0.0), 1.0, 2));
    GridFn T = min_time(SetSpec::finite_points({vec(0.0, 0.0)}, 2), ball, g);
    Idx at = g.nearest(vec(3.0, 4.0));
    CHECK(T.eval(at).value() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(T.eval(g.nearest(vec(0.0, 0.0))).value() == 0.0);

    Grid g1 = Grid::make_1d(-2, 2, 401);
    GaugeSet F(SetSpec::interval_box(vec(-1.0), vec(2.0), 1));
    GridFn T1 = min_time(SetSpec::finite_points({vec(0.0)}, 1), F, g1);
    CHECK(T1.eval(g1.nearest(vec(-1.0))).value() == doctest::Approx(0.5).epsilon(1e-12));

    // min_time agrees exactly with the generic brute path
    ConvCase c(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)),
               FuncSpec::gauge_of(F), g1);
    GridFn generic = inf_conv_brute(c);
    for (std::size_t i = 0; i < g1.size(); ++i)
        CHECK(T1[i].as_double() == generic[i].as_double());

    // all targets off-grid beyond h/2: error
    CHECK_THROWS_AS(min_time(SetSpec::finite_points({vec(7.0)}, 1), F, g1), ValueError);
}

TEST_CASE("distance_fn examples") {
    Grid g = Grid::make_1d(-2, 3, 501);
    GridFn d = distance_fn(SetSpec::interval_box(vec(0.0), vec(1.0), 1), g);
    CHECK(d.eval(g.nearest(vec(-0.5))).value() == doctest::Approx(0.5).epsilon(1e-12));

    GridFn d2 = distance_fn(SetSpec::finite_points({vec(-1.0), vec(1.0)}, 1),
                            Grid::make_1d(-3, 3, 601));
    Grid g601 = Grid::make_1d(-3, 3, 601);
    CHECK(d2.eval(g601.nearest(vec(0.0))).value() == doctest::Approx(1.0).epsilon(1e-12));

    Grid gb = Grid::make_2d(-4, 4, 81, -4, 4, 81);
    GridFn db = distance_fn(SetSpec::ball(vec(0.0, 0.0), 1.0, 2), gb);
    CHECK(db.eval(gb.nearest(vec(0.0, 3.0))).value() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("projection_set: nearest point, ties, soft threshold") {
    Grid g = Grid::make_1d(-2, 3, 501);
    ConvCase c(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)), gauge_abs(), g);
    ArgminSet p = projection_set(c, g.nearest(vec(2.0)));
    REQUIRE(p.minimizers.size() == 1);
    CHECK(g.point(p.minimizers[0])[0] == doctest::Approx(1.0));

    Grid gs = Grid::make_1d(-3, 3, 601);
    ConvCase c2(FuncSpec::indicator(SetSpec::finite_points({vec(-1.0), vec(1.0)}, 1)), gauge_abs(), gs);
    ArgminSet p2 = projection_set(c2, gs.nearest(vec(0.0)));
    REQUIRE(p2.minimizers.size() == 2);
    CHECK(gs.point(p2.minimizers[0])[0] == doctest::Approx(-1.0));
    CHECK(gs.point(p2.minimizers[1])[0] == doctest::Approx(1.0));

    // soft-threshold oracle: argmin of |w| + (w-2)^2 is w = 2 - 1/(2*alpha) = 1.5
    Grid gh = Grid::make_1d(-4, 4, 1601);
    ConvCase c3(abs_spec(), FuncSpec::scaled_squared_norm(1.0, 1), gh);
    ArgminSet p3 = projection_set(c3, gh.nearest(vec(2.0)));
    REQUIRE(p3.minimizers.size() == 1);
    CHECK(gh.point(p3.minimizers[0])[0] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("s0_set: interval target, dominated kernel, point target") {
    Grid g = Grid::make_1d(-2, 3, 501);
    ConvCase c(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)), gauge_abs(), g);
    auto s0 = s0_set(c);
    for (Idx k : s0) {
        double x = g.point(k)[0];
        CHECK(x >= -1e-12);
        CHECK(x <= 1 + 1e-12);
    }
    CHECK(s0.size() == 101);  // grid points inside [0,1] at h = 0.01

    // m = 2 dominates ell = 1: S0 is the whole grid
    Grid ga = Grid::make_1d(-2, 2, 401);
    ConvCase c2(abs_spec(), gauge_scaled_abs(2.0), ga);
    CHECK(s0_set(c2).size() == ga.size());

    Grid gp = Grid::make_1d(-1, 1, 201);
    ConvCase c3(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)),
                FuncSpec::scaled_squared_norm(1.0, 1), gp);
    auto s03 = s0_set(c3);
    REQUIRE(s03.size() == 1);
    CHECK(gp.point(s03[0])[0] == 0.0);
}

TEST_CASE("envelope bounds: env <= f on dom f, env >= 0 for f >= 0") {
    Grid g = Grid::make_1d(-2, 2, 201);
    ConvCase c(abs_spec(), gauge_scaled_abs(3.0), g);
    GridFn env = inf_conv_brute(c);
    GridFn fs = c.sample_f();
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(env[i].value() >= -1e-15);
        if (fs[i].is_finite()) CHECK(env[i].value() <= fs[i].value() + 1e-12);
    }
}

TEST_CASE("wellposed_probe: point target, interval target with constants") {
    Grid g = Grid::make_1d(-1, 1, 201);
    ConvCase c(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), gauge_abs(), g);
    auto rep = wellposed_probe(c, g.nearest(vec(0.0)), 8);
    CHECK(rep.singleton);
    CHECK(rep.max_terminal_distance <= 1.0 / 16 + 1e-12);
    CHECK(g.point(rep.wbar)[0] == 0.0);

    Grid g2 = Grid::make_1d(-2, 3, 501);
    ConvCase c2(FuncSpec::indicator(SetSpec::interval_box(vec(0.0), vec(1.0), 1)),
                gauge_scaled_abs(2.0), g2);
    auto rep2 = wellposed_probe(c2, g2.nearest(vec(0.5)), 8, 0.0, 2.0);
    CHECK(rep2.singleton);
    CHECK(rep2.prop_bound_ok);  // ||w_k - xbar|| <= eps/(m - ell) = eps/2

    // f = 0 with phi = |.|: P(x) = {x} everywhere
    ConvCase c3(FuncSpec::max_affine({{vec(0.0), 0.0}}, 1), gauge_abs(), g);
    auto rep3 = wellposed_probe(c3, g.nearest(vec(0.0)), 8, 0.0, 1.0);
    CHECK(rep3.singleton);
    CHECK(g.point(rep3.wbar)[0] == 0.0);
    CHECK(rep3.prop_bound_ok);

    // precondition: xbar must lie in S0
    ConvCase c4(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), gauge_abs(), g);
    CHECK_THROWS_AS(wellposed_probe(c4, g.nearest(vec(0.5)), 4), PreconditionError);
}

TEST_CASE("wellposed_probe sequences are reproducible") {
    Grid g = Grid::make_1d(-1, 1, 201);
    ConvCase c(FuncSpec::indicator(SetSpec::finite_points({vec(0.0)}, 1)), gauge_abs(), g);
    auto a = wellposed_probe(c, g.nearest(vec(0.0)), 6, {}, {}, 7);
    auto b = wellposed_probe(c, g.nearest(vec(0.0)), 6, {}, {}, 7);
    CHECK(a.max_terminal_distance == b.max_terminal_distance);
    CHECK(a.step_max_distance == b.step_max_distance);
}
