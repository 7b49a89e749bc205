#include "infconv/json_io.hpp"

#include <charconv>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError("unknown key '" + it.key() + "' in " + j.dump());
    }
}

const Json& require(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key '") + key + "' in " + j.dump());
    return *it;
}

// A point is a number (1D) or an array of 1 or 2 numbers.
std::pair<Vec2, int> vec_from_json(const Json& j) {
    if (j.is_number()) return {vec(j.get<double>()), 1};
    if (!j.is_array() || j.empty() || j.size() > 2)
        throw ParseError("expected a number or an array of 1-2 numbers: " + j.dump());
    if (j.size() == 1) return {vec(j[0].get<double>()), 1};
    return {vec(j[0].get<double>(), j[1].get<double>()), 2};
}

}  // namespace

Json vec_to_json(Vec2 p, int dim) {
    Json a = Json::array();
    a.push_back(p[0]);
    if (dim == 2) a.push_back(p[1]);
    return a;
}

SetSpec setspec_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("set spec must be an object");
    std::string kind = require(j, "kind").get<std::string>();
    if (kind == "box") {
        check_keys(j, {"kind", "lo", "hi", "require_zero_interior"});
        auto [lo, d1] = vec_from_json(require(j, "lo"));
        auto [hi, d2] = vec_from_json(require(j, "hi"));
        if (d1 != d2) throw ParseError("box lo/hi dimension mismatch");
        return SetSpec::interval_box(lo, hi, d1);
    }
    if (kind == "polygon") {
        check_keys(j, {"kind", "vertices", "require_zero_interior"});
        std::vector<Vec2> verts;
        for (const auto& v : require(j, "vertices")) {
            auto [p, d] = vec_from_json(v);
            if (d != 2) throw ParseError("polygon vertices must be 2D");
            verts.push_back(p);
        }
        return SetSpec::polygon(std::move(verts));
    }
    if (kind == "ball") {
        check_keys(j, {"kind", "center", "radius", "require_zero_interior"});
        auto [c, d] = vec_from_json(require(j, "center"));
        return SetSpec::ball(c, require(j, "radius").get<double>(), d);
    }
    if (kind == "points") {
        check_keys(j, {"kind", "points"});
        std::vector<Vec2> pts;
        int dim = 0;
        for (const auto& v : require(j, "points")) {
            auto [p, d] = vec_from_json(v);
            if (dim == 0) dim = d;
            if (d != dim) throw ParseError("points dimension mismatch");
            pts.push_back(p);
        }
        if (pts.empty()) throw ParseError("points set must be nonempty");
        return SetSpec::finite_points(std::move(pts), dim);
    }
    throw ParseError("unknown set kind '" + kind + "'");
}

Json setspec_to_json(const SetSpec& s) {
    Json j;
    switch (s.kind()) {
        case SetSpec::Kind::IntervalBox:
            j["kind"] = "box";
            j["lo"] = vec_to_json(s.box_lo(), s.dim());
            j["hi"] = vec_to_json(s.box_hi(), s.dim());
            break;
        case SetSpec::Kind::PolygonV: {
            j["kind"] = "polygon";
            Json verts = Json::array();
            for (auto v : s.vertices()) verts.push_back(vec_to_json(v, 2));
            j["vertices"] = verts;
            break;
        }
        case SetSpec::Kind::Ball:
            j["kind"] = "ball";
            j["center"] = vec_to_json(s.center(), s.dim());
            j["radius"] = s.radius();
            break;
        case SetSpec::Kind::FinitePoints: {
            j["kind"] = "points";
            Json pts = Json::array();
            for (auto p : s.points()) pts.push_back(vec_to_json(p, s.dim()));
            j["points"] = pts;
            break;
        }
    }
    return j;
}

GaugeSet gauge_from_json(const Json& j) {
    // reuses the set schema; the zero-interior requirement is validated by
    // GaugeSet construction regardless of the flag's presence
    return GaugeSet(setspec_from_json(j));
}

FuncSpec funcspec_from_json(const Json& j, int dim) {
    if (!j.is_object()) throw ParseError("function spec must be an object");
    std::string kind = require(j, "kind").get<std::string>();
    if (kind == "norm") {
        check_keys(j, {"kind", "p"});
        const Json& pj = require(j, "p");
        int p;
        if (pj.is_string()) {
            if (pj.get<std::string>() != "inf") throw ParseError("norm p must be 1, 2 or \"inf\"");
            p = FuncSpec::kPInf;
        } else {
            p = pj.get<int>();
        }
        return FuncSpec::norm_p(p, dim);
    }
    if (kind == "sq") {
        check_keys(j, {"kind", "alpha"});
        return FuncSpec::scaled_squared_norm(require(j, "alpha").get<double>(), dim);
    }
    if (kind == "indicator") {
        check_keys(j, {"kind", "set"});
        return FuncSpec::indicator(setspec_from_json(require(j, "set")));
    }
    if (kind == "gauge") {
        check_keys(j, {"kind", "set"});
        return FuncSpec::gauge_of(gauge_from_json(require(j, "set")));
    }
    if (kind == "max_affine") {
        check_keys(j, {"kind", "pieces"});
        std::vector<FuncSpec::AffinePiece> pieces;
        for (const auto& pj : require(j, "pieces")) {
            if (!pj.is_array() || pj.size() != 2)
                throw ParseError("max_affine piece must be [slope, intercept]");
            auto [s, d] = vec_from_json(pj[0]);
            if (d != dim) throw ParseError("max_affine slope dimension mismatch");
            pieces.push_back({s, pj[1].get<double>()});
        }
        return FuncSpec::max_affine(std::move(pieces), dim);
    }
    if (kind == "sum") {
        check_keys(j, {"kind", "terms"});
        std::vector<FuncSpec> terms;
        for (const auto& t : require(j, "terms")) terms.push_back(funcspec_from_json(t, dim));
        return FuncSpec::sum(std::move(terms));
    }
    if (kind == "shift") {
        check_keys(j, {"kind", "inner", "offset"});
        auto [off, d] = vec_from_json(require(j, "offset"));
        if (d != dim) throw ParseError("shift offset dimension mismatch");
        return FuncSpec::shift(funcspec_from_json(require(j, "inner"), dim), off);
    }
    throw ParseError("unknown function kind '" + kind + "'");
}

Json funcspec_to_json(const FuncSpec& f) {
    Json j;
    switch (f.kind()) {
        case FuncSpec::Kind::NormP:
            j["kind"] = "norm";
            if (f.p() == FuncSpec::kPInf)
                j["p"] = "inf";
            else
                j["p"] = f.p();
            break;
        case FuncSpec::Kind::ScaledSquaredNorm:
            j["kind"] = "sq";
            j["alpha"] = f.alpha();
            break;
        case FuncSpec::Kind::Indicator:
            j["kind"] = "indicator";
            j["set"] = setspec_to_json(f.set());
            break;
        case FuncSpec::Kind::GaugeOf:
            j["kind"] = "gauge";
            j["set"] = setspec_to_json(f.gauge().shape());
            break;
        case FuncSpec::Kind::MaxAffine: {
            j["kind"] = "max_affine";
            Json pieces = Json::array();
            for (const auto& p : f.pieces()) {
                Json piece = Json::array();
                piece.push_back(vec_to_json(p.slope, f.dim()));
                piece.push_back(p.intercept);
                pieces.push_back(piece);
            }
            j["pieces"] = pieces;
            break;
        }
        case FuncSpec::Kind::Sum: {
            j["kind"] = "sum";
            Json terms = Json::array();
            for (const auto& t : f.terms()) terms.push_back(funcspec_to_json(t));
            j["terms"] = terms;
            break;
        }
        case FuncSpec::Kind::Shift:
            j["kind"] = "shift";
            j["inner"] = funcspec_to_json(f.inner());
            j["offset"] = vec_to_json(f.offset(), f.dim());
            break;
    }
    return j;
}

namespace {

struct AxisSpec {
    double lo, hi;
    int n;
};

AxisSpec parse_axis(const std::string& s) {
    AxisSpec ax{};
    std::size_t p1 = s.find(':');
    std::size_t p2 = s.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw ParseError("grid axis must look like lo:hi:n, got '" + s + "'");
    try {
        ax.lo = std::stod(s.substr(0, p1));
        ax.hi = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        ax.n = std::stoi(s.substr(p2 + 1));
    } catch (const std::exception&) {
        throw ParseError("bad grid axis '" + s + "'");
    }
    return ax;
}

}  // namespace

Grid grid_from_string(const std::string& s) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos) {
        AxisSpec a = parse_axis(s);
        return Grid::make_1d(a.lo, a.hi, a.n);
    }
    AxisSpec a = parse_axis(s.substr(0, comma));
    AxisSpec b = parse_axis(s.substr(comma + 1));
    return Grid::make_2d(a.lo, a.hi, a.n, b.lo, b.hi, b.n);
}

std::string grid_to_string(const Grid& g) {
    auto axis = [&](int a) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d", g.lo(a), g.hi(a), g.n(a));
        return std::string(buf);
    };
    if (g.dim() == 1) return axis(0);
    return axis(0) + "," + axis(1);
}

Json argmin_to_json(const Grid& grid, const ArgminSet& a) {
    Json j;
    j["x"] = vec_to_json(grid.point(a.x), grid.dim());
    Json mins = Json::array();
    for (auto k : a.minimizers) mins.push_back(vec_to_json(grid.point(k), grid.dim()));
    j["minimizers"] = mins;
    j["min_value"] = a.min_value;
    j["tol"] = a.tol;
    return j;
}

Json certificate_to_json(const Certificate& c, int dim) {
    Json j;
    j["point"] = vec_to_json(c.point, dim);
    j["candidate"] = vec_to_json(c.candidate, dim);
    j["epsilon"] = c.epsilon;
    j["radii"] = c.radii;
    j["violations"] = c.worst_violation;
    j["slack"] = c.eta_slack;
    j["verdict"] = c.pass ? "pass" : "fail";
    return j;
}

Json wellposed_to_json(const Grid& grid, const WellPosednessReport& r) {
    Json j;
    j["xbar"] = vec_to_json(grid.point(r.xbar), grid.dim());
    j["singleton"] = r.singleton;
    j["wbar"] = vec_to_json(grid.point(r.wbar), grid.dim());
    j["sequences"] = r.sequences_tested;
    j["max_terminal_distance"] = r.max_terminal_distance;
    j["step_max_distance"] = r.step_max_distance;
    if (r.ell) j["ell"] = *r.ell;
    if (r.m) j["m"] = *r.m;
    j["bound_ok"] = r.prop_bound_ok;
    return j;
}

}  // namespace infconv
