#pragma once

#include <string>

#include "json.hpp"

#include "infconv/envelope.hpp"
#include "infconv/funcspec.hpp"
#include "infconv/subdiff.hpp"

namespace infconv {

// Ordered JSON keeps key order stable so serialized artifacts are
// byte-reproducible.
using Json = nlohmann::ordered_json;

// Parsers reject unknown keys. Function specs that do not carry their own
// geometry (norms, squares) take the ambient dimension from `dim`.
SetSpec setspec_from_json(const Json& j);
Json setspec_to_json(const SetSpec& s);

FuncSpec funcspec_from_json(const Json& j, int dim);
Json funcspec_to_json(const FuncSpec& f);

GaugeSet gauge_from_json(const Json& j);

// Grid flag syntax: "lo:hi:n" or "lo:hi:n,lo:hi:n".
Grid grid_from_string(const std::string& s);
std::string grid_to_string(const Grid& g);

Json vec_to_json(Vec2 p, int dim);

Json argmin_to_json(const Grid& grid, const ArgminSet& a);
Json certificate_to_json(const Certificate& c, int dim);
Json wellposed_to_json(const Grid& grid, const WellPosednessReport& r);

}  // namespace infconv
