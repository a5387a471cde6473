#pragma once

#include <string>
#include <string_view>

#include "spherule/arrangement.hpp"

namespace spherule {

/// Text format, one declaration per line, '#' starts a comment:
///
///   n: 1
///   m: 2
///   sphere: center=0 radius_sq=4
///   sphere: alpha=-3,5
///
/// `center` lists n rationals and `radius_sq` one; `alpha` lists alpha_{j1..jn} then alpha_{j0}.
Arrangement parse_arrangement(std::string_view text);

/// Canonical alpha-style serialization; parse(serialize(a)) reproduces a exactly.
std::string serialize_arrangement(const Arrangement& arr);

Arrangement load_arrangement(const std::string& path);

}  // namespace spherule
