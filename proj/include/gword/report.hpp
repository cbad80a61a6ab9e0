#pragma once

// JSON encodings shared by the CLI reports. Rationals are always strings so
// exact values never pass through a double.

#include <string>
#include <string_view>

#include <json.hpp>

#include "gword/certify.hpp"
#include "gword/projections.hpp"
#include "gword/reduction.hpp"
#include "gword/search.hpp"

namespace gword {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, lowercase hex, 16 digits.
std::string fnv1a_hex(std::string_view bytes);

Json to_json(const ExponentSequence& s);
Json to_json(const Spectrum& s);
Json to_json(const RationalPolynomial& p);
Json to_json(const Certificate& c);
Json to_json(const Witness& w);
Json to_json(const ReducedClass& r);
Json to_json(const Classification& c);
Json to_json(const TwoProjectionForm& f);

}  // namespace gword
