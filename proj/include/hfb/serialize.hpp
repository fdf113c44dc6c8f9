#pragma once

#include "hfb/graded_module.hpp"
#include "hfb/graded_root.hpp"
#include "hfb/iota_complex.hpp"
#include "hfb/knots.hpp"
#include "hfb/plumbing.hpp"

#include <json.hpp>

namespace hfb {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// [numerator, denominator]; InvalidInputError outside 64-bit range.
Json rational_to_json(const Rational &x);
Rational rational_from_json(const Json &j);

/// {"vertices":[{"id","weight"}],"edges":[[id,id]],"automorphism":[[id,id]]}.
/// The automorphism is also accepted as an object {"id": id}. Bad documents
/// throw ParseError, bad trees InvalidInputError.
Json plumbing_to_json(const PlumbingTree &t);
PlumbingTree plumbing_from_json(const Json &j);

/// {"vertices":[{"id","level","weight","rep"}],"successor":{},"leaves":[],
/// "involution":{}} plus the base weight and exactness flag for reloading.
Json root_to_json(const GradedRoot &root);
GradedRoot root_from_json(const Json &j);

/// {"towers":[[n,d]...],"torsion":[{"degree":[n,d],"length":l}...]}.
Json module_to_json(const GradedUModule &m);
Json torsion_to_json(const GradedUModule &m);

/// Generators with gradings; d and iota as sparse (row, col, U-exponent) triples.
Json complex_to_json(const UComplex &c);

/// Versioned package in the HF^- convention, with the d-normalised deltas
/// under "d_normalized".
Json package_to_json(const InvariantPackage &p);

} // namespace hfb
