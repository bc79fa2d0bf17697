#pragma once

#include "slicevol/starbody.hpp"

#include <filesystem>
#include <string>

namespace slicevol {

/// Parses a JSON body spec:
///
///   {"d": 2, "n": 2, "label": "unit-ball", "body": {"kind": "ball", "r": 1.0}}
///
/// Recognized kinds: ball, ellipsoid, polydisc, lp_ball, linear_image,
/// intersection, union, radial_perturbation. The parsed body is validated
/// by sampling; known_circular flags follow the construction rules.
/// Throws ParseError (with the offending field path) or ValidationError.
StarBody parse_body_spec(const std::string& json_text);

StarBody parse_body_spec_file(const std::filesystem::path& path);

/// Inverse of parse_body_spec for file-representable bodies. Throws
/// std::invalid_argument for custom or circularized bodies, which have no
/// file form.
std::string serialize_body_spec(const StarBody& body);

} // namespace slicevol
