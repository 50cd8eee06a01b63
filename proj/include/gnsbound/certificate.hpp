#pragma once

#include <string>

#include "gnsbound/optimizer.hpp"

namespace gnsbound {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Flat JSON document: every BoundCertificate field except sample_values.
/// Reciprocals are 17-significant-digit decimal strings. Output is
/// byte-identical for identical certificates (sorted keys, no timestamp).
std::string certificate_to_json(const BoundCertificate& cert);

/// Throws FormatError on malformed input, OutOfRange on bad exponents.
BoundCertificate certificate_from_json(const std::string& text);

/// Recomputes θ, the margins and the objective at the stored point. True when
/// the point is feasible and the value matches to `rel_tol`.
bool certificate_consistent(const BoundCertificate& cert, double rel_tol = 1e-12);

/// 17-significant-digit decimal.
std::string decimal17(double x);

}  // namespace gnsbound
