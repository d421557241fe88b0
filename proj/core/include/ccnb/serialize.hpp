#pragma once

#include <string>

#include "ccnb/census.hpp"
#include "ccnb/morse_bounds.hpp"

namespace ccnb {

// All serialization is deterministic: object keys are sorted and doubles are
// written in shortest round-trip decimal form, so equal results produce
// byte-identical documents. Body labels are 1-based in every output format.

/// {"masses":[...], "positions":[[x,y],...]}
std::string to_json(const Configuration& c, int indent = -1);
Configuration configuration_from_json(const std::string& text);

std::string to_json(const CensusResult& r, int indent = 2);
std::string to_csv(const CensusResult& r);
std::string summary_text(const CensusResult& r);

std::string to_text(const BoundTable& t);
std::string to_json(const BoundTable& t, int indent = 2);
std::string to_csv(const BoundTable& t);

/// 17-significant-digit formatting used in the CSV outputs.
std::string format_double(double v);

} // namespace ccnb
