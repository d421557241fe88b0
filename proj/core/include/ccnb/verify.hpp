#pragma once

#include <string>
#include <vector>

namespace ccnb {

/// Outcome of re-deriving a census document from its positions alone.
/// schema_ok=false means the document is malformed; ok=false means it parsed
/// but some stored value disagrees with its recomputation.
struct VerifyReport {
    bool schema_ok = true;
    bool ok = true;
    std::vector<std::string> issues;
};

VerifyReport verify_census_json(const std::string& json_text);

} // namespace ccnb
