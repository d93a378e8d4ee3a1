#pragma once

#include "dappell/identities.hpp"

namespace dappell {

/// JSON schema:
/// {suite, seed, regime, families: [{id, pass, fail, skip, worst_residual}], wall_ms}
std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

std::string report_to_csv(const Report& r);
std::string report_to_plain(const Report& r);

} // namespace dappell
