#pragma once

// Canonical JSON for certificates and sieve configuration.
//
// Keys are sorted, every integer is a decimal string, output is compact
// UTF-8 followed by a single LF. Identical certificates serialize to
// identical bytes.

#include "dioph/prover.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dioph {

struct MalformedCertificate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json certificate_to_json(const Certificate& cert);

/// Throws MalformedCertificate naming the first malformed field.
Certificate certificate_from_json(const nlohmann::json& j);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

/// Every field is optional; missing ones keep SieveConfig defaults.
/// Numbers may be JSON numbers or decimal strings.
SieveConfig sieve_config_from_json(const nlohmann::json& j);

}  // namespace dioph
