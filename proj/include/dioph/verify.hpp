#pragma once

// Independent certificate checker. Shares data types with the prover but no
// computation beyond the exact primitives in arith.hpp.

#include "dioph/prover.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dioph {

enum class ItemStatus { Pass, Fail, Assumed };

std::string_view to_string(ItemStatus status);

struct ReportItem {
  std::string item;
  ItemStatus status = ItemStatus::Pass;
  std::string detail;
};

struct VerificationReport {
  CertificateStatus claimed_status = CertificateStatus::Partial;
  std::vector<ReportItem> items;
  std::vector<ResidueClass> surviving_classes;

  bool passed() const { return count(ItemStatus::Fail) == 0; }
  bool has_assumed() const { return count(ItemStatus::Assumed) > 0; }
  std::size_t count(ItemStatus s) const;
};

struct VerifyLimits {
  std::uint64_t max_coverage_modulus = 10'000'000;
  std::uint64_t max_orbit = 10'000'000;
};

/// Re-checks coverage, every witness, every explicit exponent and every gate
/// hypothesis. Gate theorems themselves are reported ASSUMED, never PASS.
VerificationReport verify_certificate(const Certificate& cert, const VerifyLimits& limits = {});

/// One line per item: "PASS|FAIL|ASSUMED <item>: <detail>", then a summary.
std::string format_report(const VerificationReport& report);

}  // namespace dioph
