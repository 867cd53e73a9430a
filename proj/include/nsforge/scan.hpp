#pragma once

// Bounded, tau-free enumeration of candidate subvariety classes.

#include "nsforge/exterior.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nsforge {

struct EnumerationSpec {
  int n = 2;
  int u = 1;
  BigInt d = 1;
  int bound = 1;
  bool require_idempotent = false;
  std::optional<DivisorList> require_type;
  bool prefilters = true;    // trace and incremental rank pruning
  bool allow_large = false;  // lift the n <= 4, bound <= 3 limit
};

struct EnumerationOptions {
  int jobs = 1;
  std::uint64_t budget = 0;  // 0 = default_budget()
};

/// Forms in canonical lexicographic order. Throws RangeError, BudgetExceeded.
std::vector<TwoForm> enumerate_classes(const EnumerationSpec& spec, const EnumerationOptions& opts = {});

/// Same (u, d, type). Propagates analyze errors.
bool orbit_equivalent(const TwoForm& eta, const TwoForm& omega);

}  // namespace nsforge
