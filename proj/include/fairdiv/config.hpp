#pragma once

namespace fairdiv {

// Runtime self-verification of algorithm contracts (market invariants,
// adjusted-winner postconditions). On by default; benchmarks may compile with
// FAIRDIV_DISABLE_INVARIANT_CHECKS.
#ifndef FAIRDIV_DISABLE_INVARIANT_CHECKS
inline constexpr bool kRuntimeChecks = true;
#else
inline constexpr bool kRuntimeChecks = false;
#endif

}  // namespace fairdiv
