#pragma once

#include <cstdint>

#include "swp/allocation.hpp"
#include "swp/valuations.hpp"

namespace swp {

// Largest number of assignments brute_force_opt will enumerate.
inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

struct OptCertificate {
  Allocation allocation;
  double value = 0.0;
  // Number of assignments enumerated, feasible or not: (M+1)^N.
  std::uint64_t search_space = 0;
};

// Exhaustive search over all (M+1)^N owner vectors, skipping those that
// break a quota. Ties go to the lexicographically smallest owner vector,
// with unassigned ordered before agent 0. Throws SizeError when (M+1)^N
// exceeds kBruteForceLimit.
OptCertificate brute_force_opt(const Instance& inst, int threads = 1);

// Repeatedly adds the feasible (agent, item) pair with the largest exact
// marginal gain until no pair has a positive gain. Ties go to the smallest
// (agent, item) pair.
Allocation greedy_half(const Instance& inst);

}  // namespace swp
