#include "swp/exact_oracles.hpp"

#include <vector>

#include "parallel.hpp"
#include "swp/errors.hpp"

namespace swp {

namespace {

struct BlockBest {
  std::vector<int> digits;  // owner + 1 per item
  double value = -1.0;
};

// Enumerates the assignments whose first item has digit `lead`, in
// lexicographic order, keeping the first maximum.
BlockBest search_block(const Instance& inst, int lead) {
  const int m = inst.agents();
  const int n = inst.items();
  std::vector<int> digits(n, 0);
  digits[0] = lead;
  std::vector<ItemSet> parts(m);
  std::vector<int> load(m, 0);
  BlockBest best;
  auto place = [&](int j, int d, int sign) {
    if (d == 0) return;
    if (sign > 0) {
      parts[d - 1].insert(j);
    } else {
      parts[d - 1].erase(j);
    }
    load[d - 1] += sign;
  };
  for (int j = 0; j < n; ++j) place(j, digits[j], +1);
  while (true) {
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) feasible = load[i] <= inst.quota(i);
    if (feasible) {
      double value = 0.0;
      for (int i = 0; i < m; ++i) {
        value += inst.valuation(i).evaluate_unchecked(parts[i]);
      }
      if (value > best.value) {
        best.value = value;
        best.digits = digits;
      }
    }
    // Odometer step over items n-1 .. 1 (item 0 is fixed by the block).
    int j = n - 1;
    for (; j >= 1; --j) {
      place(j, digits[j], -1);
      if (digits[j] < m) {
        ++digits[j];
        place(j, digits[j], +1);
        break;
      }
      digits[j] = 0;
    }
    if (j < 1) break;
  }
  return best;
}

}  // namespace

OptCertificate brute_force_opt(const Instance& inst, int threads) {
  const int m = inst.agents();
  const int n = inst.items();
  std::uint64_t space = 1;
  for (int j = 0; j < n; ++j) {
    space *= static_cast<std::uint64_t>(m + 1);
    if (space > kBruteForceLimit) {
      throw SizeError("brute force needs (M+1)^N <= 1e7");
    }
  }
  std::vector<BlockBest> blocks(m + 1);
  detail::parallel_for(blocks.size(), threads, [&](std::size_t lead) {
    blocks[lead] = search_block(inst, static_cast<int>(lead));
  });
  // Blocks are in lexicographic order, so the first maximum wins ties.
  const BlockBest* best = &blocks[0];
  for (const auto& b : blocks) {
    if (b.value > best->value) best = &b;
  }
  OptCertificate cert;
  cert.allocation = Allocation(n);
  for (int j = 0; j < n; ++j) {
    if (best->digits[j] > 0) cert.allocation.assign(j, best->digits[j] - 1);
  }
  cert.value = welfare(cert.allocation, inst);
  cert.search_space = space;
  return cert;
}

Allocation greedy_half(const Instance& inst) {
  const int m = inst.agents();
  const int n = inst.items();
  Allocation a(n);
  std::vector<ItemSet> parts(m);
  std::vector<double> current(m, 0.0);
  while (true) {
    int best_i = -1;
    int best_j = -1;
    double best_gain = 0.0;
    for (int i = 0; i < m; ++i) {
      if (parts[i].size() >= inst.quota(i)) continue;
      for (int j = 0; j < n; ++j) {
        if (a.owner(j) != kUnassigned) continue;
        const double gain =
            inst.valuation(i).evaluate_unchecked(parts[i].with(j)) - current[i];
        if (gain > best_gain) {
          best_gain = gain;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0) break;
    a.assign(best_j, best_i);
    parts[best_i].insert(best_j);
    current[best_i] = inst.valuation(best_i).evaluate_unchecked(parts[best_i]);
  }
  return a;
}

}  // namespace swp
