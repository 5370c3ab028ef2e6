#pragma once

#include <vector>

#include "swp/item_set.hpp"
#include "swp/valuations.hpp"

namespace swp {

inline constexpr int kUnassigned = -1;

// Per-item owner: assignment()[j] is the agent holding item j, or
// kUnassigned. An item can never belong to two agents, so the partition
// matroid constraint holds by construction; only quotas need checking.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(int items) : owner_(items, kUnassigned) {}
  explicit Allocation(std::vector<int> owner) : owner_(std::move(owner)) {}

  // Agent `agent` holds exactly `bundle`; everyone else holds nothing.
  static Allocation single_agent(int items, int agent, ItemSet bundle);

  int items() const { return static_cast<int>(owner_.size()); }
  int owner(int item) const { return owner_[item]; }
  void assign(int item, int agent) { owner_[item] = agent; }
  void unassign(int item) { owner_[item] = kUnassigned; }
  const std::vector<int>& assignment() const { return owner_; }
  int assigned_count() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;

 private:
  std::vector<int> owner_;
};

// True iff the assignment has length N, every owner is a valid agent or
// unassigned, and every agent respects its quota.
bool is_feasible(const Allocation& a, const Instance& inst);

// s_i = {j : owner(j) == i} for i in [0, agents). Owners outside that range
// are ignored.
std::vector<ItemSet> bundles(const Allocation& a, int agents);

// f(S) = sum_i w_i(s_i). Throws InvalidInput for infeasible allocations.
double welfare(const Allocation& a, const Instance& inst);

}  // namespace swp
