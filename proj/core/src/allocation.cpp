#include "swp/allocation.hpp"

#include <algorithm>

#include "swp/errors.hpp"

namespace swp {

Allocation Allocation::single_agent(int items, int agent, ItemSet bundle) {
  Allocation a(items);
  for (int j : bundle.items()) a.assign(j, agent);
  return a;
}

int Allocation::assigned_count() const {
  return static_cast<int>(
      std::count_if(owner_.begin(), owner_.end(),
                    [](int o) { return o != kUnassigned; }));
}

bool is_feasible(const Allocation& a, const Instance& inst) {
  if (a.items() != inst.items()) return false;
  std::vector<int> load(inst.agents(), 0);
  for (int owner : a.assignment()) {
    if (owner == kUnassigned) continue;
    if (owner < 0 || owner >= inst.agents()) return false;
    if (++load[owner] > inst.quota(owner)) return false;
  }
  return true;
}

std::vector<ItemSet> bundles(const Allocation& a, int agents) {
  std::vector<ItemSet> out(agents);
  for (int j = 0; j < a.items(); ++j) {
    const int owner = a.owner(j);
    if (owner >= 0 && owner < agents) out[owner].insert(j);
  }
  return out;
}

double welfare(const Allocation& a, const Instance& inst) {
  if (!is_feasible(a, inst)) {
    throw InvalidInput("welfare of an infeasible allocation");
  }
  const auto parts = bundles(a, inst.agents());
  double total = 0.0;
  for (int i = 0; i < inst.agents(); ++i) {
    total += inst.valuation(i).evaluate_unchecked(parts[i]);
  }
  return total;
}

}  // namespace swp
