#include "swp/multilinear.hpp"

#include <algorithm>
#include <cmath>

#include "swp/errors.hpp"

namespace swp {

FractionalPoint::FractionalPoint(int agents, int items)
    : agents_(agents), items_(items) {
  if (agents < 1 || items < 1 || items > kMaxItems) {
    throw InvalidInput("fractional point needs M >= 1 and N in [1, 64]");
  }
  y_.assign(static_cast<std::size_t>(agents) * items, 0.0);
}

FractionalPoint FractionalPoint::from_allocation(const Allocation& a,
                                                 int agents) {
  FractionalPoint y(agents, a.items());
  for (int j = 0; j < a.items(); ++j) {
    const int owner = a.owner(j);
    if (owner != kUnassigned) {
      if (owner < 0 || owner >= agents) {
        throw InvalidInput("allocation owner out of range");
      }
      y.set(owner, j, 1.0);
    }
  }
  return y;
}

void FractionalPoint::set(int agent, int item, double value) {
  y_[static_cast<std::size_t>(agent) * items_ + item] =
      std::clamp(value, 0.0, 1.0);
}

double FractionalPoint::column_sum(int item) const {
  double s = 0.0;
  for (int i = 0; i < agents_; ++i) s += (*this)(i, item);
  return s;
}

double FractionalPoint::row_sum(int agent) const {
  double s = 0.0;
  for (int j = 0; j < items_; ++j) s += (*this)(agent, j);
  return s;
}

double FractionalPoint::max_column_sum() const {
  double best = 0.0;
  for (int j = 0; j < items_; ++j) best = std::max(best, column_sum(j));
  return best;
}

bool FractionalPoint::in_polytope(double bound, double tol) const {
  return max_column_sum() <= bound + tol;
}

ItemSet sample_random_set(const FractionalPoint& y, int agent, Rng& rng) {
  ItemSet r;
  for (int j = 0; j < y.items(); ++j) {
    // Draw for every item, even at 0 or 1, so the stream position does not
    // depend on y.
    if (bernoulli(rng, y(agent, j))) r.insert(j);
  }
  return r;
}

std::vector<ItemSet> sample_random_sets(const FractionalPoint& y, Rng& rng) {
  std::vector<ItemSet> sets(y.agents());
  for (int i = 0; i < y.agents(); ++i) sets[i] = sample_random_set(y, i, rng);
  return sets;
}

namespace {

void check_shape(const FractionalPoint& y, const Instance& inst) {
  if (y.agents() != inst.agents() || y.items() != inst.items()) {
    throw InvalidInput("fractional point shape does not match instance");
  }
}

// Welford's update; a constant sample stream gives its value and zero
// variance exactly.
struct RunningMoments {
  int count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
};

}  // namespace

Estimate estimate_F_with_error(const FractionalPoint& y, const Instance& inst,
                               int samples, Rng& rng) {
  check_shape(y, inst);
  if (samples < 1) throw InvalidInput("sample count must be >= 1");
  RunningMoments acc;
  for (int z = 0; z < samples; ++z) {
    double value = 0.0;
    for (int i = 0; i < inst.agents(); ++i) {
      value += inst.valuation(i).evaluate_unchecked(sample_random_set(y, i, rng));
    }
    acc.add(value);
  }
  Estimate e;
  e.samples = samples;
  e.mean = acc.mean;
  e.std_error = std::sqrt(acc.variance() / samples);
  return e;
}

double estimate_F(const FractionalPoint& y, const Instance& inst, int samples,
                  Rng& rng) {
  return estimate_F_with_error(y, inst, samples, rng).mean;
}

double exact_F(const FractionalPoint& y, const Instance& inst) {
  check_shape(y, inst);
  if (inst.agents() * inst.items() > 20) {
    throw SizeError("exact_F enumeration needs M * N <= 20");
  }
  const int n = inst.items();
  const std::uint64_t count = std::uint64_t{1} << n;
  double total = 0.0;
  for (int i = 0; i < inst.agents(); ++i) {
    const Valuation& w = inst.valuation(i);
    for (std::uint64_t s = 0; s < count; ++s) {
      double p = 1.0;
      for (int j = 0; j < n && p != 0.0; ++j) {
        p *= ((s >> j) & 1U) ? y(i, j) : 1.0 - y(i, j);
      }
      if (p != 0.0) total += p * w.evaluate_unchecked(ItemSet(s));
    }
  }
  return total;
}

MarginalEstimate estimate_marginal(const FractionalPoint& y, int agent,
                                   int item, int samples, Rng& rng,
                                   ValueOracle& oracle) {
  check_shape(y, oracle.instance());
  if (samples < 1) throw InvalidInput("sample count must be >= 1");
  if (agent < 0 || agent >= y.agents() || item < 0 || item >= y.items()) {
    throw InvalidInput("marginal index out of range");
  }
  RunningMoments acc;
  for (int z = 0; z < samples; ++z) {
    const ItemSet r = sample_random_set(y, agent, rng);
    const double with = oracle.bundle_value(agent, r.with(item), rng);
    const double without = oracle.bundle_value(agent, r, rng);
    acc.add(with - without);
  }
  MarginalEstimate m;
  m.agent = agent;
  m.item = item;
  m.samples = samples;
  m.mean = acc.mean;
  m.variance = acc.variance();
  return m;
}

MarginalEstimate estimate_marginal(const FractionalPoint& y, int agent,
                                   int item, const Instance& inst, int samples,
                                   Rng& rng) {
  ExactValueOracle oracle(inst);
  return estimate_marginal(y, agent, item, samples, rng, oracle);
}

}  // namespace swp
