#pragma once

#include <vector>

#include "swp/allocation.hpp"
#include "swp/item_set.hpp"
#include "swp/oracle.hpp"
#include "swp/random.hpp"
#include "swp/valuations.hpp"

namespace swp {

// Absolute tolerance on the column sums of the partition-matroid polytope.
inline constexpr double kPolytopeTol = 1e-9;

// A point y in [0,1]^{M x N}; y(i, j) is the fraction of item j given to
// agent i. Writes are clipped to [0, 1].
class FractionalPoint {
 public:
  FractionalPoint(int agents, int items);
  static FractionalPoint from_allocation(const Allocation& a, int agents);

  int agents() const { return agents_; }
  int items() const { return items_; }

  double operator()(int agent, int item) const {
    return y_[static_cast<std::size_t>(agent) * items_ + item];
  }
  void set(int agent, int item, double value);
  void add(int agent, int item, double delta) {
    set(agent, item, (*this)(agent, item) + delta);
  }

  double column_sum(int item) const;
  double row_sum(int agent) const;
  double max_column_sum() const;
  // Every column sums to at most `bound` (+ tol).
  bool in_polytope(double bound = 1.0, double tol = kPolytopeTol) const;
  const std::vector<double>& values() const { return y_; }

  friend bool operator==(const FractionalPoint&, const FractionalPoint&) = default;

 private:
  int agents_;
  int items_;
  std::vector<double> y_;
};

// Monte-Carlo mean with its standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Estimated expected marginal gain of item j for agent i at y.
struct MarginalEstimate {
  double mean = 0.0;
  double variance = 0.0;  // sample variance of the paired differences
  int samples = 0;
  int agent = 0;
  int item = 0;
};

// R_i includes each item j independently with probability y(i, j); the M
// sets are drawn independently of one another.
std::vector<ItemSet> sample_random_sets(const FractionalPoint& y, Rng& rng);
ItemSet sample_random_set(const FractionalPoint& y, int agent, Rng& rng);

// Unbiased Monte-Carlo estimate of F(y) = sum_i E[w_i(R_i)] from Z draws.
double estimate_F(const FractionalPoint& y, const Instance& inst, int samples,
                  Rng& rng);
Estimate estimate_F_with_error(const FractionalPoint& y, const Instance& inst,
                               int samples, Rng& rng);

// F(y) by enumerating all 2^N subsets per agent. Requires M * N <= 20.
double exact_F(const FractionalPoint& y, const Instance& inst);

// Mean of Z paired differences w_i(R + j) - w_i(R), using the same random
// set R for both terms of a pair. Each sample costs two oracle queries.
MarginalEstimate estimate_marginal(const FractionalPoint& y, int agent,
                                   int item, int samples, Rng& rng,
                                   ValueOracle& oracle);
MarginalEstimate estimate_marginal(const FractionalPoint& y, int agent,
                                   int item, const Instance& inst, int samples,
                                   Rng& rng);

}  // namespace swp
