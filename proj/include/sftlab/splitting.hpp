#pragma once

#include <vector>

#include "sftlab/numeric.hpp"

namespace sftlab {

enum class IntervalSide { Initial, Left, Right };

struct SplitConfig {
  Rational alpha = Rational(1, 2);
  bool left_right_dependent = false;
  Rational alpha_left = Rational(1, 2);   // used by intervals tagged Left (and Initial)
  Rational alpha_right = Rational(1, 2);  // used by intervals tagged Right
};

// Division points of [0,1] plus a provenance tag per interval. Exact rational
// arithmetic; lengths always sum to 1.
struct SplitState {
  SplitConfig config;
  std::vector<Rational> points;            // strictly increasing, in (0,1)
  std::vector<IntervalSide> provenance;    // size points.size() + 1
};

SplitState make_split_state(const SplitConfig& config);

// Split the longest interval (leftmost on ties) in proportion alpha : 1-alpha,
// with alpha chosen by the interval's provenance tag in the dependent variant.
SplitState split_step(const SplitState& s);

// sup over [0,t) of |empirical fraction - t| for sorted points in (0,1).
Rational star_discrepancy(const std::vector<Rational>& sorted_points);
double star_discrepancy_double(const std::vector<double>& sorted_points);

struct SplitRun {
  SplitState state;
  Rational discrepancy;
};

// Heap-based engine equivalent to iterating split_step `steps` times.
SplitRun run_and_discrepancy(const SplitConfig& config, long steps);

// Double-precision engine for point counts where exact arithmetic is too slow.
struct SplitRunFloat {
  std::vector<double> points;
  double discrepancy = 0;
};

SplitRunFloat run_and_discrepancy_float(const SplitConfig& config, long steps);

}  // namespace sftlab
