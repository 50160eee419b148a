#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sftlab/adic.hpp"
#include "sftlab/markov.hpp"

namespace sftlab {

struct ExperimentReport {
  std::vector<std::pair<long, double>> series;
  double limit_estimate = 0;
  std::optional<double> target;
  double max_abs_error_tail = 0;  // over the last quartile of the series
  std::uint64_t rng_seed = 0;
  bool truncated = false;
  std::vector<long> skipped;  // indices dropped (zero denominators etc.)
};

// Fills limit_estimate (tail-quartile mean) and max_abs_error_tail (against
// the target when present, else against the estimate).
void finalize_report(ExperimentReport& r);

struct ExperimentOptions {
  CountOptions count;
};

// Samples y from the measure and reports the exact ratios
// w_n(C, y) / w_n(y) for n = |C|..n_max, with target mu(C).
ExperimentReport ratio_limit_experiment(const TransitionMatrix& A, const MarkovSpec& measure,
                                        const Word& C, std::uint64_t seed, long n_max,
                                        const ExperimentOptions& opts = {});

// Binomial ratio C(n-m, y0-j0)/C(n, y0) on the full 2-shift; 0 when the
// bounds are violated.
Rational pascal_ratio_closed_form(long n, long m, const CountVector& y_counts,
                                  const CountVector& j_counts);

// Exact conditional distribution of the initial l-block given the Parikh
// vector of y[0..n) and the symbol y_n, next to the unconditioned cylinder
// measures. Requires an exact-mode spec.
struct DefinettiRow {
  Word block;
  Rational conditional;
  Rational unconditional;
};

struct DefinettiResult {
  CountVector counts;   // Parikh vector of the sampled prefix
  int next_symbol = 0;  // y_n
  std::vector<DefinettiRow> rows;
  ExperimentReport report;  // series: (block index, conditional probability)
};

DefinettiResult definetti_conditional_experiment(const TransitionMatrix& A,
                                                 const MarkovSpec& measure, int block_length,
                                                 long n, std::uint64_t seed,
                                                 const ExperimentOptions& opts = {});

// Q_{i,j}(s) = mu([i]_0 and { Parikh of x[0..m+1) = s } and [j]_m) / pbar(i),
// the path-sum of transition products from i to j with symbol counts s
// (s includes both endpoints; total(s) = m+1). Exact-mode spec required.
Rational q_value(const MarkovSpec& spec, int i, int j, const CountVector& s,
                 const ExperimentOptions& opts = {});

// All Q_{i,j}(s) at one level m, as rows (i, j, s) -> value.
struct QTableEntry {
  int i = 0, j = 0;
  CountVector s;
  Rational value;
};

std::vector<QTableEntry> q_table(const MarkovSpec& spec, long m,
                                 const ExperimentOptions& opts = {});

// Ratio series Q_{i', x_m}(counts_m - s1) / Q_{i'', x_m}(counts_m - s2) along
// a sampled x; the cylinder endpoint symbols i', i'' are the last symbols of
// the reverse-lex minimal allowed words with Parikh vectors s1, s2.
ExperimentReport amnesia_experiment(const MarkovSpec& spec, const CountVector& s1,
                                    const CountVector& s2, std::uint64_t seed, long m_max,
                                    const ExperimentOptions& opts = {});

// C(m, k) mod p by base-p digits; p must be prime.
long long binomial_mod_prime(long long m, long long k, long long p);

// Fractional parts {theta * w_m(y)} along a Bernoulli(alpha) sample, computed
// exactly from the rational theta. Gathers evidence only; asserts nothing.
struct WeakmixResult {
  ExperimentReport report;  // series: (m, fractional part)
  double min_tail_distance_to_zero = 0;  // min over last quartile of d(v, Z)
  double discrepancy = 0;                // star discrepancy of the emitted parts
};

WeakmixResult weakmix_exploration(const Rational& alpha, const Rational& theta, long m_max,
                                  std::uint64_t seed);

}  // namespace sftlab
