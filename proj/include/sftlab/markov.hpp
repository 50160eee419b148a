#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

enum class MeasureTag { Stationary, OneSidedUniform, General };

// Markov measure data: stochastic matrix compatible with A plus an initial
// distribution, carried either as exact rationals or as doubles. The two
// arithmetic modes never mix implicitly; convert explicitly with to_float.
struct MarkovSpec {
  TransitionMatrix A;
  NumMode mode = NumMode::Exact;
  MeasureTag tag = MeasureTag::General;
  std::vector<std::vector<Rational>> P_q;
  std::vector<Rational> initial_q;
  std::vector<std::vector<double>> P_f;
  std::vector<double> initial_f;

  double p(int i, int j) const {
    return mode == NumMode::Exact ? to_double(P_q[i][j]) : P_f[i][j];
  }
  double init(int i) const {
    return mode == NumMode::Exact ? to_double(initial_q[i]) : initial_f[i];
  }
};

std::vector<Rational> stationary_vector_exact(const TransitionMatrix& A,
                                              const std::vector<std::vector<Rational>>& P);
std::vector<double> stationary_vector_float(const TransitionMatrix& A,
                                            const std::vector<std::vector<double>>& P);

// Validates compatibility with A (P(i,j) > 0 iff A(i,j) = 1) and row sums.
// Stationary specs get p-bar computed (or verified when supplied);
// OneSidedUniform uses the uniform initial distribution.
MarkovSpec make_markov_exact(const TransitionMatrix& A,
                             std::vector<std::vector<Rational>> P,
                             std::optional<std::vector<Rational>> initial,
                             MeasureTag tag);
MarkovSpec make_markov_float(const TransitionMatrix& A,
                             std::vector<std::vector<double>> P,
                             std::optional<std::vector<double>> initial, MeasureTag tag);

// Bernoulli measure on the full n-shift (a stationary product measure).
MarkovSpec bernoulli_exact(const std::vector<Rational>& probs);
MarkovSpec bernoulli_float(const std::vector<double>& probs);

MarkovSpec to_float(const MarkovSpec& spec);

struct MeasureValue {
  NumMode mode = NumMode::Exact;
  Rational q;
  double f = 0;

  double as_double() const { return mode == NumMode::Exact ? to_double(q) : f; }
};

// mu(C) for a cylinder C = [v_0..v_l] at C.start_position. Stationary specs
// are position-independent; the other tags require position 0.
MeasureValue cylinder_measure(const MarkovSpec& spec, const Word& C);

// Finite-range potential: a table on the allowed r-blocks.
struct Potential {
  TransitionMatrix A;
  int range = 1;
  NumMode mode = NumMode::Float;
  std::map<std::vector<int>, Rational> table_q;  // valid in exact mode
  std::map<std::vector<int>, double> table_f;    // always populated

  double value_f(const std::vector<int>& block) const;
  Rational value_q(const std::vector<int>& block) const;
};

Potential make_potential_exact(const TransitionMatrix& A, int range,
                               std::map<std::vector<int>, Rational> table);
Potential make_potential_float(const TransitionMatrix& A, int range,
                               std::map<std::vector<int>, double> table);

Potential constant_potential(const TransitionMatrix& A, double value);
// phi(x) = log P(x_0, x_1) of a compatible stochastic matrix (float mode).
Potential log_p_potential(const MarkovSpec& spec);
// range-1 potential viewed as a function of (x_0, x_1)
Potential lift_to_range2(const Potential& phi);

// omega_0..omega_r, with omega_k the max |phi(u) - phi(v)| over allowed
// r-block pairs agreeing on their first k coordinates.
std::vector<double> variation_sequence(const Potential& phi);

// log rho(x, x2) = sum_{k>=0} (phi(sigma^k x) - phi(sigma^k x2)), which is a
// finite sum for tail-equivalent points. Exact when the table is rational;
// in float mode each side is summed in sorted order so that permuted windows
// cancel exactly.
struct LogValue {
  double approx = 0;
  std::optional<Rational> exact;
};

LogValue radon_nikodym(const Potential& phi, const SequencePoint& x,
                       const SequencePoint& x2);

struct PerronData {
  double lambda = 0;
  std::vector<double> right;
  std::vector<double> left;   // normalized so that left . right = 1
  double residual = 0;
};

struct PerronOptions {
  long max_iterations = 1'000'000;
  double tolerance = 1e-12;
};

// Power iteration from the all-ones vector; NoConvergence past the budget.
PerronData perron(const std::vector<std::vector<double>>& B,
                  const PerronOptions& opts = {});

// Stationary Markov Gibbs measure of a potential of range <= 2:
// B(i,j) = A(i,j) exp(phi(i,j)), P(i,j) = B(i,j) r(j) / (lambda r(i)),
// p-bar(i) proportional to l(i) r(i).
MarkovSpec gibbs_from_potential(const TransitionMatrix& A, const Potential& phi,
                                const PerronOptions& opts = {});

}  // namespace sftlab
