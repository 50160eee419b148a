#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

// Level-m weight query: number of allowed length-m words with the given
// Parikh vector whose last symbol may transition into next_symbol.
struct WeightQuery {
  long m = 0;
  CountVector parikh;
  int next_symbol = 0;
};

// Exact multinomial coefficient: the weight of the full-shift path space.
BigInt pascal_weight(const CountVector& counts);

BigInt sft_weight(const TransitionMatrix& A, const WeightQuery& q,
                  const CountOptions& opts = {});

// Same count restricted to words beginning with the cylinder C (at position 0).
BigInt sft_weight_in_cylinder(const TransitionMatrix& A, const WeightQuery& q,
                              const Word& C, const CountOptions& opts = {});

// Whole weight series along a point's prefix chain in one layered sweep:
// total[n] = w_n(y) and (when a cylinder is given) in_cylinder[n] = w_n(C,y)
// for n = 0..n_max. When the layer state count passes the cap the series is
// cut short and `truncated` is set.
struct WeightSeries {
  std::vector<BigInt> total;
  std::vector<BigInt> in_cylinder;
  bool truncated = false;
  long computed_up_to = -1;
};

WeightSeries weight_series(const TransitionMatrix& A, const std::vector<int>& symbols,
                           long n_max, const std::optional<Word>& cylinder = {},
                           const CountOptions& opts = {});

struct AdicOptions {
  long horizon = 64;              // successor search levels before giving up
  CountOptions count;
};

// Successor in the reverse-lex order within the tail class. nullopt means the
// point is certified maximal; HorizonExceeded means neither a successor nor a
// maximality certificate was found within the horizon.
//
// The certificate covers points with an eventually constant tail c^inf (which
// includes every maximal point of a full shift). Other eventually periodic
// tails fall back to the level scan.
std::optional<SequencePoint> successor(const TransitionMatrix& A, const SequencePoint& x,
                                       const AdicOptions& opts = {});

// x, succ(x), ..., up to `steps` applications; stops early at a maximal point.
std::vector<SequencePoint> orbit(const TransitionMatrix& A, const SequencePoint& x,
                                 long steps, const AdicOptions& opts = {});

// Golden-mean recoding: each "10" becomes b, each remaining "0" becomes a.
// A trailing unpaired "1" is reported rather than silently dropped.
struct PsiRecoded {
  std::string letters;      // over {a, b}
  bool trailing_one = false;
};

PsiRecoded psi_recode_golden(const Word& x);

// Inverse coding of a letter word: a -> "0", b -> "10".
Word psi_decode_golden(const std::string& letters);

}  // namespace sftlab
