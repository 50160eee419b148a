#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sftlab/errors.hpp"
#include "sftlab/numeric.hpp"

namespace sftlab {

using CountVector = std::vector<long long>;

long long cv_total(const CountVector& c);

// 0/1 transition matrix with computed period / irreducibility metadata.
// Reducible or periodic matrices are flagged, not rejected; a matrix with an
// all-zero row or column is rejected (no symbol renumbering is attempted).
struct TransitionMatrix {
  int n = 0;
  std::vector<std::vector<int>> entries;
  int period = 1;
  bool irreducible = true;

  int operator()(int i, int j) const { return entries[i][j]; }
  bool aperiodic() const { return period == 1; }
};

TransitionMatrix validate_matrix(const std::vector<std::vector<int>>& entries);

TransitionMatrix full_shift(int n);
TransitionMatrix golden_mean();

// A finite word over 0..n-1, optionally anchored at a cylinder position.
struct Word {
  std::vector<int> symbols;
  long start_position = 0;

  Word() = default;
  Word(std::vector<int> s, long pos = 0) : symbols(std::move(s)), start_position(pos) {}

  size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  int operator[](size_t i) const { return symbols[i]; }
  int back() const { return symbols.back(); }

  bool operator==(const Word& o) const { return symbols == o.symbols; }
};

// Digit-string form for n <= 10 ("0100"); parse is the inverse.
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s, long pos = 0);

bool is_allowed(const TransitionMatrix& A, const Word& w);

CountVector parikh_vector(const Word& w, int n);

// The reverse-lexicographic order: compare at the largest differing index,
// using the natural order on symbols. Shared by the adic successor.
bool reverse_lex_less(const std::vector<int>& a, const std::vector<int>& b);

struct WordConstraints {
  std::optional<CountVector> parikh;  // symbol counts, must sum to m
  std::optional<int> start_symbol;    // w_0 = s
  std::optional<int> end_symbol;      // w_{m-1} = s
  std::optional<int> next_symbol;     // A(w_{m-1}, s) = 1
  std::optional<int> prev_symbol;     // A(s, w_0) = 1
};

struct CountOptions {
  // Parikh-constrained DP memo is (last symbol) x (Parikh vector); refuse
  // rather than degrade once the state count passes this cap.
  std::uint64_t state_cap = 100'000'000;
};

// Exact number of allowed words of length m meeting all constraints.
// Inconsistent constraints give 0; an oversized DP throws EnumerationTooLarge.
BigInt count_words(const TransitionMatrix& A, long m, const WordConstraints& c = {},
                   const CountOptions& opts = {});

// All words meeting the constraints in ascending reverse-lex order.
std::vector<Word> enumerate_words(const TransitionMatrix& A, long m,
                                  const WordConstraints& c = {},
                                  std::uint64_t cap = 2'000'000);

// Least constraint-satisfying word strictly greater than w in reverse-lex
// order, if any. Same class geometry as enumerate_words but polynomial cost,
// so the adic successor works at levels whose classes are too big to list.
std::optional<Word> next_word_in_class(const TransitionMatrix& A, const Word& w,
                                       const WordConstraints& c);

// Reverse-lex minimum of the class, if nonempty.
std::optional<Word> min_word_in_class(const TransitionMatrix& A, long m,
                                      const WordConstraints& c);

// Higher-block presentation over allowed (l+1)-blocks, with coding maps.
struct BlockCoding {
  int l = 1;
  TransitionMatrix block_matrix;
  std::vector<Word> blocks;              // block alphabet, index -> (l+1)-block
  std::map<std::vector<int>, int> index; // (l+1)-block -> index

  // length-L word over base symbols (L >= l+1) -> length-(L-l) block word
  Word encode(const Word& w) const;
  // inverse on images of encode
  Word decode(const Word& bw) const;
};

BlockCoding higher_block_recode(const TransitionMatrix& A, int l);

// One-sided point: explicit prefix followed by an eventually periodic tail.
// Keeping tails eventually periodic keeps every dynamical question exact.
struct SequencePoint {
  Word prefix;          // symbols at positions 0..prefix.size()-1
  Word tail_preperiod;  // then these
  Word tail_period;     // then this block repeated forever (nonempty)

  int symbol_at(long k) const;
  // first index from which this point and `o` agree forever; nullopt if the
  // points are not tail-equivalent
  std::optional<long> agreement_index(const SequencePoint& o) const;
  // same point with symbols [0,m) replaced (counts must stay consistent with
  // the caller's contract; no allowedness check here)
  SequencePoint with_prefix(long m, const std::vector<int>& repl) const;
  Word prefix_word(long m) const;  // symbols [0,m)

  bool is_valid(const TransitionMatrix& A) const;  // fully allowed
};

SequencePoint make_point(const std::string& prefix, const std::string& preperiod,
                         const std::string& period);

}  // namespace sftlab
