#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

// Element of the cocycle target group: a finite-rank integer vector or a
// permutation of the alphabet. Vector addition commutes; composition does not.
struct GroupElement {
  enum class Kind { IntVector, Permutation } kind = Kind::IntVector;
  std::vector<long long> vec;  // IntVector coordinates
  std::vector<int> perm;       // perm[i] = image of i

  static GroupElement int_vector(std::vector<long long> v);
  static GroupElement identity_vector(size_t dim);
  static GroupElement permutation(std::vector<int> p);
  static GroupElement identity_permutation(int n);
  static GroupElement transposition(int n, int i, int j);

  GroupElement op(const GroupElement& o) const;  // this * o
  GroupElement inverse() const;
  bool is_identity() const;
  bool operator==(const GroupElement& o) const { return kind == o.kind && vec == o.vec && perm == o.perm; }
};

struct CocycleSpec {
  enum class Kind { SymbolCount, TransitionCount, Transposition, UserTable } kind =
      Kind::SymbolCount;
  int n = 2;       // alphabet size
  int l = 1;       // TransitionCount reads x_0..x_l
  std::map<std::vector<int>, GroupElement> table;  // UserTable

  int block_length() const;
  GroupElement identity() const;
  // psi applied to the block x_0..x_{b-1}
  GroupElement evaluate(const std::vector<int>& block) const;
};

CocycleSpec symbol_count_cocycle(int n);
CocycleSpec transition_count_cocycle(int n, int l);
CocycleSpec transposition_cocycle(int n);
CocycleSpec table_cocycle(int n, std::map<std::vector<int>, GroupElement> table);

struct AccumResult {
  GroupElement value;
  bool short_input = false;  // word shorter than the block length
};

// Ordered product psi(w) psi(sigma w) ... over all complete windows of w.
AccumResult accumulate(const CocycleSpec& psi, const Word& w);

// J_+(x, x2): the one-sided cocycle, attained at any cutoff past the last
// disagreement of the two points.
GroupElement cocycle_J_plus(const CocycleSpec& psi, const SequencePoint& x,
                            const SequencePoint& x2);

// One-sided membership: J_+(x, x2) is the identity.
bool in_subrelation(const CocycleSpec& psi, const SequencePoint& x,
                    const SequencePoint& x2);

// Two-sided point, eventually periodic in both directions. symbol_at accepts
// any integer index; shifted(d) is sigma^d.
struct TwoSidedPoint {
  Word center;  // symbols at positions [anchor, anchor + center.size())
  long anchor = 0;
  Word right_preperiod, right_period;  // after the center, rightward
  Word left_preperiod, left_period;    // before the center, read leftward

  int symbol_at(long k) const;
  TwoSidedPoint shifted(long d) const;
  // first index K+ >= k0 from which the two points agree rightward forever,
  // and the last index K- <= k1 up to which they agree leftward
  std::optional<long> right_agreement(const TwoSidedPoint& o) const;
  std::optional<long> left_agreement(const TwoSidedPoint& o) const;
};

TwoSidedPoint make_two_sided(const std::string& left_period,
                             const std::string& left_preperiod,
                             const std::string& center,
                             const std::string& right_preperiod,
                             const std::string& right_period, long anchor = 0);

GroupElement cocycle_J_plus_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                                      const TwoSidedPoint& x2);
GroupElement cocycle_J_minus_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                                       const TwoSidedPoint& x2);

// Two-sided membership: J_+ = J_- (for abelian targets this is the vanishing
// of the difference cocycle).
bool in_subrelation_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                              const TwoSidedPoint& x2);

enum class SearchStatus { Proven, BoundReached };

struct SymbolClasses {
  std::vector<std::vector<int>> classes;  // partition of the (block) alphabet
  SearchStatus status = SearchStatus::Proven;
  // for recoded cocycles, the block words naming the partitioned alphabet
  std::vector<Word> alphabet_blocks;
};

// The symbol-equivalence criterion: a ~ b iff there are equal-length allowed
// strings s, t and a symbol i with asi, bti allowed and permutations of each
// other. Decided by BFS over (last of first string, last of second string,
// Parikh difference), bounded in max norm. Transition-count cocycles run the
// same search on the higher-block alphabet; the criterion does not apply to
// permutation-valued cocycles.
SymbolClasses symbol_equivalence_classes(const TransitionMatrix& A,
                                         const CocycleSpec& psi, long bound = -1);

struct TransitivityResult {
  bool transitive = false;
  SearchStatus status = SearchStatus::Proven;
  SymbolClasses classes;
};

TransitivityResult is_topologically_transitive(const TransitionMatrix& A,
                                               const CocycleSpec& psi, long bound = -1);

}  // namespace sftlab
