#include "sftlab/cocycle.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace sftlab {

GroupElement GroupElement::int_vector(std::vector<long long> v) {
  GroupElement g;
  g.kind = Kind::IntVector;
  g.vec = std::move(v);
  return g;
}

GroupElement GroupElement::identity_vector(size_t dim) {
  return int_vector(std::vector<long long>(dim, 0));
}

GroupElement GroupElement::permutation(std::vector<int> p) {
  std::vector<int> check = p;
  std::sort(check.begin(), check.end());
  for (size_t i = 0; i < check.size(); ++i)
    if (check[i] != static_cast<int>(i)) throw DomainError("not a permutation");
  GroupElement g;
  g.kind = Kind::Permutation;
  g.perm = std::move(p);
  return g;
}

GroupElement GroupElement::identity_permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  GroupElement g;
  g.kind = Kind::Permutation;
  g.perm = std::move(p);
  return g;
}

GroupElement GroupElement::transposition(int n, int i, int j) {
  GroupElement g = identity_permutation(n);
  std::swap(g.perm[i], g.perm[j]);
  return g;
}

GroupElement GroupElement::op(const GroupElement& o) const {
  if (kind != o.kind) throw DomainError("mixed group element kinds");
  GroupElement g;
  g.kind = kind;
  if (kind == Kind::IntVector) {
    if (vec.size() != o.vec.size()) throw DomainError("vector dimension mismatch");
    g.vec.resize(vec.size());
    for (size_t i = 0; i < vec.size(); ++i) g.vec[i] = vec[i] + o.vec[i];
  } else {
    if (perm.size() != o.perm.size()) throw DomainError("permutation size mismatch");
    g.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) g.perm[i] = perm[o.perm[i]];
  }
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g;
  g.kind = kind;
  if (kind == Kind::IntVector) {
    g.vec.resize(vec.size());
    for (size_t i = 0; i < vec.size(); ++i) g.vec[i] = -vec[i];
  } else {
    g.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) g.perm[perm[i]] = static_cast<int>(i);
  }
  return g;
}

bool GroupElement::is_identity() const {
  if (kind == Kind::IntVector)
    return std::all_of(vec.begin(), vec.end(), [](long long v) { return v == 0; });
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

int CocycleSpec::block_length() const {
  switch (kind) {
    case Kind::SymbolCount:
      return 1;
    case Kind::TransitionCount:
      return l + 1;
    case Kind::Transposition:
      return 2;
    case Kind::UserTable:
      return table.empty() ? 1 : static_cast<int>(table.begin()->first.size());
  }
  return 1;
}

GroupElement CocycleSpec::identity() const {
  switch (kind) {
    case Kind::SymbolCount:
      return GroupElement::identity_vector(n);
    case Kind::TransitionCount: {
      size_t dim = 1;
      for (int i = 0; i <= l; ++i) dim *= n;
      return GroupElement::identity_vector(dim);
    }
    case Kind::Transposition:
      return GroupElement::identity_permutation(n);
    case Kind::UserTable: {
      if (table.empty()) throw DomainError("empty cocycle table");
      const GroupElement& any = table.begin()->second;
      return any.kind == GroupElement::Kind::IntVector
                 ? GroupElement::identity_vector(any.vec.size())
                 : GroupElement::identity_permutation(static_cast<int>(any.perm.size()));
    }
  }
  throw DomainError("bad cocycle kind");
}

GroupElement CocycleSpec::evaluate(const std::vector<int>& block) const {
  if (static_cast<int>(block.size()) != block_length())
    throw DomainError("cocycle window has wrong length");
  switch (kind) {
    case Kind::SymbolCount: {
      std::vector<long long> v(n, 0);
      v[block[0]] = 1;
      return GroupElement::int_vector(std::move(v));
    }
    case Kind::TransitionCount: {
      size_t dim = 1, idx = 0;
      for (int i = 0; i <= l; ++i) dim *= n;
      for (int s : block) idx = idx * n + static_cast<size_t>(s);
      std::vector<long long> v(dim, 0);
      v[idx] = 1;
      return GroupElement::int_vector(std::move(v));
    }
    case Kind::Transposition:
      return GroupElement::transposition(n, block[0], block[1]);
    case Kind::UserTable: {
      auto it = table.find(block);
      if (it == table.end()) throw DomainError("cocycle table is missing a block");
      return it->second;
    }
  }
  throw DomainError("bad cocycle kind");
}

CocycleSpec symbol_count_cocycle(int n) {
  CocycleSpec c;
  c.kind = CocycleSpec::Kind::SymbolCount;
  c.n = n;
  return c;
}

CocycleSpec transition_count_cocycle(int n, int l) {
  if (l < 1) throw DomainError("transition-count cocycle needs l >= 1");
  CocycleSpec c;
  c.kind = CocycleSpec::Kind::TransitionCount;
  c.n = n;
  c.l = l;
  return c;
}

CocycleSpec transposition_cocycle(int n) {
  CocycleSpec c;
  c.kind = CocycleSpec::Kind::Transposition;
  c.n = n;
  return c;
}

CocycleSpec table_cocycle(int n, std::map<std::vector<int>, GroupElement> table) {
  if (table.empty()) throw DomainError("empty cocycle table");
  CocycleSpec c;
  c.kind = CocycleSpec::Kind::UserTable;
  c.n = n;
  c.table = std::move(table);
  return c;
}

AccumResult accumulate(const CocycleSpec& psi, const Word& w) {
  int b = psi.block_length();
  AccumResult out{psi.identity(), false};
  if (static_cast<int>(w.size()) < b) {
    out.short_input = true;
    return out;
  }
  for (size_t k = 0; k + b <= w.size(); ++k) {
    std::vector<int> window(w.symbols.begin() + k, w.symbols.begin() + k + b);
    out.value = out.value.op(psi.evaluate(window));
  }
  return out;
}

namespace {

GroupElement ordered_product(const CocycleSpec& psi, const SequencePoint& p, long k_begin,
                             long k_end) {
  GroupElement acc = psi.identity();
  int b = psi.block_length();
  for (long k = k_begin; k < k_end; ++k) {
    std::vector<int> window(b);
    for (int i = 0; i < b; ++i) window[i] = p.symbol_at(k + i);
    acc = acc.op(psi.evaluate(window));
  }
  return acc;
}

}  // namespace

GroupElement cocycle_J_plus(const CocycleSpec& psi, const SequencePoint& x,
                            const SequencePoint& x2) {
  auto k0 = x.agreement_index(x2);
  if (!k0) throw NotHomoclinic("points are not tail-equivalent");
  // windows starting at or past the agreement index coincide and cancel at
  // the junction of the two ordered products
  GroupElement a = ordered_product(psi, x, 0, *k0);
  GroupElement b = ordered_product(psi, x2, 0, *k0);
  return a.op(b.inverse());
}

bool in_subrelation(const CocycleSpec& psi, const SequencePoint& x,
                    const SequencePoint& x2) {
  return cocycle_J_plus(psi, x, x2).is_identity();
}

int TwoSidedPoint::symbol_at(long k) const {
  long rel = k - anchor;
  if (rel >= 0) {
    long len = static_cast<long>(center.size());
    if (rel < len) return center[rel];
    rel -= len;
    long pre = static_cast<long>(right_preperiod.size());
    if (rel < pre) return right_preperiod[rel];
    rel -= pre;
    return right_period[rel % static_cast<long>(right_period.size())];
  }
  long d = -rel - 1;  // 0 for the symbol just left of the center
  long pre = static_cast<long>(left_preperiod.size());
  if (d < pre) return left_preperiod[d];
  d -= pre;
  return left_period[d % static_cast<long>(left_period.size())];
}

TwoSidedPoint TwoSidedPoint::shifted(long d) const {
  TwoSidedPoint p = *this;
  p.anchor -= d;
  return p;
}

std::optional<long> TwoSidedPoint::right_agreement(const TwoSidedPoint& o) const {
  long m1 = anchor + static_cast<long>(center.size() + right_preperiod.size());
  long m2 = o.anchor + static_cast<long>(o.center.size() + o.right_preperiod.size());
  long M = std::max(m1, m2);
  long L = std::lcm(static_cast<long>(right_period.size()),
                    static_cast<long>(o.right_period.size()));
  for (long k = M; k < M + L; ++k)
    if (symbol_at(k) != o.symbol_at(k)) return std::nullopt;
  long lo = std::min(anchor - static_cast<long>(left_preperiod.size()),
                     o.anchor - static_cast<long>(o.left_preperiod.size()));
  long k0 = M;
  while (k0 > lo && symbol_at(k0 - 1) == o.symbol_at(k0 - 1)) --k0;
  return k0;
}

std::optional<long> TwoSidedPoint::left_agreement(const TwoSidedPoint& o) const {
  long m1 = anchor - static_cast<long>(left_preperiod.size());
  long m2 = o.anchor - static_cast<long>(o.left_preperiod.size());
  long M = std::min(m1, m2);
  long L = std::lcm(static_cast<long>(left_period.size()),
                    static_cast<long>(o.left_period.size()));
  for (long k = M - L; k < M; ++k)
    if (symbol_at(k) != o.symbol_at(k)) return std::nullopt;
  long hi = std::max(anchor + static_cast<long>(center.size() + right_preperiod.size()),
                     o.anchor + static_cast<long>(o.center.size() + o.right_preperiod.size()));
  long k1 = M - 1;
  while (k1 + 1 < hi && symbol_at(k1 + 1) == o.symbol_at(k1 + 1)) ++k1;
  return k1;
}

TwoSidedPoint make_two_sided(const std::string& left_period,
                             const std::string& left_preperiod,
                             const std::string& center,
                             const std::string& right_preperiod,
                             const std::string& right_period, long anchor) {
  if (left_period.empty() || right_period.empty())
    throw DomainError("two-sided points need nonempty periods on both sides");
  TwoSidedPoint p;
  p.center = word_from_string(center);
  p.anchor = anchor;
  p.right_preperiod = word_from_string(right_preperiod);
  p.right_period = word_from_string(right_period);
  // the leftward fields are stored leftward: reverse the natural reading
  std::string lp(left_preperiod.rbegin(), left_preperiod.rend());
  std::string lq(left_period.rbegin(), left_period.rend());
  p.left_preperiod = word_from_string(lp);
  p.left_period = word_from_string(lq);
  return p;
}

namespace {

GroupElement ordered_product_two(const CocycleSpec& psi, const TwoSidedPoint& p,
                                 long k_begin, long k_end) {
  GroupElement acc = psi.identity();
  int b = psi.block_length();
  for (long k = k_begin; k < k_end; ++k) {
    std::vector<int> window(b);
    for (int i = 0; i < b; ++i) window[i] = p.symbol_at(k + i);
    acc = acc.op(psi.evaluate(window));
  }
  return acc;
}

}  // namespace

GroupElement cocycle_J_plus_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                                      const TwoSidedPoint& x2) {
  auto kplus = x.right_agreement(x2);
  if (!kplus) throw NotHomoclinic("points do not agree far to the right");
  long K = std::max(*kplus, 0L);
  GroupElement a = ordered_product_two(psi, x, 0, K);
  GroupElement b = ordered_product_two(psi, x2, 0, K);
  return a.op(b.inverse());
}

GroupElement cocycle_J_minus_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                                       const TwoSidedPoint& x2) {
  auto kminus = x.left_agreement(x2);
  if (!kminus) throw NotHomoclinic("points do not agree far to the left");
  // windows starting at or before K- - b + 1 coincide; take J from there
  long J = std::min(*kminus - psi.block_length() + 1, 0L);
  GroupElement a = ordered_product_two(psi, x, J, 0);
  GroupElement b = ordered_product_two(psi, x2, J, 0);
  return a.inverse().op(b);
}

bool in_subrelation_two_sided(const CocycleSpec& psi, const TwoSidedPoint& x,
                              const TwoSidedPoint& x2) {
  return cocycle_J_plus_two_sided(psi, x, x2) == cocycle_J_minus_two_sided(psi, x, x2);
}

namespace {

struct PairSearch {
  bool equivalent = false;
  bool closed = true;  // no frontier state exceeded the bound
};

// BFS over (last symbol of the a-string, last symbol of the b-string, Parikh
// difference); target: equal last symbols with zero difference.
PairSearch search_pair(const TransitionMatrix& A, int a, int b, long bound) {
  int n = A.n;
  std::uint64_t span = static_cast<std::uint64_t>(2 * bound + 1);
  auto encode = [&](int p, int q, const CountVector& d) {
    std::uint64_t k = static_cast<std::uint64_t>(p) * n + q;
    for (long long e : d) k = k * span + static_cast<std::uint64_t>(e + bound);
    return k;
  };
  struct State {
    int p, q;
    CountVector d;
  };
  PairSearch out;
  std::unordered_set<std::uint64_t> seen;
  std::vector<State> frontier;
  CountVector d0(n, 0);
  ++d0[a];
  --d0[b];
  frontier.push_back({a, b, d0});
  seen.insert(encode(a, b, d0));
  while (!frontier.empty()) {
    std::vector<State> next;
    for (const auto& st : frontier) {
      for (int s = 0; s < n; ++s) {
        if (!A(st.p, s)) continue;
        for (int t = 0; t < n; ++t) {
          if (!A(st.q, t)) continue;
          CountVector d = st.d;
          ++d[s];
          --d[t];
          if (s == t && std::all_of(d.begin(), d.end(), [](long long v) { return v == 0; })) {
            out.equivalent = true;
            return out;
          }
          bool inside = std::all_of(d.begin(), d.end(), [&](long long v) {
            return v >= -bound && v <= bound;
          });
          if (!inside) {
            out.closed = false;
            continue;
          }
          std::uint64_t key = encode(s, t, d);
          if (seen.insert(key).second) next.push_back({s, t, std::move(d)});
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

SymbolClasses symbol_equivalence_classes(const TransitionMatrix& A,
                                         const CocycleSpec& psi, long bound) {
  if (psi.kind == CocycleSpec::Kind::Transposition ||
      psi.kind == CocycleSpec::Kind::UserTable)
    throw DomainError("symbol equivalence criterion applies to count cocycles");
  const TransitionMatrix* mat = &A;
  SymbolClasses out;
  BlockCoding coding;
  if (psi.kind == CocycleSpec::Kind::TransitionCount) {
    coding = higher_block_recode(A, psi.l);
    mat = &coding.block_matrix;
    out.alphabet_blocks = coding.blocks;
  }
  int n = mat->n;
  if (bound < 0) bound = static_cast<long>(n) * n;
  UnionFind uf(n);
  std::vector<std::vector<PairSearch>> results(n, std::vector<PairSearch>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      results[a][b] = search_pair(*mat, a, b, bound);
      if (results[a][b].equivalent) uf.unite(a, b);
    }
  std::map<int, std::vector<int>> grouped;
  for (int s = 0; s < n; ++s) grouped[uf.find(s)].push_back(s);
  for (auto& [root, members] : grouped) out.classes.push_back(members);
  // separations are certain only if every cross-class search ran to closure
  out.status = SearchStatus::Proven;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uf.find(a) != uf.find(b) && !results[a][b].closed)
        out.status = SearchStatus::BoundReached;
  return out;
}

TransitivityResult is_topologically_transitive(const TransitionMatrix& A,
                                               const CocycleSpec& psi, long bound) {
  TransitivityResult out;
  out.classes = symbol_equivalence_classes(A, psi, bound);
  out.transitive = out.classes.classes.size() == 1;
  out.status = out.classes.status;
  // a positive verdict is certain regardless of frontier truncation
  if (out.transitive) out.status = SearchStatus::Proven;
  return out;
}

}  // namespace sftlab
