#include "sftlab/sft.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sftlab {

BigInt factorial(unsigned long n) {
  BigInt r = 1;
  for (unsigned long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw DomainError("cannot parse number: '" + text + "'"); };
  std::string s = text;
  if (s.empty()) bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) bad();
    BigInt p(num), q(den);
    if (q == 0) bad();
    return Rational(p, q);
  }
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string digits;
  long frac_digits = -1;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (frac_digits >= 0) bad();
      frac_digits = 0;
    } else if (s[i] >= '0' && s[i] <= '9') {
      digits.push_back(s[i]);
      if (frac_digits >= 0) ++frac_digits;
    } else {
      bad();
    }
  }
  if (digits.empty()) bad();
  BigInt p(digits);
  BigInt q = 1;
  for (long k = 0; k < std::max(frac_digits, 0L); ++k) q *= 10;
  if (neg) p = -p;
  return Rational(p, q);
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::string format_double(double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

long long cv_total(const CountVector& c) {
  return std::accumulate(c.begin(), c.end(), 0LL);
}

namespace {

// period as gcd over all cycle lengths: BFS levels per SCC, gcd of
// level[u]+1-level[v] over intra-SCC edges
int graph_period(const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  // Tarjan-free SCC via Kosaraju
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  std::vector<int> comp(n, -1);
  auto dfs1 = [&](auto&& self, int u) -> void {
    seen[u] = 1;
    for (int v = 0; v < n; ++v)
      if (a[u][v] && !seen[v]) self(self, v);
    order.push_back(u);
  };
  for (int u = 0; u < n; ++u)
    if (!seen[u]) dfs1(dfs1, u);
  int ncomp = 0;
  auto dfs2 = [&](auto&& self, int u, int c) -> void {
    comp[u] = c;
    for (int v = 0; v < n; ++v)
      if (a[v][u] && comp[v] < 0) self(self, v, c);
  };
  for (int i = n - 1; i >= 0; --i)
    if (comp[order[i]] < 0) dfs2(dfs2, order[i], ncomp++);

  long long g = 0;
  for (int c = 0; c < ncomp; ++c) {
    int root = -1;
    for (int u = 0; u < n && root < 0; ++u)
      if (comp[u] == c) root = u;
    std::vector<long long> level(n, -1);
    std::vector<int> queue{root};
    level[root] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int v = 0; v < n; ++v) {
        if (!a[u][v] || comp[v] != c) continue;
        if (level[v] < 0) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        }
        g = std::gcd(g, level[u] + 1 - level[v]);
      }
    }
  }
  return g == 0 ? 1 : static_cast<int>(g);
}

bool strongly_connected(const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  auto reach = [&](bool fwd) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (int v = 0; v < n; ++v) {
        int e = fwd ? a[queue[qi]][v] : a[v][queue[qi]];
        if (e && !seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  };
  return reach(true) && reach(false);
}

}  // namespace

TransitionMatrix validate_matrix(const std::vector<std::vector<int>>& entries) {
  int n = static_cast<int>(entries.size());
  if (n < 1) throw DomainError("matrix must have n >= 1");
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != n) throw DomainError("matrix must be square");
    for (int e : row)
      if (e != 0 && e != 1) throw DomainError("matrix entries must be 0/1");
  }
  for (int i = 0; i < n; ++i) {
    bool row = false, col = false;
    for (int j = 0; j < n; ++j) {
      row |= entries[i][j] != 0;
      col |= entries[j][i] != 0;
    }
    if (!row || !col)
      throw DegenerateAlphabet("symbol " + std::to_string(i) +
                               " has an all-zero row or column");
  }
  TransitionMatrix A;
  A.n = n;
  A.entries = entries;
  A.irreducible = strongly_connected(entries);
  A.period = graph_period(entries);
  return A;
}

TransitionMatrix full_shift(int n) {
  return validate_matrix(std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

TransitionMatrix golden_mean() { return validate_matrix({{1, 1}, {1, 0}}); }

std::string word_to_string(const Word& w) {
  bool digits = std::all_of(w.symbols.begin(), w.symbols.end(),
                            [](int s) { return s >= 0 && s <= 9; });
  std::ostringstream os;
  if (digits) {
    for (int s : w.symbols) os << s;
  } else {
    os << '[';
    for (size_t i = 0; i < w.symbols.size(); ++i) {
      if (i) os << ',';
      os << w.symbols[i];
    }
    os << ']';
  }
  return os.str();
}

Word word_from_string(const std::string& s, long pos) {
  Word w;
  w.start_position = pos;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw DomainError("unterminated word literal: " + s);
    std::string body = s.substr(1, s.size() - 2);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) w.symbols.push_back(std::stoi(tok));
    return w;
  }
  for (char c : s) {
    if (c < '0' || c > '9') throw DomainError("word characters must be digits: " + s);
    w.symbols.push_back(c - '0');
  }
  return w;
}

bool is_allowed(const TransitionMatrix& A, const Word& w) {
  for (int s : w.symbols)
    if (s < 0 || s >= A.n) throw DomainError("word symbol out of range");
  for (size_t i = 0; i + 1 < w.symbols.size(); ++i)
    if (!A(w.symbols[i], w.symbols[i + 1])) return false;
  return true;
}

CountVector parikh_vector(const Word& w, int n) {
  CountVector c(n, 0);
  for (int s : w.symbols) {
    if (s < 0 || s >= n) throw DomainError("word symbol out of range");
    ++c[s];
  }
  return c;
}

bool reverse_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw DomainError("reverse-lex order compares equal-length words");
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

namespace {

struct ParikhDp {
  const TransitionMatrix& A;
  const WordConstraints& c;
  CountVector target;
  std::vector<long long> radix;  // mixed-radix strides over count entries
  std::vector<BigInt> memo;
  std::vector<char> seen;

  ParikhDp(const TransitionMatrix& A_, const WordConstraints& c_, CountVector t,
           const CountOptions& opts)
      : A(A_), c(c_), target(std::move(t)) {
    std::uint64_t states = 1;
    radix.resize(A.n);
    for (int i = 0; i < A.n; ++i) {
      radix[i] = static_cast<long long>(states);
      states *= static_cast<std::uint64_t>(target[i] + 1);
      if (states > opts.state_cap)
        throw EnumerationTooLarge("Parikh DP state space exceeds cap");
    }
    states *= static_cast<std::uint64_t>(A.n);
    if (states > opts.state_cap)
      throw EnumerationTooLarge("Parikh DP state space exceeds cap");
    memo.resize(states);
    seen.assign(states, 0);
  }

  long long encode(const CountVector& rem, int last) const {
    long long k = last;
    for (int i = 0; i < A.n; ++i) k += radix[i] * A.n * rem[i];
    return k;
  }

  bool first_ok(int s) const {
    if (c.start_symbol && *c.start_symbol != s) return false;
    if (c.prev_symbol && !A(*c.prev_symbol, s)) return false;
    return true;
  }

  BigInt run(CountVector& rem, int last) {
    long long total = cv_total(rem);
    if (total == 0) {
      if (c.end_symbol && last != *c.end_symbol) return 0;
      if (c.next_symbol && last >= 0 && !A(last, *c.next_symbol)) return 0;
      return 1;
    }
    long long key = last >= 0 ? encode(rem, last) : -1;
    if (key >= 0 && seen[key]) return memo[key];
    BigInt acc = 0;
    for (int s = 0; s < A.n; ++s) {
      if (rem[s] == 0) continue;
      if (last >= 0 ? !A(last, s) : !first_ok(s)) continue;
      --rem[s];
      acc += run(rem, s);
      ++rem[s];
    }
    if (key >= 0) {
      seen[key] = 1;
      memo[key] = acc;
    }
    return acc;
  }
};

}  // namespace

BigInt count_words(const TransitionMatrix& A, long m, const WordConstraints& c,
                   const CountOptions& opts) {
  if (m < 0) throw DomainError("word length must be >= 0");
  auto sym_ok = [&](const std::optional<int>& s) {
    return !s || (*s >= 0 && *s < A.n);
  };
  if (!sym_ok(c.start_symbol) || !sym_ok(c.end_symbol) || !sym_ok(c.next_symbol) ||
      !sym_ok(c.prev_symbol))
    throw DomainError("constraint symbol out of range");
  if (c.parikh) {
    if (static_cast<int>(c.parikh->size()) != A.n)
      throw DomainError("Parikh constraint has wrong dimension");
    for (long long e : *c.parikh)
      if (e < 0) return 0;
    if (cv_total(*c.parikh) != m) return 0;
  }
  if (m == 0) {
    // the empty word: start/end unsatisfiable, next/prev vacuous
    return (c.start_symbol || c.end_symbol) ? BigInt(0) : BigInt(1);
  }
  if (c.parikh) {
    ParikhDp dp(A, c, *c.parikh, opts);
    CountVector rem = *c.parikh;
    return dp.run(rem, -1);
  }
  // no Parikh constraint: layered DP on (length, last symbol)
  std::vector<BigInt> cnt(A.n, 0);
  for (int s = 0; s < A.n; ++s) {
    if (c.start_symbol && *c.start_symbol != s) continue;
    if (c.prev_symbol && !A(*c.prev_symbol, s)) continue;
    cnt[s] = 1;
  }
  for (long step = 1; step < m; ++step) {
    std::vector<BigInt> nxt(A.n, 0);
    for (int u = 0; u < A.n; ++u) {
      if (cnt[u] == 0) continue;
      for (int v = 0; v < A.n; ++v)
        if (A(u, v)) nxt[v] += cnt[u];
    }
    cnt.swap(nxt);
  }
  BigInt acc = 0;
  for (int u = 0; u < A.n; ++u) {
    if (c.end_symbol && *c.end_symbol != u) continue;
    if (c.next_symbol && !A(u, *c.next_symbol)) continue;
    acc += cnt[u];
  }
  return acc;
}

std::vector<Word> enumerate_words(const TransitionMatrix& A, long m,
                                  const WordConstraints& c, std::uint64_t cap) {
  BigInt total = count_words(A, m, c);
  if (total > cap)
    throw EnumerationTooLarge("class of size " + total.str() +
                              " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Word> out;
  if (total == 0) return out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  CountVector rem = c.parikh ? *c.parikh : CountVector(A.n, m);
  std::vector<int> cur;
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<long>(cur.size()) == m) {
      int last = cur.back();
      if (c.end_symbol && last != *c.end_symbol) return;
      if (c.next_symbol && !A(last, *c.next_symbol)) return;
      out.emplace_back(cur);
      return;
    }
    for (int s = 0; s < A.n; ++s) {
      if (rem[s] == 0) continue;
      if (cur.empty()) {
        if (c.start_symbol && *c.start_symbol != s) continue;
        if (c.prev_symbol && !A(*c.prev_symbol, s)) continue;
      } else if (!A(cur.back(), s)) {
        continue;
      }
      --rem[s];
      cur.push_back(s);
      self(self);
      cur.pop_back();
      ++rem[s];
    }
  };
  dfs(dfs);
  std::sort(out.begin(), out.end(),
            [](const Word& a, const Word& b) { return reverse_lex_less(a.symbols, b.symbols); });
  return out;
}

namespace {

// feasibility of completing [0..len) with counts `rem`, transitioning into
// `into`, honoring the class's start/prev constraints
bool fill_feasible(const TransitionMatrix& A, long len, const CountVector& rem,
                   int into, const WordConstraints& c) {
  WordConstraints fc;
  fc.parikh = rem;
  fc.next_symbol = into;
  fc.start_symbol = c.start_symbol;
  fc.prev_symbol = c.prev_symbol;
  return count_words(A, len, fc) > 0;
}

// reverse-lex minimal arrangement of `rem` on [0..len) transitioning into
// `into`; assumes feasible
std::vector<int> min_fill(const TransitionMatrix& A, long len, CountVector rem,
                          int into, const WordConstraints& c) {
  std::vector<int> suffix;  // built from position len-1 downward
  int above = into;
  for (long p = len - 1; p >= 0; --p) {
    bool placed = false;
    for (int s = 0; s < A.n && !placed; ++s) {
      if (rem[s] == 0 || !A(s, above)) continue;
      if (p == 0) {
        if (c.start_symbol && *c.start_symbol != s) continue;
        if (c.prev_symbol && !A(*c.prev_symbol, s)) continue;
      }
      --rem[s];
      if (fill_feasible(A, p, rem, s, c)) {
        suffix.push_back(s);
        above = s;
        placed = true;
      } else {
        ++rem[s];
      }
    }
    if (!placed) throw DomainError("min_fill called on infeasible class");
  }
  std::reverse(suffix.begin(), suffix.end());
  return suffix;
}

}  // namespace

std::optional<Word> next_word_in_class(const TransitionMatrix& A, const Word& w,
                                       const WordConstraints& c) {
  if (!c.parikh) throw DomainError("next_word_in_class requires a Parikh constraint");
  long m = static_cast<long>(w.size());
  if (m == 0) return std::nullopt;
  // Raise position j while keeping [j+1..m) fixed; the smallest raisable j
  // gives the reverse-lex successor. suffix_counts tracks the fixed part.
  CountVector suffix_counts(A.n, 0);
  for (long k = 1; k < m; ++k) ++suffix_counts[w[k]];
  for (long j = 0; j < m; ++j) {
    CountVector budget = *c.parikh;  // counts available for positions [0..j]
    bool sane = true;
    for (int i = 0; i < A.n; ++i) {
      budget[i] -= suffix_counts[i];
      sane &= budget[i] >= 0;
    }
    if (!sane) throw DomainError("word does not satisfy the class Parikh vector");
    for (int s = w[j] + 1; s < A.n; ++s) {
      if (budget[s] == 0) continue;
      if (j + 1 < m) {
        if (!A(s, w[j + 1])) continue;
      } else {
        if (c.end_symbol && *c.end_symbol != s) continue;
        if (c.next_symbol && !A(s, *c.next_symbol)) continue;
      }
      if (j == 0) {
        if (c.start_symbol && *c.start_symbol != s) continue;
        if (c.prev_symbol && !A(*c.prev_symbol, s)) continue;
        Word out = w;
        out.symbols[0] = s;
        return out;
      }
      CountVector fill = budget;
      --fill[s];
      if (!fill_feasible(A, j, fill, s, c)) continue;
      std::vector<int> head = min_fill(A, j, fill, s, c);
      Word out = w;
      std::copy(head.begin(), head.end(), out.symbols.begin());
      out.symbols[j] = s;
      return out;
    }
    if (j + 1 < m) --suffix_counts[w[j + 1]];
  }
  return std::nullopt;
}

std::optional<Word> min_word_in_class(const TransitionMatrix& A, long m,
                                      const WordConstraints& c) {
  if (count_words(A, m, c) == 0) return std::nullopt;
  if (m == 0) return Word{};
  CountVector rem = c.parikh ? *c.parikh : CountVector(A.n, m);
  if (!c.parikh) throw DomainError("min_word_in_class requires a Parikh constraint");
  std::vector<int> suffix;
  std::optional<int> above;  // symbol at the position just filled
  for (long p = m - 1; p >= 0; --p) {
    bool placed = false;
    for (int s = 0; s < A.n && !placed; ++s) {
      if (rem[s] == 0) continue;
      if (above) {
        if (!A(s, *above)) continue;
      } else {
        if (c.end_symbol && *c.end_symbol != s) continue;
        if (c.next_symbol && !A(s, *c.next_symbol)) continue;
      }
      if (p == 0) {
        if (c.start_symbol && *c.start_symbol != s) continue;
        if (c.prev_symbol && !A(*c.prev_symbol, s)) continue;
      }
      --rem[s];
      if (fill_feasible(A, p, rem, s, c)) {
        suffix.push_back(s);
        above = s;
        placed = true;
      } else {
        ++rem[s];
      }
    }
    if (!placed) return std::nullopt;  // cannot happen: class nonempty
  }
  std::reverse(suffix.begin(), suffix.end());
  return Word{suffix};
}

Word BlockCoding::encode(const Word& w) const {
  long L = static_cast<long>(w.size());
  if (L < l + 1) throw DomainError("word too short to encode");
  Word out;
  out.start_position = w.start_position;
  for (long i = 0; i + l < L; ++i) {
    std::vector<int> blk(w.symbols.begin() + i, w.symbols.begin() + i + l + 1);
    auto it = index.find(blk);
    if (it == index.end()) throw DomainError("word contains a disallowed block");
    out.symbols.push_back(it->second);
  }
  return out;
}

Word BlockCoding::decode(const Word& bw) const {
  if (bw.empty()) throw DomainError("cannot decode an empty block word");
  Word out;
  out.start_position = bw.start_position;
  const auto& first = blocks.at(bw[0]).symbols;
  out.symbols = first;
  for (size_t i = 1; i < bw.size(); ++i) {
    const auto& blk = blocks.at(bw[i]).symbols;
    for (int k = 0; k < l; ++k)
      if (out.symbols[out.symbols.size() - l + k] != blk[k])
        throw DomainError("block word does not chain");
    out.symbols.push_back(blk.back());
  }
  return out;
}

BlockCoding higher_block_recode(const TransitionMatrix& A, int l) {
  if (l < 1) throw DomainError("block length must be >= 1");
  BlockCoding bc;
  bc.l = l;
  auto blocks = enumerate_words(A, l + 1, {});
  std::sort(blocks.begin(), blocks.end(),
            [](const Word& a, const Word& b) { return a.symbols < b.symbols; });
  bc.blocks = blocks;
  for (size_t i = 0; i < blocks.size(); ++i)
    bc.index[blocks[i].symbols] = static_cast<int>(i);
  int N = static_cast<int>(blocks.size());
  std::vector<std::vector<int>> entries(N, std::vector<int>(N, 0));
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      bool overlap = true;
      for (int k = 0; k < l && overlap; ++k)
        overlap = blocks[u].symbols[k + 1] == blocks[v].symbols[k];
      entries[u][v] = overlap ? 1 : 0;
    }
  bc.block_matrix = validate_matrix(entries);
  return bc;
}

int SequencePoint::symbol_at(long k) const {
  if (k < 0) throw DomainError("one-sided point indexed at negative position");
  long p = static_cast<long>(prefix.size());
  if (k < p) return prefix[k];
  k -= p;
  long pre = static_cast<long>(tail_preperiod.size());
  if (k < pre) return tail_preperiod[k];
  k -= pre;
  return tail_period[k % static_cast<long>(tail_period.size())];
}

std::optional<long> SequencePoint::agreement_index(const SequencePoint& o) const {
  long m1 = static_cast<long>(prefix.size() + tail_preperiod.size());
  long m2 = static_cast<long>(o.prefix.size() + o.tail_preperiod.size());
  long M = std::max(m1, m2);
  long q1 = static_cast<long>(tail_period.size());
  long q2 = static_cast<long>(o.tail_period.size());
  long L = std::lcm(q1, q2);
  for (long k = M; k < M + L; ++k)
    if (symbol_at(k) != o.symbol_at(k)) return std::nullopt;
  long k0 = M;
  while (k0 > 0 && symbol_at(k0 - 1) == o.symbol_at(k0 - 1)) --k0;
  return k0;
}

SequencePoint SequencePoint::with_prefix(long m, const std::vector<int>& repl) const {
  if (static_cast<long>(repl.size()) != m)
    throw DomainError("replacement prefix has wrong length");
  SequencePoint out;
  long p = static_cast<long>(prefix.size());
  if (m <= p) {
    out.prefix.symbols = repl;
    out.prefix.symbols.insert(out.prefix.symbols.end(), prefix.symbols.begin() + m,
                              prefix.symbols.end());
    out.tail_preperiod = tail_preperiod;
    out.tail_period = tail_period;
    return out;
  }
  out.prefix.symbols = repl;
  long d = m - p;
  long pre = static_cast<long>(tail_preperiod.size());
  if (d <= pre) {
    out.tail_preperiod.symbols.assign(tail_preperiod.symbols.begin() + d,
                                      tail_preperiod.symbols.end());
    out.tail_period = tail_period;
    return out;
  }
  d -= pre;
  long q = static_cast<long>(tail_period.size());
  long rot = d % q;
  out.tail_period.symbols.assign(tail_period.symbols.begin() + rot,
                                 tail_period.symbols.end());
  out.tail_period.symbols.insert(out.tail_period.symbols.end(),
                                 tail_period.symbols.begin(),
                                 tail_period.symbols.begin() + rot);
  return out;
}

Word SequencePoint::prefix_word(long m) const {
  Word w;
  w.symbols.reserve(m);
  for (long k = 0; k < m; ++k) w.symbols.push_back(symbol_at(k));
  return w;
}

bool SequencePoint::is_valid(const TransitionMatrix& A) const {
  if (tail_period.empty()) return false;
  long horizon = static_cast<long>(prefix.size() + tail_preperiod.size() +
                                   tail_period.size()) +
                 1;
  for (long k = 0; k <= horizon; ++k) {
    int s = symbol_at(k);
    if (s < 0 || s >= A.n) return false;
    if (k > 0 && !A(symbol_at(k - 1), s)) return false;
  }
  return true;
}

SequencePoint make_point(const std::string& prefix, const std::string& preperiod,
                         const std::string& period) {
  if (period.empty()) throw DomainError("tail period must be nonempty");
  SequencePoint p;
  p.prefix = word_from_string(prefix);
  p.tail_preperiod = word_from_string(preperiod);
  p.tail_period = word_from_string(period);
  return p;
}

}  // namespace sftlab
