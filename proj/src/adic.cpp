#include "sftlab/adic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace sftlab {

BigInt pascal_weight(const CountVector& counts) {
  for (long long c : counts)
    if (c < 0) throw DomainError("Parikh entries must be nonnegative");
  // multinomial as a running product of binomials: prod_i C(used_i + c_i, c_i)
  BigInt r = 1;
  long long used = 0;
  for (long long c : counts) {
    for (long long i = 1; i <= c; ++i) {
      r *= (used + i);
      r /= i;
    }
    used += c;
  }
  return r;
}

BigInt sft_weight(const TransitionMatrix& A, const WeightQuery& q,
                  const CountOptions& opts) {
  WordConstraints c;
  c.parikh = q.parikh;
  c.next_symbol = q.next_symbol;
  return count_words(A, q.m, c, opts);
}

BigInt sft_weight_in_cylinder(const TransitionMatrix& A, const WeightQuery& q,
                              const Word& C, const CountOptions& opts) {
  long l = static_cast<long>(C.size());
  if (l > q.m) throw DomainError("cylinder longer than the weight level");
  if (!is_allowed(A, C)) return 0;
  CountVector rem = q.parikh;
  if (static_cast<int>(rem.size()) != A.n)
    throw DomainError("Parikh constraint has wrong dimension");
  for (int s : C.symbols) {
    if (--rem[s] < 0) return 0;
  }
  if (l == q.m) {
    if (cv_total(rem) != 0) return 0;
    return (C.empty() || A(C.back(), q.next_symbol)) ? BigInt(1) : BigInt(0);
  }
  WordConstraints c;
  c.parikh = rem;
  c.next_symbol = q.next_symbol;
  if (!C.empty()) c.prev_symbol = C.back();
  return count_words(A, q.m - l, c, opts);
}

namespace {

// Layered sweep state: all allowed words of the current length grouped by
// (Parikh vector, last symbol). The 2-symbol case gets a dense layer indexed
// by the count of zeros; larger alphabets use a hash layer with a state cap.
struct DenseLayer {
  std::vector<std::array<BigInt, 2>> cells;  // index = #0s

  void clear(long len) { cells.assign(len + 1, {BigInt(0), BigInt(0)}); }
  void seed(const CountVector& counts, int last) { cells[counts[0]][last] = 1; }
  void extend(const TransitionMatrix& A, DenseLayer& dst) const {
    dst.clear(static_cast<long>(cells.size()));
    for (size_t c = 0; c < cells.size(); ++c)
      for (int u = 0; u < 2; ++u) {
        const BigInt& v = cells[c][u];
        if (v == 0) continue;
        for (int s = 0; s < 2; ++s)
          if (A(u, s)) dst.cells[c + (s == 0 ? 1 : 0)][s] += v;
      }
  }
  BigInt query(const TransitionMatrix& A, const CountVector& counts, int next_sym) const {
    BigInt acc = 0;
    size_t c = static_cast<size_t>(counts[0]);
    if (c < cells.size())
      for (int u = 0; u < 2; ++u)
        if (A(u, next_sym)) acc += cells[c][u];
    return acc;
  }
  std::uint64_t states() const { return cells.size() * 2; }
};

struct HashLayer {
  std::uint64_t base = 0;
  std::unordered_map<std::uint64_t, std::vector<BigInt>> cells;

  std::uint64_t key(const CountVector& c) const {
    std::uint64_t k = 0;
    for (long long e : c) k = k * base + static_cast<std::uint64_t>(e);
    return k;
  }
  void clear(long) { cells.clear(); }
  void seed(const CountVector& counts, int last) {
    auto& cell = cells[key(counts)];
    if (cell.empty()) cell.assign(counts.size(), 0);
    cell[last] = 1;
  }
  void extend(const TransitionMatrix& A, HashLayer& dst) const {
    dst.base = base;
    dst.cells.clear();
    for (const auto& [k0, vals] : cells) {
      CountVector c(A.n, 0);
      std::uint64_t k = k0;
      for (int i = A.n; i-- > 0;) {
        c[i] = static_cast<long long>(k % base);
        k /= base;
      }
      for (int u = 0; u < A.n; ++u) {
        const BigInt& v = vals[u];
        if (v == 0) continue;
        for (int s = 0; s < A.n; ++s) {
          if (!A(u, s)) continue;
          ++c[s];
          auto& cell = dst.cells[key(c)];
          if (cell.empty()) cell.assign(A.n, 0);
          cell[s] += v;
          --c[s];
        }
      }
    }
  }
  BigInt query(const TransitionMatrix& A, const CountVector& counts, int next_sym) const {
    BigInt acc = 0;
    auto it = cells.find(key(counts));
    if (it != cells.end())
      for (int u = 0; u < A.n; ++u)
        if (A(u, next_sym)) acc += it->second[u];
    return acc;
  }
  std::uint64_t states() const { return cells.size() * 8; }
};

template <class Layer>
void run_weight_sweep(const TransitionMatrix& A, const std::vector<int>& symbols,
                      long n_max, const std::optional<Word>& cylinder, long l,
                      bool cyl_allowed, const CountOptions& opts, Layer layer,
                      WeightSeries& out) {
  Layer scratch = layer;
  Layer cyl_layer = layer;
  CountVector prefix_counts(A.n, 0);
  for (long n = 1; n <= n_max; ++n) {
    if (n == 1) {
      layer.clear(1);
      for (int s = 0; s < A.n; ++s) {
        CountVector c(A.n, 0);
        ++c[s];
        layer.seed(c, s);
      }
    } else {
      layer.extend(A, scratch);
      std::swap(layer, scratch);
    }
    if (layer.states() > opts.state_cap) {
      out.truncated = true;
      return;
    }
    if (cylinder && cyl_allowed && l >= 1) {
      if (n == l) {
        cyl_layer.clear(n);
        cyl_layer.seed(parikh_vector(*cylinder, A.n), cylinder->back());
      } else if (n > l) {
        cyl_layer.extend(A, scratch);
        std::swap(cyl_layer, scratch);
      }
    }
    ++prefix_counts[symbols[n - 1]];
    int next_sym = symbols[n];
    out.total[n] = layer.query(A, prefix_counts, next_sym);
    if (cylinder && n >= l) {
      if (l == 0)
        out.in_cylinder[n] = out.total[n];
      else if (cyl_allowed)
        out.in_cylinder[n] = cyl_layer.query(A, prefix_counts, next_sym);
    }
    out.computed_up_to = n;
  }
}

}  // namespace

WeightSeries weight_series(const TransitionMatrix& A, const std::vector<int>& symbols,
                           long n_max, const std::optional<Word>& cylinder,
                           const CountOptions& opts) {
  if (static_cast<long>(symbols.size()) < n_max + 1)
    throw DomainError("weight_series needs symbols up to index n_max");
  WeightSeries out;
  out.total.assign(n_max + 1, 0);
  out.total[0] = 1;
  out.computed_up_to = 0;
  long l = cylinder ? static_cast<long>(cylinder->size()) : 0;
  bool cyl_allowed = cylinder ? is_allowed(A, *cylinder) : false;
  if (cylinder) {
    if (l > n_max) throw DomainError("cylinder longer than n_max");
    out.in_cylinder.assign(n_max + 1, 0);
    if (l == 0) out.in_cylinder[0] = 1;
  }
  if (A.n == 2) {
    run_weight_sweep(A, symbols, n_max, cylinder, l, cyl_allowed, opts, DenseLayer{}, out);
  } else {
    HashLayer layer;
    layer.base = static_cast<std::uint64_t>(n_max) + 2;
    double key_span = std::pow(static_cast<double>(layer.base), A.n);
    if (key_span > 9.0e18) {
      out.truncated = true;
      return out;
    }
    run_weight_sweep(A, symbols, n_max, cylinder, l, cyl_allowed, opts, layer, out);
  }
  return out;
}

namespace {

// Constant-tail maximality certificate. For x = w . c^inf with K0 the first
// index of the constant zone, x is maximal iff
//   (a) x[0..K0) is the reverse-lex maximum of its level-K0 class, and
//   (b) no symbol s > c can ever sit at a zone position: for every t >= 1,
//       no allowed word with Parikh base + t*e_c - e_s may transition into s.
// Any walk whose c-count exceeds its non-c count by 2 contains a c-run of
// length >= 2 and stays valid when one c is removed, so feasibility over all
// t reduces to t <= (non-c total) + 2.
enum class CertVerdict { Maximal, NotMaximal, Inapplicable };

CertVerdict constant_tail_certificate(const TransitionMatrix& A, const SequencePoint& x,
                                      const CountOptions& opts) {
  const auto& period = x.tail_period.symbols;
  int c = period[0];
  for (int s : period)
    if (s != c) return CertVerdict::Inapplicable;
  long M = static_cast<long>(x.prefix.size() + x.tail_preperiod.size());
  long K0 = M;
  while (K0 > 0 && x.symbol_at(K0 - 1) == c) --K0;
  if (!A(c, c)) return CertVerdict::Inapplicable;  // cannot happen on valid points

  Word head = x.prefix_word(K0);
  if (K0 > 0) {
    WordConstraints wc;
    wc.parikh = parikh_vector(head, A.n);
    wc.next_symbol = c;
    if (next_word_in_class(A, head, wc)) return CertVerdict::NotMaximal;
  }
  CountVector base = parikh_vector(head, A.n);
  long long tcap = cv_total(base) + 2;
  for (int s = c + 1; s < A.n; ++s) {
    if (!A(s, c)) continue;
    for (long long t = 1; t <= tcap; ++t) {
      CountVector p = base;
      p[c] += t;
      if (--p[s] < 0) continue;
      WordConstraints wc;
      wc.parikh = p;
      wc.next_symbol = s;
      if (count_words(A, cv_total(p), wc, opts) > 0) return CertVerdict::NotMaximal;
    }
  }
  return CertVerdict::Maximal;
}

}  // namespace

std::optional<SequencePoint> successor(const TransitionMatrix& A, const SequencePoint& x,
                                       const AdicOptions& opts) {
  if (!x.is_valid(A)) throw DomainError("point is not an allowed sequence");
  CertVerdict cert = constant_tail_certificate(A, x, opts.count);
  if (cert == CertVerdict::Maximal) return std::nullopt;
  for (long m = 1; m <= opts.horizon; ++m) {
    Word w = x.prefix_word(m);
    WordConstraints c;
    c.parikh = parikh_vector(w, A.n);
    c.next_symbol = x.symbol_at(m);
    if (auto nw = next_word_in_class(A, w, c)) return x.with_prefix(m, nw->symbols);
  }
  throw HorizonExceeded("no successor and no maximality certificate within horizon " +
                        std::to_string(opts.horizon));
}

std::vector<SequencePoint> orbit(const TransitionMatrix& A, const SequencePoint& x,
                                 long steps, const AdicOptions& opts) {
  if (steps < 0) throw DomainError("orbit length must be >= 0");
  std::vector<SequencePoint> out{x};
  for (long i = 0; i < steps; ++i) {
    auto nxt = successor(A, out.back(), opts);
    if (!nxt) break;
    out.push_back(*nxt);
  }
  return out;
}

PsiRecoded psi_recode_golden(const Word& x) {
  PsiRecoded out;
  size_t i = 0;
  while (i < x.size()) {
    if (x[i] == 1) {
      if (i + 1 >= x.size()) {
        out.trailing_one = true;
        break;
      }
      if (x[i + 1] != 0) throw DomainError("word is not golden-mean allowed");
      out.letters.push_back('b');
      i += 2;
    } else if (x[i] == 0) {
      out.letters.push_back('a');
      i += 1;
    } else {
      throw DomainError("golden-mean words use symbols 0 and 1");
    }
  }
  return out;
}

Word psi_decode_golden(const std::string& letters) {
  Word w;
  for (char c : letters) {
    if (c == 'a') {
      w.symbols.push_back(0);
    } else if (c == 'b') {
      w.symbols.push_back(1);
      w.symbols.push_back(0);
    } else {
      throw DomainError("letter words use 'a' and 'b'");
    }
  }
  return w;
}

}  // namespace sftlab
