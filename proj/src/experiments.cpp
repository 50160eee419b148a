#include "sftlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sftlab/rng.hpp"
#include "sftlab/splitting.hpp"

namespace sftlab {

std::vector<int> sample_prefix(const MarkovSpec& spec, long len, SampleRng& rng) {
  std::vector<int> out;
  if (len <= 0) return out;
  out.reserve(len);
  int n = spec.A.n;
  std::vector<double> init(n), row(n);
  for (int i = 0; i < n; ++i) init[i] = spec.init(i);
  out.push_back(rng.categorical(init));
  for (long k = 1; k < len; ++k) {
    int cur = out.back();
    for (int j = 0; j < n; ++j) row[j] = spec.p(cur, j);
    out.push_back(rng.categorical(row));
  }
  return out;
}

void finalize_report(ExperimentReport& r) {
  if (r.series.empty()) return;
  size_t q = std::max<size_t>(1, r.series.size() / 4);
  double sum = 0, maxerr = 0;
  for (size_t i = r.series.size() - q; i < r.series.size(); ++i) sum += r.series[i].second;
  r.limit_estimate = sum / q;
  double ref = r.target ? *r.target : r.limit_estimate;
  for (size_t i = r.series.size() - q; i < r.series.size(); ++i)
    maxerr = std::max(maxerr, std::fabs(r.series[i].second - ref));
  r.max_abs_error_tail = maxerr;
}

ExperimentReport ratio_limit_experiment(const TransitionMatrix& A, const MarkovSpec& measure,
                                        const Word& C, std::uint64_t seed, long n_max,
                                        const ExperimentOptions& opts) {
  if (measure.A.entries != A.entries)
    throw DomainError("measure is not defined on the given shift space");
  if (!is_allowed(A, C)) throw DomainError("cylinder word is not allowed");
  long l = static_cast<long>(C.size());
  if (n_max < l) throw DomainError("n_max must be at least the cylinder length");
  ExperimentReport r;
  r.rng_seed = seed;
  r.target = cylinder_measure(measure, C).as_double();
  SampleRng rng(seed);
  std::vector<int> y = sample_prefix(measure, n_max + 1, rng);
  WeightSeries ws = weight_series(A, y, n_max, C, opts.count);
  r.truncated = ws.truncated;
  long upto = ws.truncated ? ws.computed_up_to : n_max;
  for (long n = l; n <= upto; ++n) {
    if (ws.total[n] == 0) continue;  // cannot happen: y's own prefix counts
    Rational v(ws.in_cylinder[n], ws.total[n]);
    r.series.emplace_back(n, to_double(v));
  }
  finalize_report(r);
  return r;
}

Rational pascal_ratio_closed_form(long n, long m, const CountVector& y_counts,
                                  const CountVector& j_counts) {
  if (y_counts.size() != 2 || j_counts.size() != 2)
    throw DomainError("closed form is for the 2-symbol Pascal case");
  if (cv_total(y_counts) != n || cv_total(j_counts) != m) return 0;
  if (m > n) return 0;
  for (int i = 0; i < 2; ++i)
    if (j_counts[i] < 0 || j_counts[i] > y_counts[i]) return 0;
  BigInt den = binomial(n, y_counts[0]);
  if (den == 0) return 0;
  return Rational(binomial(n - m, y_counts[0] - j_counts[0]), den);
}

namespace {

// exact weighted DP over (Parikh vector, last symbol) with integer weights:
// every P entry is scaled by the common denominator D, initial weights by D0
struct ScaledChain {
  int n = 0;
  BigInt D = 1, D0 = 1;
  std::vector<std::vector<BigInt>> P;  // P_int[i][j] = P(i,j) * D
  std::vector<BigInt> init;            // init_int[i] = initial(i) * D0

  explicit ScaledChain(const MarkovSpec& spec) {
    if (spec.mode != NumMode::Exact)
      throw DomainError("exact experiment needs an exact-mode Markov spec");
    n = spec.A.n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) D = lcm(D, BigInt(denominator(spec.P_q[i][j])));
      D0 = lcm(D0, BigInt(denominator(spec.initial_q[i])));
    }
    P.assign(n, std::vector<BigInt>(n, 0));
    init.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      init[i] = numerator(spec.initial_q[i]) * (D0 / denominator(spec.initial_q[i]));
      for (int j = 0; j < n; ++j)
        P[i][j] = numerator(spec.P_q[i][j]) * (D / denominator(spec.P_q[i][j]));
    }
  }
};

using CountLayer = std::map<CountVector, std::vector<BigInt>>;

// one transition step: weights move along allowed edges with P_int factors
CountLayer advance(const TransitionMatrix& A, const ScaledChain& ch, const CountLayer& layer) {
  CountLayer next;
  for (const auto& [counts, vals] : layer) {
    for (int u = 0; u < ch.n; ++u) {
      if (vals[u] == 0) continue;
      for (int v = 0; v < ch.n; ++v) {
        if (!A(u, v) || ch.P[u][v] == 0) continue;
        CountVector c = counts;
        ++c[v];
        auto& cell = next[c];
        if (cell.empty()) cell.assign(ch.n, 0);
        cell[v] += vals[u] * ch.P[u][v];
      }
    }
  }
  return next;
}

}  // namespace

DefinettiResult definetti_conditional_experiment(const TransitionMatrix& A,
                                                 const MarkovSpec& measure, int block_length,
                                                 long n, std::uint64_t seed,
                                                 const ExperimentOptions& opts) {
  (void)opts;
  if (measure.A.entries != A.entries)
    throw DomainError("measure is not defined on the given shift space");
  if (block_length < 1 || block_length > n)
    throw DomainError("block length must lie in [1, n]");
  ScaledChain ch(measure);
  DefinettiResult out;
  out.report.rng_seed = seed;
  SampleRng rng(seed);
  std::vector<int> y = sample_prefix(measure, n + 1, rng);
  out.next_symbol = y[n];
  out.counts.assign(A.n, 0);
  for (long k = 0; k < n; ++k) ++out.counts[y[k]];

  auto blocks = enumerate_words(A, block_length, {});
  std::sort(blocks.begin(), blocks.end(),
            [](const Word& a, const Word& b) { return a.symbols < b.symbols; });
  // numerator(B) = sum over words w of length n with prefix B and
  // Parikh(w) = counts of init(w_0) prod P * P(w_{n-1}, y_n), scaled
  std::vector<BigInt> numer(blocks.size(), 0);
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const Word& B = blocks[bi];
    CountVector bc = parikh_vector(B, A.n);
    bool fits = true;
    for (int i = 0; i < A.n && fits; ++i) fits = bc[i] <= out.counts[i];
    if (!fits) continue;
    BigInt w0 = ch.init[B[0]];
    for (size_t k = 0; k + 1 < B.size(); ++k) w0 *= ch.P[B[k]][B[k + 1]];
    if (w0 == 0) continue;
    CountLayer layer;
    layer[bc] = std::vector<BigInt>(A.n, 0);
    layer[bc][B.back()] = w0;
    for (long step = block_length; step < n; ++step) layer = advance(A, ch, layer);
    auto it = layer.find(out.counts);
    if (it == layer.end()) continue;
    BigInt acc = 0;
    for (int u = 0; u < A.n; ++u)
      if (A(u, y[n])) acc += it->second[u] * ch.P[u][y[n]];
    numer[bi] = acc;
  }
  BigInt denom = 0;
  for (const BigInt& v : numer) denom += v;
  if (denom == 0) throw DomainError("sampled class has measure zero");
  double maxdev = 0;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    DefinettiRow row;
    row.block = blocks[bi];
    row.conditional = Rational(numer[bi], denom);
    row.unconditional = cylinder_measure(measure, blocks[bi]).q;
    maxdev = std::max(maxdev, std::fabs(to_double(row.conditional - row.unconditional)));
    out.report.series.emplace_back(static_cast<long>(bi), to_double(row.conditional));
    out.rows.push_back(std::move(row));
  }
  out.report.max_abs_error_tail = maxdev;
  return out;
}

Rational q_value(const MarkovSpec& spec, int i, int j, const CountVector& s,
                 const ExperimentOptions& opts) {
  (void)opts;
  ScaledChain ch(spec);
  if (i < 0 || i >= ch.n || j < 0 || j >= ch.n)
    throw DomainError("symbol out of range");
  if (static_cast<int>(s.size()) != ch.n) throw DomainError("count vector has wrong size");
  long m = cv_total(s) - 1;
  if (m < 0) throw DomainError("count vector must have total >= 1");
  for (long long e : s)
    if (e < 0) return 0;
  if (s[i] < 1) return 0;
  CountLayer layer;
  CountVector c0(ch.n, 0);
  ++c0[i];
  layer[c0] = std::vector<BigInt>(ch.n, 0);
  layer[c0][i] = 1;
  for (long step = 0; step < m; ++step) layer = advance(spec.A, ch, layer);
  auto it = layer.find(s);
  if (it == layer.end()) return 0;
  BigInt pw = 1;
  for (long k = 0; k < m; ++k) pw *= ch.D;
  return Rational(it->second[j], pw);
}

std::vector<QTableEntry> q_table(const MarkovSpec& spec, long m,
                                 const ExperimentOptions& opts) {
  (void)opts;
  if (m < 1) throw DomainError("Q table level must be >= 1");
  ScaledChain ch(spec);
  BigInt pw = 1;
  for (long k = 0; k < m; ++k) pw *= ch.D;
  std::vector<QTableEntry> out;
  for (int i = 0; i < ch.n; ++i) {
    CountLayer layer;
    CountVector c0(ch.n, 0);
    ++c0[i];
    layer[c0] = std::vector<BigInt>(ch.n, 0);
    layer[c0][i] = 1;
    for (long step = 0; step < m; ++step) layer = advance(spec.A, ch, layer);
    for (const auto& [counts, vals] : layer)
      for (int j = 0; j < ch.n; ++j)
        if (vals[j] != 0) {
          QTableEntry e;
          e.i = i;
          e.j = j;
          e.s = counts;
          e.value = Rational(vals[j], pw);
          out.push_back(std::move(e));
        }
  }
  return out;
}

ExperimentReport amnesia_experiment(const MarkovSpec& spec, const CountVector& s1,
                                    const CountVector& s2, std::uint64_t seed, long m_max,
                                    const ExperimentOptions& opts) {
  (void)opts;
  ScaledChain ch(spec);
  for (int i = 0; i < spec.A.n; ++i)
    for (int j = 0; j < spec.A.n; ++j)
      if (!spec.A(i, j))
        throw DomainError("amnesia experiment is a full-shift statement");
  auto endpoint = [&](const CountVector& s) {
    WordConstraints c;
    c.parikh = s;
    auto w = min_word_in_class(spec.A, cv_total(s), c);
    if (!w) throw DomainError("no allowed word with the requested Parikh vector");
    return w->back();
  };
  long L1 = cv_total(s1), L2 = cv_total(s2);
  if (L1 < 1 || L2 < 1) throw DomainError("Parikh vectors must be nonempty");
  int i1 = endpoint(s1), i2 = endpoint(s2);

  ExperimentReport r;
  r.rng_seed = seed;
  r.target = 1.0;
  SampleRng rng(seed);
  std::vector<int> x = sample_prefix(spec, m_max + 1, rng);

  // Advance both Q sweeps in lockstep over the experiment level m. A
  // cylinder C' of length L ending in i' leaves m - L + 1 transitions up to
  // position m, and the Q path counts its own start symbol, so the layer key
  // is counts(x[0..m+1)) - s' + e_{i'}.
  CountLayer lay1, lay2;
  auto seed_layer = [&](int i) {
    CountLayer l;
    CountVector c0(ch.n, 0);
    ++c0[i];
    l[c0] = std::vector<BigInt>(ch.n, 0);
    l[c0][i] = 1;
    return l;
  };
  lay1 = seed_layer(i1);
  lay2 = seed_layer(i2);
  long t1 = 0, t2 = 0;  // transitions advanced so far in each sweep
  CountVector counts(ch.n, 0);
  BigInt Dpow1 = 1, Dpow2 = 1;
  for (long m = 0; m <= m_max; ++m) {
    ++counts[x[m]];  // counts of x[0..m+1)
    long want1 = m - L1 + 1, want2 = m - L2 + 1;
    if (want1 < 1 || want2 < 1) continue;
    while (t1 < want1) {
      lay1 = advance(spec.A, ch, lay1);
      Dpow1 *= ch.D;
      ++t1;
    }
    while (t2 < want2) {
      lay2 = advance(spec.A, ch, lay2);
      Dpow2 *= ch.D;
      ++t2;
    }
    auto fetch = [&](const CountLayer& lay, const CountVector& sref, int iref) -> BigInt {
      CountVector arg = counts;
      bool ok = true;
      for (int i = 0; i < ch.n; ++i) {
        arg[i] -= sref[i];
        if (i == iref) ++arg[i];
        ok &= arg[i] >= 0;
      }
      if (!ok) return 0;
      auto it = lay.find(arg);
      if (it == lay.end()) return 0;
      return it->second[x[m]];
    };
    BigInt num = fetch(lay1, s1, i1), den = fetch(lay2, s2, i2);
    if (den == 0) {
      r.skipped.push_back(m);
      continue;
    }
    // Q1/Q2 = (num/ (D^{t1} )) / (den / (D^{t2}))
    Rational ratio = Rational(num * Dpow2, den * Dpow1);
    r.series.emplace_back(m, to_double(ratio));
  }
  finalize_report(r);
  return r;
}

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long mulmod(long long a, long long b, long long p) {
  return static_cast<long long>((__int128)a * b % p);
}

long long powmod(long long a, long long e, long long p) {
  long long r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// C(a,b) mod p for 0 <= a,b < p, p prime
long long small_binom_mod(long long a, long long b, long long p) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long num = 1, den = 1;
  for (long long i = 1; i <= b; ++i) {
    num = mulmod(num, (a - b + i) % p, p);
    den = mulmod(den, i % p, p);
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

}  // namespace

long long binomial_mod_prime(long long m, long long k, long long p) {
  if (!is_prime(p)) throw DomainError("modulus must be prime");
  if (k < 0 || k > m) return 0;
  long long r = 1;
  while (m > 0 || k > 0) {
    long long md = m % p, kd = k % p;
    if (kd > md) return 0;
    r = mulmod(r, small_binom_mod(md, kd, p), p);
    m /= p;
    k /= p;
  }
  return r;
}

WeakmixResult weakmix_exploration(const Rational& alpha, const Rational& theta, long m_max,
                                  std::uint64_t seed) {
  if (alpha <= 0 || alpha >= 1) throw DomainError("alpha must lie in (0,1)");
  if (theta < 0) throw DomainError("theta must be >= 0");
  if (m_max < 1) throw DomainError("m_max must be >= 1");
  WeakmixResult out;
  out.report.rng_seed = seed;
  SampleRng rng(seed);
  double a = to_double(alpha);

  BigInt num = numerator(theta), den = denominator(theta);
  BigInt w = 1;  // C(m, zeros)
  long zeros = 0;
  std::vector<double> parts;
  parts.reserve(m_max);
  for (long m = 1; m <= m_max; ++m) {
    int s = rng.uniform01() < a ? 0 : 1;
    // binomial update along the sampled Pascal path
    if (s == 0) {
      w = w * m / (zeros + 1);
      ++zeros;
    } else {
      w = w * m / (m - zeros);
    }
    BigInt res = (num * w) % den;
    Rational frac(res, den);
    double v = to_double(frac);
    parts.push_back(v);
    out.report.series.emplace_back(m, v);
  }
  out.report.target = std::nullopt;
  finalize_report(out.report);
  size_t q = std::max<size_t>(1, parts.size() / 4);
  double mind = 1;
  for (size_t i = parts.size() - q; i < parts.size(); ++i)
    mind = std::min(mind, std::min(parts[i], 1 - parts[i]));
  out.min_tail_distance_to_zero = mind;
  std::sort(parts.begin(), parts.end());
  out.discrepancy = star_discrepancy_double(parts);
  return out;
}

}  // namespace sftlab
