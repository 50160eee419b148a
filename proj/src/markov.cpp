#include "sftlab/markov.hpp"

#include <algorithm>
#include <cmath>

namespace sftlab {

std::vector<Rational> stationary_vector_exact(const TransitionMatrix& A,
                                              const std::vector<std::vector<Rational>>& P) {
  if (!A.irreducible)
    throw NotUnique("stationary vector is not unique for a reducible chain");
  int n = A.n;
  // solve x (P - I) = 0 with sum x = 1: rows of M are (P^T - I), last row ones
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = P[j][i] - (i == j ? 1 : 0);
  }
  for (int j = 0; j < n; ++j) M[n - 1][j] = 1;
  M[n - 1][n] = 1;
  // Gaussian elimination
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw NotUnique("singular stationarity system");
    std::swap(M[piv], M[row]);
    Rational inv = M[row][col];
    for (int j = col; j <= n; ++j) M[row][j] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Rational f = M[r][col];
      for (int j = col; j <= n; ++j) M[r][j] -= f * M[row][j];
    }
    ++row;
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = M[i][n];
  Rational sum = 0;
  for (const auto& v : x) sum += v;
  if (sum != 1) throw NotUnique("stationarity system has no normalized solution");
  return x;
}

std::vector<double> stationary_vector_float(const TransitionMatrix& A,
                                            const std::vector<std::vector<double>>& P) {
  if (!A.irreducible)
    throw NotUnique("stationary vector is not unique for a reducible chain");
  int n = A.n;
  std::vector<double> x(n, 1.0 / n), y(n);
  auto step = [&] {
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += x[i] * P[i][j];
      y[j] = acc;
    }
    double s = 0;
    for (double v : y) s += v;
    for (double& v : y) v /= s;
    x.swap(y);
  };
  const long max_iter = 1'000'000;
  for (long it = 0; it < max_iter; ++it) {
    step();
    double diff = 0;
    for (int j = 0; j < n; ++j) diff = std::max(diff, std::fabs(x[j] - y[j]));
    if (diff < 1e-15) break;
  }
  step();  // one refinement pass after convergence
  double res = 0;
  for (int j = 0; j < n; ++j) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += x[i] * P[i][j];
    res = std::max(res, std::fabs(acc - x[j]));
  }
  if (res > 1e-12) throw NoConvergence("stationary iteration residual above 1e-12");
  return x;
}

namespace {

void check_compatible_exact(const TransitionMatrix& A,
                            const std::vector<std::vector<Rational>>& P) {
  if (static_cast<int>(P.size()) != A.n) throw DomainError("P has wrong size");
  for (int i = 0; i < A.n; ++i) {
    if (static_cast<int>(P[i].size()) != A.n) throw DomainError("P has wrong size");
    Rational row = 0;
    for (int j = 0; j < A.n; ++j) {
      if ((P[i][j] > 0) != (A(i, j) == 1))
        throw DomainError("P is not compatible with A");
      if (P[i][j] < 0) throw DomainError("P has a negative entry");
      row += P[i][j];
    }
    if (row != 1) throw DomainError("row " + std::to_string(i) + " of P does not sum to 1");
  }
}

void check_compatible_float(const TransitionMatrix& A,
                            const std::vector<std::vector<double>>& P) {
  if (static_cast<int>(P.size()) != A.n) throw DomainError("P has wrong size");
  for (int i = 0; i < A.n; ++i) {
    if (static_cast<int>(P[i].size()) != A.n) throw DomainError("P has wrong size");
    double row = 0;
    for (int j = 0; j < A.n; ++j) {
      if ((P[i][j] > 0) != (A(i, j) == 1))
        throw DomainError("P is not compatible with A");
      if (P[i][j] < 0) throw DomainError("P has a negative entry");
      row += P[i][j];
    }
    if (std::fabs(row - 1) > 1e-9)
      throw DomainError("row " + std::to_string(i) + " of P does not sum to 1");
  }
}

}  // namespace

MarkovSpec make_markov_exact(const TransitionMatrix& A,
                             std::vector<std::vector<Rational>> P,
                             std::optional<std::vector<Rational>> initial,
                             MeasureTag tag) {
  check_compatible_exact(A, P);
  MarkovSpec spec;
  spec.A = A;
  spec.mode = NumMode::Exact;
  spec.tag = tag;
  spec.P_q = std::move(P);
  switch (tag) {
    case MeasureTag::Stationary: {
      auto pbar = stationary_vector_exact(A, spec.P_q);
      if (initial && *initial != pbar)
        throw DomainError("supplied initial distribution is not stationary");
      spec.initial_q = pbar;
      break;
    }
    case MeasureTag::OneSidedUniform:
      spec.initial_q.assign(A.n, Rational(1, A.n));
      break;
    case MeasureTag::General: {
      if (!initial) throw DomainError("general spec needs an initial distribution");
      Rational s = 0;
      for (const auto& v : *initial) s += v;
      if (static_cast<int>(initial->size()) != A.n || s != 1)
        throw DomainError("initial distribution must be a probability vector");
      spec.initial_q = *initial;
      break;
    }
  }
  return spec;
}

MarkovSpec make_markov_float(const TransitionMatrix& A,
                             std::vector<std::vector<double>> P,
                             std::optional<std::vector<double>> initial, MeasureTag tag) {
  check_compatible_float(A, P);
  MarkovSpec spec;
  spec.A = A;
  spec.mode = NumMode::Float;
  spec.tag = tag;
  spec.P_f = std::move(P);
  switch (tag) {
    case MeasureTag::Stationary:
      spec.initial_f = stationary_vector_float(A, spec.P_f);
      break;
    case MeasureTag::OneSidedUniform:
      spec.initial_f.assign(A.n, 1.0 / A.n);
      break;
    case MeasureTag::General: {
      if (!initial) throw DomainError("general spec needs an initial distribution");
      double s = 0;
      for (double v : *initial) s += v;
      if (static_cast<int>(initial->size()) != A.n || std::fabs(s - 1) > 1e-9)
        throw DomainError("initial distribution must be a probability vector");
      spec.initial_f = *initial;
      break;
    }
  }
  return spec;
}

MarkovSpec bernoulli_exact(const std::vector<Rational>& probs) {
  int n = static_cast<int>(probs.size());
  TransitionMatrix A = full_shift(n);
  std::vector<std::vector<Rational>> P(n, probs);
  return make_markov_exact(A, std::move(P), std::nullopt, MeasureTag::Stationary);
}

MarkovSpec bernoulli_float(const std::vector<double>& probs) {
  int n = static_cast<int>(probs.size());
  TransitionMatrix A = full_shift(n);
  std::vector<std::vector<double>> P(n, probs);
  return make_markov_float(A, std::move(P), std::nullopt, MeasureTag::Stationary);
}

MarkovSpec to_float(const MarkovSpec& spec) {
  if (spec.mode == NumMode::Float) return spec;
  MarkovSpec out;
  out.A = spec.A;
  out.mode = NumMode::Float;
  out.tag = spec.tag;
  out.P_f.assign(spec.A.n, std::vector<double>(spec.A.n, 0));
  for (int i = 0; i < spec.A.n; ++i)
    for (int j = 0; j < spec.A.n; ++j) out.P_f[i][j] = to_double(spec.P_q[i][j]);
  out.initial_f.resize(spec.A.n);
  for (int i = 0; i < spec.A.n; ++i) out.initial_f[i] = to_double(spec.initial_q[i]);
  return out;
}

MeasureValue cylinder_measure(const MarkovSpec& spec, const Word& C) {
  if (spec.tag != MeasureTag::Stationary && C.start_position != 0)
    throw DomainError("non-stationary cylinder measures are anchored at position 0");
  MeasureValue out;
  out.mode = spec.mode;
  if (C.empty()) {
    out.q = 1;
    out.f = 1;
    return out;
  }
  if (!is_allowed(spec.A, C)) {
    out.q = 0;
    out.f = 0;
    return out;
  }
  if (spec.mode == NumMode::Exact) {
    Rational v = spec.initial_q[C[0]];
    for (size_t i = 0; i + 1 < C.size(); ++i) v *= spec.P_q[C[i]][C[i + 1]];
    out.q = v;
    out.f = to_double(v);
  } else {
    double v = spec.initial_f[C[0]];
    for (size_t i = 0; i + 1 < C.size(); ++i) v *= spec.P_f[C[i]][C[i + 1]];
    out.f = v;
  }
  return out;
}

double Potential::value_f(const std::vector<int>& block) const {
  auto it = table_f.find(block);
  if (it == table_f.end()) throw DomainError("potential table is missing a block");
  return it->second;
}

Rational Potential::value_q(const std::vector<int>& block) const {
  if (mode != NumMode::Exact) throw DomainError("potential is not in exact mode");
  auto it = table_q.find(block);
  if (it == table_q.end()) throw DomainError("potential table is missing a block");
  return it->second;
}

namespace {

void check_table_domain(const TransitionMatrix& A, int range,
                        const std::vector<std::vector<int>>& keys) {
  if (range < 1) throw DomainError("potential range must be >= 1");
  auto blocks = enumerate_words(A, range, {});
  if (blocks.size() != keys.size())
    throw DomainError("potential table must cover exactly the allowed blocks");
  for (const auto& b : blocks) {
    if (!std::binary_search(keys.begin(), keys.end(), b.symbols))
      throw DomainError("potential table is missing block " + word_to_string(b));
  }
}

}  // namespace

Potential make_potential_exact(const TransitionMatrix& A, int range,
                               std::map<std::vector<int>, Rational> table) {
  std::vector<std::vector<int>> keys;
  for (const auto& [k, v] : table) keys.push_back(k);
  check_table_domain(A, range, keys);
  Potential phi;
  phi.A = A;
  phi.range = range;
  phi.mode = NumMode::Exact;
  phi.table_q = std::move(table);
  for (const auto& [k, v] : phi.table_q) phi.table_f[k] = to_double(v);
  return phi;
}

Potential make_potential_float(const TransitionMatrix& A, int range,
                               std::map<std::vector<int>, double> table) {
  std::vector<std::vector<int>> keys;
  for (const auto& [k, v] : table) keys.push_back(k);
  check_table_domain(A, range, keys);
  Potential phi;
  phi.A = A;
  phi.range = range;
  phi.mode = NumMode::Float;
  phi.table_f = std::move(table);
  return phi;
}

Potential constant_potential(const TransitionMatrix& A, double value) {
  std::map<std::vector<int>, double> t;
  for (int s = 0; s < A.n; ++s) t[{s}] = value;
  return make_potential_float(A, 1, std::move(t));
}

Potential log_p_potential(const MarkovSpec& spec) {
  std::map<std::vector<int>, double> t;
  for (int i = 0; i < spec.A.n; ++i)
    for (int j = 0; j < spec.A.n; ++j)
      if (spec.A(i, j)) t[{i, j}] = std::log(spec.p(i, j));
  return make_potential_float(spec.A, 2, std::move(t));
}

Potential lift_to_range2(const Potential& phi) {
  if (phi.range != 1) throw DomainError("lift_to_range2 expects a range-1 potential");
  Potential out;
  out.A = phi.A;
  out.range = 2;
  out.mode = phi.mode;
  for (int i = 0; i < phi.A.n; ++i)
    for (int j = 0; j < phi.A.n; ++j)
      if (phi.A(i, j)) {
        out.table_f[{i, j}] = phi.value_f({i});
        if (phi.mode == NumMode::Exact) out.table_q[{i, j}] = phi.table_q.at({i});
      }
  return out;
}

std::vector<double> variation_sequence(const Potential& phi) {
  int r = phi.range;
  auto blocks = enumerate_words(phi.A, r, {});
  std::vector<double> omega(r + 1, 0);
  for (int k = 0; k <= r; ++k) {
    double m = 0;
    for (size_t a = 0; a < blocks.size(); ++a)
      for (size_t b = a + 1; b < blocks.size(); ++b) {
        bool agree = true;
        for (int i = 0; i < k && agree; ++i)
          agree = blocks[a].symbols[i] == blocks[b].symbols[i];
        if (!agree) continue;
        m = std::max(m, std::fabs(phi.value_f(blocks[a].symbols) -
                                  phi.value_f(blocks[b].symbols)));
      }
    omega[k] = m;
  }
  return omega;
}

LogValue radon_nikodym(const Potential& phi, const SequencePoint& x,
                       const SequencePoint& x2) {
  auto k0 = x.agreement_index(x2);
  if (!k0) throw NotHomoclinic("points are not tail-equivalent");
  long K = *k0;
  int r = phi.range;
  LogValue out;
  auto window = [&](const SequencePoint& p, long k) {
    std::vector<int> w(r);
    for (int i = 0; i < r; ++i) w[i] = p.symbol_at(k + i);
    return w;
  };
  if (phi.mode == NumMode::Exact) {
    Rational acc = 0;
    for (long k = 0; k < K; ++k) acc += phi.value_q(window(x, k)) - phi.value_q(window(x2, k));
    out.exact = acc;
    out.approx = to_double(acc);
    return out;
  }
  std::vector<double> lhs, rhs;
  lhs.reserve(K);
  rhs.reserve(K);
  for (long k = 0; k < K; ++k) {
    lhs.push_back(phi.value_f(window(x, k)));
    rhs.push_back(phi.value_f(window(x2, k)));
  }
  // summing each side in sorted order makes permuted windows cancel exactly
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  double a = 0, b = 0;
  for (double v : lhs) a += v;
  for (double v : rhs) b += v;
  out.approx = a - b;
  return out;
}

PerronData perron(const std::vector<std::vector<double>>& B, const PerronOptions& opts) {
  int n = static_cast<int>(B.size());
  if (n < 1) throw DomainError("empty matrix");
  for (const auto& row : B) {
    if (static_cast<int>(row.size()) != n) throw DomainError("matrix must be square");
    for (double v : row)
      if (v < 0) throw DomainError("Perron iteration needs a nonnegative matrix");
  }
  auto iterate = [&](bool transpose) {
    std::vector<double> x(n, 1.0), y(n);
    double lambda = 0;
    bool done = false;
    for (long it = 0; it < opts.max_iterations && !done; ++it) {
      for (int i = 0; i < n; ++i) {
        double acc = 0;
        for (int j = 0; j < n; ++j) acc += (transpose ? B[j][i] : B[i][j]) * x[j];
        y[i] = acc;
      }
      double norm = 0;
      for (double v : y) norm += std::fabs(v);
      if (norm == 0) throw NoConvergence("matrix annihilated the iterate");
      for (double& v : y) v /= norm;
      double diff = 0;
      for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[i] - x[i]));
      x.swap(y);
      lambda = norm;
      done = diff < 1e-15;
    }
    if (!done) throw NoConvergence("power iteration did not converge");
    return std::make_pair(lambda, x);
  };
  auto [lr, right] = iterate(false);
  auto [ll, left] = iterate(true);
  PerronData out;
  out.lambda = (lr + ll) / 2;
  out.right = right;
  out.left = left;
  // normalize: sum of right = 1, left . right = 1
  double rs = 0;
  for (double v : out.right) rs += v;
  for (double& v : out.right) v /= rs;
  double dot = 0;
  for (int i = 0; i < n; ++i) dot += out.left[i] * out.right[i];
  for (double& v : out.left) v /= dot;
  double res = 0;
  for (int i = 0; i < n; ++i) {
    double br = 0, lb = 0;
    for (int j = 0; j < n; ++j) {
      br += B[i][j] * out.right[j];
      lb += out.left[j] * B[j][i];
    }
    res = std::max(res, std::fabs(br - out.lambda * out.right[i]));
    res = std::max(res, std::fabs(lb - out.lambda * out.left[i]));
  }
  out.residual = res;
  if (res > opts.tolerance)
    throw NoConvergence("Perron residual " + format_double(res) + " above tolerance");
  return out;
}

MarkovSpec gibbs_from_potential(const TransitionMatrix& A, const Potential& phi_in,
                                const PerronOptions& opts) {
  if (!A.irreducible || !A.aperiodic())
    throw DomainError("Gibbs construction needs an irreducible aperiodic matrix");
  if (phi_in.range > 2) throw DomainError("potential range must be <= 2");
  Potential phi = phi_in.range == 1 ? lift_to_range2(phi_in) : phi_in;
  int n = A.n;
  std::vector<std::vector<double>> B(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A(i, j)) B[i][j] = std::exp(phi.value_f({i, j}));
  PerronData pd = perron(B, opts);
  std::vector<std::vector<double>> P(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A(i, j)) P[i][j] = B[i][j] * pd.right[j] / (pd.lambda * pd.right[i]);
  return make_markov_float(A, std::move(P), std::nullopt, MeasureTag::Stationary);
}

}  // namespace sftlab
