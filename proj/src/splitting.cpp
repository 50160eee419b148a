#include "sftlab/splitting.hpp"

#include <algorithm>
#include <queue>

#include "sftlab/errors.hpp"

namespace sftlab {

namespace {

Rational alpha_for(const SplitConfig& cfg, IntervalSide side) {
  if (!cfg.left_right_dependent) return cfg.alpha;
  return side == IntervalSide::Right ? cfg.alpha_right : cfg.alpha_left;
}

void check_config(const SplitConfig& cfg) {
  auto in_unit = [](const Rational& a) { return a > 0 && a < 1; };
  if (cfg.left_right_dependent) {
    if (!in_unit(cfg.alpha_left) || !in_unit(cfg.alpha_right))
      throw DomainError("split proportions must lie in (0,1)");
  } else if (!in_unit(cfg.alpha)) {
    throw DomainError("split proportion must lie in (0,1)");
  }
}

}  // namespace

SplitState make_split_state(const SplitConfig& config) {
  check_config(config);
  SplitState s;
  s.config = config;
  s.provenance = {IntervalSide::Initial};
  return s;
}

SplitState split_step(const SplitState& s) {
  size_t best = 0;
  Rational best_len = -1;
  for (size_t i = 0; i <= s.points.size(); ++i) {
    Rational lo = i == 0 ? Rational(0) : s.points[i - 1];
    Rational hi = i == s.points.size() ? Rational(1) : s.points[i];
    Rational len = hi - lo;
    if (len > best_len) {  // strict: keeps the leftmost of the longest
      best_len = len;
      best = i;
    }
  }
  SplitState out = s;
  Rational lo = best == 0 ? Rational(0) : s.points[best - 1];
  Rational a = alpha_for(s.config, s.provenance[best]);
  Rational cut = lo + a * best_len;
  out.points.insert(out.points.begin() + best, cut);
  out.provenance[best] = IntervalSide::Right;
  out.provenance.insert(out.provenance.begin() + best, IntervalSide::Left);
  return out;
}

Rational star_discrepancy(const std::vector<Rational>& x) {
  long N = static_cast<long>(x.size());
  if (N == 0) return 1;
  Rational best = 0;
  for (long i = 1; i <= N; ++i) {
    Rational up = Rational(i, N) - x[i - 1];
    Rational dn = x[i - 1] - Rational(i - 1, N);
    if (up > best) best = up;
    if (dn > best) best = dn;
  }
  return best;
}

double star_discrepancy_double(const std::vector<double>& x) {
  long N = static_cast<long>(x.size());
  if (N == 0) return 1;
  double best = 0;
  for (long i = 1; i <= N; ++i) {
    best = std::max(best, static_cast<double>(i) / N - x[i - 1]);
    best = std::max(best, x[i - 1] - static_cast<double>(i - 1) / N);
  }
  return best;
}

namespace {

struct Interval {
  Rational left;
  Rational length;
  IntervalSide side;
};

struct LongestFirst {
  // priority_queue keeps the *largest*; we want the longest interval, ties
  // broken by the smaller left endpoint
  bool operator()(const Interval& a, const Interval& b) const {
    if (a.length != b.length) return a.length < b.length;
    return a.left > b.left;
  }
};

}  // namespace

SplitRun run_and_discrepancy(const SplitConfig& config, long steps) {
  check_config(config);
  if (steps < 0) throw DomainError("steps must be >= 0");
  std::priority_queue<Interval, std::vector<Interval>, LongestFirst> heap;
  heap.push({Rational(0), Rational(1), IntervalSide::Initial});
  std::vector<Rational> points;
  points.reserve(steps);
  for (long k = 0; k < steps; ++k) {
    Interval iv = heap.top();
    heap.pop();
    Rational a = alpha_for(config, iv.side);
    Rational cut_len = a * iv.length;
    points.push_back(iv.left + cut_len);
    heap.push({iv.left, cut_len, IntervalSide::Left});
    heap.push({iv.left + cut_len, iv.length - cut_len, IntervalSide::Right});
  }
  std::sort(points.begin(), points.end());
  SplitRun out;
  out.state.config = config;
  out.state.points = points;
  // recover provenance from the remaining intervals, left to right
  std::vector<Interval> rest;
  while (!heap.empty()) {
    rest.push_back(heap.top());
    heap.pop();
  }
  std::sort(rest.begin(), rest.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  for (const auto& iv : rest) out.state.provenance.push_back(iv.side);
  out.discrepancy = star_discrepancy(points);
  return out;
}

SplitRunFloat run_and_discrepancy_float(const SplitConfig& config, long steps) {
  check_config(config);
  if (steps < 0) throw DomainError("steps must be >= 0");
  struct IvF {
    double left, length;
    IntervalSide side;
  };
  struct Cmp {
    bool operator()(const IvF& a, const IvF& b) const {
      if (a.length != b.length) return a.length < b.length;
      return a.left > b.left;
    }
  };
  double al = to_double(config.left_right_dependent ? config.alpha_left : config.alpha);
  double ar = to_double(config.left_right_dependent ? config.alpha_right : config.alpha);
  std::priority_queue<IvF, std::vector<IvF>, Cmp> heap;
  heap.push({0.0, 1.0, IntervalSide::Initial});
  SplitRunFloat out;
  out.points.reserve(steps);
  for (long k = 0; k < steps; ++k) {
    IvF iv = heap.top();
    heap.pop();
    double a = iv.side == IntervalSide::Right ? ar : al;
    double cut_len = a * iv.length;
    out.points.push_back(iv.left + cut_len);
    heap.push({iv.left, cut_len, IntervalSide::Left});
    heap.push({iv.left + cut_len, iv.length - cut_len, IntervalSide::Right});
  }
  std::sort(out.points.begin(), out.points.end());
  out.discrepancy = star_discrepancy_double(out.points);
  return out;
}

}  // namespace sftlab
