#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracle.hpp"
#include "sftlab/adic.hpp"

using namespace sftlab;

namespace {

const TransitionMatrix kGolden = golden_mean();
const TransitionMatrix kFull2 = full_shift(2);
const TransitionMatrix kFull3 = full_shift(3);

std::vector<int> repeat(int s, long k) { return std::vector<int>(k, s); }

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

SequencePoint point_with_prefix(std::vector<int> prefix, const std::string& period) {
  SequencePoint p;
  p.prefix = Word{std::move(prefix)};
  p.tail_period = word_from_string(period);
  return p;
}

std::vector<CountVector> all_parikh2(long total) {
  std::vector<CountVector> out;
  for (long k = 0; k <= total; ++k) out.push_back({k, total - k});
  return out;
}

}  // namespace

TEST_CASE("pascal_weight") {
  CHECK(pascal_weight({2, 2}) == 6);
  CHECK(pascal_weight({7, 0, 0}) == 1);
  CHECK(pascal_weight({1, 1, 1}) == 6);
  CHECK(pascal_weight({}) == 1);
  CHECK_THROWS_AS(pascal_weight({-1, 2}), DomainError);
}

TEST_CASE("sft_weight: golden mean spot value and full-shift reduction") {
  WeightQuery q{3, {2, 1}, 0};
  WordConstraints c;
  c.parikh = q.parikh;
  c.next_symbol = 0;
  BigInt expect = oracle::all_words(kGolden.entries, 3, c).size();
  CHECK(sft_weight(kGolden, q) == expect);
  CHECK(expect == 3);

  // no adjacency constraint: the weight is the multinomial, m <= 10
  for (long m = 0; m <= 10; ++m)
    for (const auto& p : all_parikh2(m)) {
      WeightQuery fq{m, p, 1};
      CHECK(sft_weight(kFull2, fq) == pascal_weight(p));
    }
  WeightQuery zq{0, {0, 0}, 0};
  CHECK(sft_weight(kFull2, zq) == 1);
}

TEST_CASE("sft_weight_in_cylinder") {
  // empty cylinder reduces to the plain weight
  for (long m = 0; m <= 6; ++m)
    for (const auto& p : all_parikh2(m)) {
      WeightQuery q{m, p, 0};
      CHECK(sft_weight_in_cylinder(kGolden, q, Word{}) == sft_weight(kGolden, q));
    }

  // Pascal ratio identity on the full 2-shift (spot checks; swept in acceptance)
  for (long n : {5L, 12L, 37L, 60L}) {
    for (long y0 : {0L, 1L, n / 3, n / 2, n}) {
      for (long m : {0L, 1L, n / 4, n}) {
        for (long j0 = std::max(0L, m - (n - y0)); j0 <= std::min(m, y0); ++j0) {
          Word C{concat({repeat(0, j0), repeat(1, m - j0)})};
          WeightQuery q{n, {y0, n - y0}, 0};
          BigInt lhs = sft_weight_in_cylinder(kFull2, q, C) * binomial(n, y0);
          BigInt rhs = binomial(n - m, y0 - j0) * sft_weight(kFull2, q);
          CHECK(lhs == rhs);
        }
      }
    }
  }

  // cylinder exceeding its Parikh budget
  WeightQuery q{4, {2, 2}, 0};
  CHECK(sft_weight_in_cylinder(kFull2, q, word_from_string("000")) == 0);
  // disallowed cylinder
  CHECK(sft_weight_in_cylinder(kGolden, q, word_from_string("110")) == 0);
}

TEST_CASE("weight_series matches individual weight queries") {
  for (const TransitionMatrix* A : {&kFull2, &kGolden, &kFull3}) {
    // a deterministic allowed path
    std::vector<int> y;
    int cur = 0;
    y.push_back(cur);
    for (long k = 1; k <= 14; ++k) {
      int pick = -1;
      if (k % 3 == 0) {
        for (int s = A->n - 1; s >= 0; --s)
          if ((*A)(cur, s)) {
            pick = s;
            break;
          }
      } else {
        for (int s = 0; s < A->n; ++s)
          if ((*A)(cur, s)) {
            pick = s;
            break;
          }
      }
      y.push_back(pick);
      cur = pick;
    }
    Word C;
    C.symbols = {y[0], y[1]};
    auto ws = weight_series(*A, y, 12, C);
    REQUIRE_FALSE(ws.truncated);
    for (long n = 0; n <= 12; ++n) {
      CountVector counts(A->n, 0);
      for (long k = 0; k < n; ++k) ++counts[y[k]];
      WeightQuery q{n, counts, y[n]};
      CHECK(ws.total[n] == sft_weight(*A, q));
      if (n >= 2) CHECK(ws.in_cylinder[n] == sft_weight_in_cylinder(*A, q, C));
    }
  }
}

TEST_CASE("in-cylinder weights summed over prefixes equal the total") {
  std::vector<int> y = {0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0};
  for (long l = 0; l <= 3; ++l) {
    for (long n = std::max(l, 1L); n <= 10; ++n) {
      CountVector counts(2, 0);
      for (long k = 0; k < n; ++k) ++counts[y[k]];
      WeightQuery q{n, counts, y[n]};
      BigInt total = 0;
      for (const auto& w : enumerate_words(kGolden, l, {}))
        total += sft_weight_in_cylinder(kGolden, q, w);
      CHECK(total == sft_weight(kGolden, q));
    }
  }
}

TEST_CASE("successor reproduces the full-shift rule") {
  for (long p = 0; p <= 5; ++p)
    for (long q = 0; q <= 5; ++q) {
      for (const std::string& period : {"0", "01", "1"}) {
        SequencePoint x =
            point_with_prefix(concat({repeat(0, p), repeat(1, q), {1, 0}}), period);
        auto s = successor(kFull2, x);
        REQUIRE(s.has_value());
        std::vector<int> want = concat({repeat(1, q), repeat(0, p), {0, 1}});
        CHECK(s->prefix_word(p + q + 2).symbols == want);
        for (long k = p + q + 2; k < p + q + 12; ++k)
          CHECK(s->symbol_at(k) == x.symbol_at(k));
      }
    }
}

TEST_CASE("successor reproduces the golden-mean rule") {
  for (long p = 0; p <= 4; ++p)
    for (long q = 1; q <= 3; ++q) {
      std::vector<int> ten;
      for (long i = 0; i < q; ++i) {
        ten.push_back(1);
        ten.push_back(0);
      }
      SequencePoint x = point_with_prefix(concat({repeat(0, p), ten, {1, 0, 0}}), "0");
      REQUIRE(x.is_valid(kGolden));
      auto s = successor(kGolden, x);
      REQUIRE(s.has_value());
      std::vector<int> want = concat({ten, repeat(0, p), {0, 1, 0}});
      CHECK(s->prefix_word(p + 2 * q + 3).symbols == want);
      for (long k = p + 2 * q + 3; k < p + 2 * q + 13; ++k)
        CHECK(s->symbol_at(k) == x.symbol_at(k));
    }
}

TEST_CASE("maximal points") {
  // the all-ones point tops the full 2-shift
  CHECK_FALSE(successor(kFull2, make_point("", "", "1")).has_value());
  // non-decreasing full-shift points are maximal
  CHECK_FALSE(successor(kFull3, make_point("0112", "", "2")).has_value());
  // a single 1 over 0^inf marches right forever: 10... -> 01...
  auto s = successor(kGolden, make_point("10", "", "0"));
  REQUIRE(s.has_value());
  CHECK(s->prefix_word(3).symbols == std::vector<int>{0, 1, 0});
  CHECK(successor(kGolden, make_point("010", "", "0")).has_value());
  // 0^inf is alone in its tail class (no other point has an all-zero
  // Parikh prefix), so the sentinel covers it too
  CHECK_FALSE(successor(kGolden, make_point("", "", "0")).has_value());
  CHECK_FALSE(successor(kFull2, make_point("", "", "0")).has_value());
}

TEST_CASE("successor strictly increases and has no 2-cycles") {
  std::vector<SequencePoint> pts = {
      make_point("0100", "", "0"), make_point("1", "", "0"), make_point("01", "", "0"),
      make_point("001011", "", "01"), make_point("0110", "", "1")};
  for (const auto& x : pts) {
    auto s = successor(kFull2, x);
    REQUIRE(s.has_value());
    auto k = x.agreement_index(*s);
    REQUIRE(k.has_value());
    CHECK(reverse_lex_less(x.prefix_word(*k).symbols, s->prefix_word(*k).symbols));
    auto s2 = successor(kFull2, *s);
    if (s2) {
      auto k2 = s2->agreement_index(x);
      REQUIRE(k2.has_value());
      CHECK(s2->prefix_word(*k2).symbols != x.prefix_word(*k2).symbols);
    }
  }
}

TEST_CASE("min-to-max class traversal is exhaustive and ordered") {
  for (const TransitionMatrix* A : {&kFull2, &kGolden}) {
    for (long m = 1; m <= 6; ++m) {
      for (const auto& parikh : all_parikh2(m)) {
        for (int next = 0; next < A->n; ++next) {
          WordConstraints c;
          c.parikh = parikh;
          c.next_symbol = next;
          auto klass = enumerate_words(*A, m, c);
          if (klass.empty()) continue;
          // an allowed continuation after the `next` symbol
          std::string cont = (*A)(next, next) ? std::string(1, char('0' + next)) : "01";
          SequencePoint cur;
          cur.prefix = Word{concat({klass.front().symbols, {next}})};
          cur.tail_period = word_from_string(cont);
          REQUIRE(cur.is_valid(*A));
          for (size_t i = 0; i + 1 < klass.size(); ++i) {
            auto nxt = successor(*A, cur);
            REQUIRE(nxt.has_value());
            CHECK(nxt->prefix_word(m).symbols == klass[i + 1].symbols);
            for (long k = m; k < m + 8; ++k) CHECK(nxt->symbol_at(k) == cur.symbol_at(k));
            cur = *nxt;
          }
          // Past the class maximum the successor leaves the level-m class,
          // is certified maximal, or (for non-constant periodic tails with
          // no certificate) reports the horizon honestly.
          try {
            auto beyond = successor(*A, cur);
            if (beyond)
              CHECK(parikh_vector(beyond->prefix_word(m), A->n) !=
                    parikh_vector(cur.prefix_word(m), A->n));
          } catch (const HorizonExceeded&) {
          }
        }
      }
    }
  }
}

TEST_CASE("orbit") {
  SequencePoint x = make_point("1", "", "0");
  auto o0 = orbit(kFull2, x, 0);
  REQUIRE(o0.size() == 1);

  auto o = orbit(kFull2, x, 40);
  REQUIRE(o.size() == 41);
  std::set<std::vector<int>> seen;
  for (const auto& p : o) seen.insert(p.prefix_word(50).symbols);
  CHECK(seen.size() == o.size());  // pairwise distinct
  // pairwise tail-equivalent with matching synchronized Parikh vectors
  for (size_t i = 0; i < o.size(); i += 7)
    for (size_t j = i + 1; j < o.size(); j += 5) {
      auto k = o[i].agreement_index(o[j]);
      REQUIRE(k.has_value());
      CHECK(parikh_vector(o[i].prefix_word(*k), 2) ==
            parikh_vector(o[j].prefix_word(*k), 2));
    }

  // orbit stops early at a maximal point
  auto otop = orbit(kFull2, make_point("01", "", "1"), 50);
  CHECK(otop.size() < 51);
}

TEST_CASE("psi recoding of golden-mean words") {
  CHECK(psi_recode_golden(word_from_string("0100")).letters == "aba");
  CHECK_FALSE(psi_recode_golden(word_from_string("0100")).trailing_one);
  CHECK(psi_recode_golden(word_from_string("000")).letters == "aaa");
  CHECK(psi_recode_golden(word_from_string("1010")).letters == "bb");
  auto partial = psi_recode_golden(word_from_string("01"));
  CHECK(partial.letters == "a");
  CHECK(partial.trailing_one);
  CHECK(psi_recode_golden(Word{}).letters.empty());
  CHECK_THROWS_AS(psi_recode_golden(word_from_string("11")), DomainError);

  CHECK(word_to_string(psi_decode_golden("aba")) == "0100");
  CHECK(word_to_string(psi_decode_golden("bb")) == "1010");
}

TEST_CASE("psi recoding sends permutation-equivalent prefixes to "
          "permutation-equivalent letter words") {
  for (long L = 1; L <= 10; ++L) {
    auto words = enumerate_words(kGolden, L, {});
    std::map<std::pair<CountVector, int>, std::vector<std::string>> classes;
    for (const auto& w : words)
      classes[{parikh_vector(w, 2), w.back()}].push_back(psi_recode_golden(w).letters);
    auto count_ab = [](const std::string& s) {
      long a = 0, b = 0;
      for (char c : s) (c == 'a' ? a : b)++;
      return std::make_pair(a, b);
    };
    for (const auto& [key, letters] : classes) {
      for (size_t i = 1; i < letters.size(); ++i) {
        CHECK(letters[i].size() == letters[0].size());
        CHECK(count_ab(letters[i]) == count_ab(letters[0]));
      }
    }
  }
}
