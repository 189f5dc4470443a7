#include <numeric>
#include <set>
#include <vector>

#include "aic/lasso.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace aic;

namespace {

// Definitional oracle: evaluate a lasso as a plain vector of its first w
// values and apply the pointwise operation definitions directly.
std::vector<elem> unroll(const lasso& s, size_t w) {
  std::vector<elem> out(w);
  for (size_t n = 0; n < w; ++n) out[n] = s.at(n);
  return out;
}

size_t stable_window(const lasso& s) { return s.prefix().size() + 2 * s.period().size() + 4; }

// All lassos over lat with prefix length <= maxp and period length <= maxq.
std::vector<lasso> enumerate_lassos(const lattice_ptr& lat, size_t maxp, size_t maxq) {
  std::vector<lasso> out;
  const int n = lat->size();
  for (size_t pl = 0; pl <= maxp; ++pl)
    for (size_t ql = 1; ql <= maxq; ++ql) {
      std::vector<elem> digits(pl + ql, 0);
      while (true) {
        std::vector<elem> prefix(digits.begin(), digits.begin() + pl);
        std::vector<elem> period(digits.begin() + pl, digits.end());
        out.emplace_back(lat, prefix, period);
        size_t i = 0;
        while (i < digits.size() && digits[i] == n - 1) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
      }
    }
  return out;
}

void check_pointwise_equal(const lasso& got, const std::vector<elem>& want) {
  for (size_t n = 0; n < want.size(); ++n) {
    CAPTURE(n);
    CHECK(got.at(n) == want[n]);
  }
}

}  // namespace

TEST_CASE("lasso literals parse and print") {
  auto c3 = build_lattice("C3");
  lasso s = lasso::parse(c3, "<2|0,1>");
  CHECK(s.prefix() == std::vector<elem>{2});
  CHECK(s.period() == std::vector<elem>{0, 1});
  CHECK(s.at(0) == 2);
  CHECK(s.at(1) == 0);
  CHECK(s.at(2) == 1);
  CHECK(s.at(3) == 0);
  CHECK(s.str() == "<2|0,1>");

  lasso flat = lasso::parse(c3, "<|2>");
  CHECK(flat.prefix().empty());
  CHECK(flat.str() == "<|2>");

  // element names may contain commas; splitting respects nesting
  auto prod = build_lattice("product(C2,C2)");
  lasso p = lasso::parse(prod, "<|(0,1),(1,0)>");
  CHECK(p.period().size() == 2);
  CHECK(p.str() == "<|(0,1),(1,0)>");

  CHECK_THROWS_AS(lasso::parse(c3, "<2|>"), error);
  CHECK_THROWS_AS(lasso::parse(c3, "2|1"), error);
  CHECK_THROWS_AS(lasso::parse(c3, "<2,1>"), error);
  CHECK_THROWS_AS(lasso::parse(c3, "<|7>"), error);
}

TEST_CASE("normalization produces the canonical form") {
  auto c2 = build_lattice("C2");
  // non-primitive period collapses
  lasso s1(c2, {}, {0, 1, 0, 1});
  CHECK(s1.period() == std::vector<elem>{0, 1});
  // prefix tail identical to the periodic tail is absorbed completely
  lasso s2(c2, {1, 0}, {1, 0});
  CHECK(s2.prefix().empty());
  CHECK(s2.period() == std::vector<elem>{1, 0});
  // flat sequence written with a redundant prefix
  lasso s3(c2, {1, 1}, {1});
  CHECK(s3.prefix().empty());
  CHECK(s3.period() == std::vector<elem>{1});
  // a genuinely new prefix value stays
  lasso s4(c2, {0}, {1});
  CHECK(s4.prefix() == std::vector<elem>{0});
}

TEST_CASE("canonical forms are unique: every padding normalizes identically") {
  for (const auto& key : {"C2", "C3", "B2"}) {
    auto lat = build_lattice(key);
    for (const auto& s : enumerate_lassos(lat, 2, 3)) {
      const size_t r = s.prefix().size(), m = s.period().size();
      for (size_t j = r; j <= r + 2 * m; ++j)
        for (size_t mult = 1; mult <= 2; ++mult) {
          std::vector<elem> prefix, period;
          for (size_t n = 0; n < j; ++n) prefix.push_back(s.at(n));
          for (size_t i = 0; i < mult * m; ++i) period.push_back(s.at(j + i));
          lasso padded(lat, prefix, period);
          CHECK(padded.prefix() == s.prefix());
          CHECK(padded.period() == s.period());
        }
    }
  }
}

TEST_CASE("equality and order agree with pointwise comparison on a long window") {
  for (const auto& key : {"C2", "C3"}) {
    auto lat = build_lattice(key);
    auto pool = enumerate_lassos(lat, 2, key == std::string("C2") ? 3 : 2);
    for (const auto& a : pool)
      for (const auto& b : pool) {
        const size_t w = std::max(a.prefix().size(), b.prefix().size()) +
                         3 * std::lcm(a.period().size(), b.period().size()) + 5;
        auto ua = unroll(a, w), ub = unroll(b, w);
        bool ptwise_eq = ua == ub;
        bool ptwise_le = true;
        for (size_t n = 0; n < w; ++n)
          if (!lat->leq(ua[n], ub[n])) ptwise_le = false;
        CHECK(lasso_eq(a, b) == ptwise_eq);
        CHECK(lasso_leq(a, b) == ptwise_le);
        // canonical uniqueness: pointwise equality is structural equality
        CHECK(ptwise_eq == (a.prefix() == b.prefix() && a.period() == b.period()));
      }
  }
}

TEST_CASE("pointwise and temporal operations match the definitional oracle") {
  for (const auto& key : {"C2", "C3", "B2"}) {
    auto lat = build_lattice(key);
    CAPTURE(key);
    auto pool = enumerate_lassos(lat, 2, key == std::string("B2") ? 2 : 3);
    for (const auto& a : pool) {
      const size_t w = stable_window(a);
      // lookahead long enough for sup/inf tails to stabilize
      auto u = unroll(a, w + a.prefix().size() + 2 * a.period().size() + w);

      std::vector<elem> want_head(w, u[0]);
      check_pointwise_equal(op_head(a), want_head);

      std::vector<elem> want_shift(w);
      for (size_t n = 0; n < w; ++n) want_shift[n] = u[n + 1];
      check_pointwise_equal(op_shift(a), want_shift);

      std::vector<elem> want_maj(w), want_min(w);
      for (size_t n = 0; n < w; ++n) {
        elem sup = u[n], inf = u[n];
        for (size_t k = n; k < n + a.prefix().size() + 2 * a.period().size() + 2; ++k) {
          sup = lat->join(sup, u[k]);
          inf = lat->meet(inf, u[k]);
        }
        want_maj[n] = sup;
        want_min[n] = inf;
      }
      check_pointwise_equal(op_majorum(a), want_maj);
      check_pointwise_equal(op_minorum(a), want_min);

      auto hs = head_set(a);
      std::set<elem> want_hs;
      for (size_t n = 0; n < a.prefix().size() + a.period().size(); ++n)
        want_hs.insert(a.at(n));
      CHECK(hs == want_hs);
    }
    // binary operations on a subsample of pairs
    for (size_t i = 0; i < pool.size(); i += 3)
      for (size_t j = 0; j < pool.size(); j += 5) {
        const lasso &a = pool[i], &b = pool[j];
        const size_t w = std::max(stable_window(a), stable_window(b));
        auto ua = unroll(a, w), ub = unroll(b, w);
        std::vector<elem> want_join(w), want_meet(w);
        for (size_t n = 0; n < w; ++n) {
          want_join[n] = lat->join(ua[n], ub[n]);
          want_meet[n] = lat->meet(ua[n], ub[n]);
        }
        check_pointwise_equal(op_join(a, b), want_join);
        check_pointwise_equal(op_meet(a, b), want_meet);
      }
  }
}

TEST_CASE("apply and orbit match the definitional oracle") {
  for (const auto& key : {"C3", "B2"}) {
    auto lat = build_lattice(key);
    CAPTURE(key);
    auto pool = enumerate_lassos(lat, 2, 2);
    auto tables = testutil::all_monotone_tables(lat);
    for (size_t t = 0; t < tables.size(); t += 2) {
      monotone_map f(lat, tables[t]);
      for (size_t i = 0; i < pool.size(); i += 4) {
        const lasso& a = pool[i];
        const size_t w = stable_window(a) + lat->size() + 4;
        auto u = unroll(a, w);
        std::vector<elem> want_apply(w), want_orbit(w);
        for (size_t n = 0; n < w; ++n) {
          want_apply[n] = f(u[n]);
          elem v = u[n];
          for (size_t k = 0; k < n; ++k) v = f(v);
          want_orbit[n] = v;
        }
        check_pointwise_equal(op_apply(f, a), want_apply);
        check_pointwise_equal(op_orbit(f, a), want_orbit);
      }
    }
  }
}

TEST_CASE("orbit on a successor map walks up the chain") {
  auto c3 = build_lattice("C3");
  monotone_map f(c3, {1, 2, 2});
  lasso got = op_orbit(f, op_bot(c3));
  CHECK(got.str() == "<0,1|2>");
}

TEST_CASE("orbit period is the lcm of the table cycle and the input period") {
  auto b2 = build_lattice("B2");
  // swap the two atoms: a two-cycle on the antichain
  monotone_map swap(b2, {b2->bot(), b2->require_elem("b"), b2->require_elem("a"), b2->top()});
  lasso a = lasso::flat(b2, b2->require_elem("a"));
  lasso got = op_orbit(swap, a);
  CHECK(got.prefix().empty());
  CHECK(got.period().size() == 2);
  CHECK(got.at(0) == b2->require_elem("a"));
  CHECK(got.at(1) == b2->require_elem("b"));
  CHECK(got.at(2) == b2->require_elem("a"));
}

TEST_CASE("orbit rejects periods beyond the cap") {
  auto c2 = build_lattice("C2");
  std::vector<elem> period(10001, 0);
  period[0] = 1;  // primitive: no proper divisor block repeats
  lasso huge(c2, {}, period);
  REQUIRE(huge.period().size() == 10001);
  monotone_map id(c2, {0, 1});
  try {
    op_orbit(id, huge);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.cls() == "PeriodCapExceeded");
  }
}

TEST_CASE("operations across different lattices are rejected") {
  auto c2 = build_lattice("C2");
  auto c3 = build_lattice("C3");
  lasso a = op_bot(c2), b = op_bot(c3);
  CHECK_THROWS_AS(op_join(a, b), error);
  CHECK_THROWS_AS(lasso_eq(a, b), error);
  monotone_map f(c3, {0, 1, 2});
  CHECK_THROWS_AS(op_apply(f, a), error);
}

TEST_CASE("majorum collapses to the tail supremum") {
  auto c3 = build_lattice("C3");
  CHECK(op_majorum(lasso::parse(c3, "<|0,2>")).str() == "<|2>");
  CHECK(op_minorum(lasso::parse(c3, "<|0,2>")).str() == "<|0>");
  CHECK(op_majorum(lasso::parse(c3, "<2|0>")).str() == "<2|0>");
  CHECK(op_minorum(lasso::parse(c3, "<2|0>")).str() == "<|0>");
}
