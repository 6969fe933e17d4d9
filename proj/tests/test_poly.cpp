#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zhps/poly.hpp"

using namespace zhps;

namespace {

// Brute-force agreement of an integer polynomial with a Boolean polynomial
// over every assignment of the listed variables.
bool agrees_on_booleans(const IntPoly& p, const BoolPoly& q, const std::vector<Var>& vars) {
  for (std::size_t mask = 0; mask < (std::size_t(1) << vars.size()); ++mask) {
    auto bit = [&](Var v) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return ((mask >> i) & 1) != 0;
      return false;
    };
    if ((p.eval(bit) != 0) != q.eval(bit)) return false;
    if (p.eval(bit) != 0 && p.eval(bit) != 1) return false;
  }
  return true;
}

BoolPoly random_bool_poly(std::mt19937_64& eng, int nvars, int max_monos) {
  std::uniform_int_distribution<int> count(0, max_monos), pick(0, 1);
  BoolPoly q;
  const int n = count(eng);
  for (int i = 0; i < n; ++i) {
    std::vector<Var> vs;
    for (Var v = 1; v <= nvars; ++v)
      if (pick(eng)) vs.push_back(v);
    if (vs.empty()) continue;
    q.xor_mono(BoolMonomial(vs));
  }
  return q;
}

} // namespace

TEST_CASE("monomials are multilinear and graded-lex ordered") {
  CHECK(BoolMonomial({2, 1, 2}).vars() == std::vector<Var>{1, 2});
  CHECK(BoolMonomial({1}).times(BoolMonomial({1, 3})) == BoolMonomial({1, 3}));
  CHECK(BoolMonomial({3}) < BoolMonomial({1, 2})); // degree first
  CHECK(BoolMonomial({1, 3}) < BoolMonomial({2, 3}));
  CHECK(BoolMonomial::one().is_constant());
}

TEST_CASE("xor cancels duplicate monomials") {
  BoolPoly q;
  q.xor_mono(BoolMonomial({1}));
  q.xor_mono(BoolMonomial({1}));
  CHECK(q.is_zero());
  q.xor_mono(BoolMonomial({1, 2}));
  CHECK(q.size() == 1);
}

TEST_CASE("bool poly product expands over F2") {
  const BoolPoly a{BoolMonomial({1}), BoolMonomial({2})};
  const BoolPoly b{BoolMonomial({1})};
  const BoolPoly ab = a.times(b);
  // (x1 xor x2) x1 = x1 xor x1x2
  CHECK(ab == BoolPoly{BoolMonomial({1}), BoolMonomial({1, 2})});
}

TEST_CASE("lift of a single variable is itself") {
  const IntPoly p = lift(BoolPoly{BoolMonomial({1})});
  CHECK(p.terms().size() == 1);
  CHECK(p.terms().at(BoolMonomial({1})) == 1);
}

TEST_CASE("lift of a two-term xor") {
  const IntPoly p = lift(BoolPoly{BoolMonomial({1}), BoolMonomial({2})});
  CHECK(p.terms().at(BoolMonomial({1})) == 1);
  CHECK(p.terms().at(BoolMonomial({2})) == 1);
  CHECK(p.terms().at(BoolMonomial({1, 2})) == -2);
  CHECK(p.terms().size() == 3);
}

TEST_CASE("lift of a three-term xor, frozen from the inductive rule") {
  const IntPoly p = lift(BoolPoly{BoolMonomial({1}), BoolMonomial({2}), BoolMonomial({3})});
  CHECK(p.terms().at(BoolMonomial({1})) == 1);
  CHECK(p.terms().at(BoolMonomial({2})) == 1);
  CHECK(p.terms().at(BoolMonomial({3})) == 1);
  CHECK(p.terms().at(BoolMonomial({1, 2})) == -2);
  CHECK(p.terms().at(BoolMonomial({1, 3})) == -2);
  CHECK(p.terms().at(BoolMonomial({2, 3})) == -2);
  CHECK(p.terms().at(BoolMonomial({1, 2, 3})) == 4);
  CHECK(agrees_on_booleans(p, BoolPoly{BoolMonomial({1}), BoolMonomial({2}), BoolMonomial({3})},
                           {1, 2, 3}));
}

TEST_CASE("lift agrees with the Boolean polynomial on all inputs") {
  std::mt19937_64 eng(3);
  for (int i = 0; i < 100; ++i) {
    const BoolPoly q = random_bool_poly(eng, 6, 5);
    CHECK(agrees_on_booleans(lift(q), q, {1, 2, 3, 4, 5, 6}));
  }
}

TEST_CASE("scale_lift quarter coefficient keeps singles and pairs") {
  const BoolPoly q{BoolMonomial({1}), BoolMonomial({2})};
  const PhasePoly p = scale_lift(Phase::of(1, 4), q);
  CHECK(p.coeff(BoolMonomial({1})) == Phase::of(1, 4));
  CHECK(p.coeff(BoolMonomial({2})) == Phase::of(1, 4));
  // -2 * 1/4 = -1/2, i.e. +1/2 mod 1.
  CHECK(p.coeff(BoolMonomial({1, 2})) == Phase::of(1, 2));
  CHECK(p.size() == 3);
}

TEST_CASE("scale_lift half coefficient: cross terms vanish mod 1") {
  const BoolPoly q{BoolMonomial({1}), BoolMonomial({2})};
  const PhasePoly p = scale_lift(Phase::of(1, 2), q);
  CHECK(p.coeff(BoolMonomial({1})) == Phase::of(1, 2));
  CHECK(p.coeff(BoolMonomial({2})) == Phase::of(1, 2));
  CHECK(p.size() == 2);
}

TEST_CASE("scale_lift of a single monomial is just the scaled monomial") {
  const PhasePoly p = scale_lift(Phase::of(1, 2), BoolPoly{BoolMonomial({1, 2})});
  CHECK(p.size() == 1);
  CHECK(p.coeff(BoolMonomial({1, 2})) == Phase::of(1, 2));
}

TEST_CASE("scale_lift equals the inductively defined lift scaled mod 1") {
  std::mt19937_64 eng(5);
  for (int i = 0; i < 100; ++i) {
    const BoolPoly q = random_bool_poly(eng, 5, 5);
    std::uniform_int_distribution<int> num(1, 7);
    const Phase alpha = Phase::of(num(eng), 8);
    const PhasePoly closed = scale_lift(alpha, q);
    const IntPoly lifted = lift(q);
    PhasePoly inductive;
    for (const auto& [m, c] : lifted.terms()) inductive.add_term(m, alpha.times_int(c));
    CHECK(closed == inductive);
  }
}

TEST_CASE("scale_lift handles non-dyadic coefficients") {
  const BoolPoly q{BoolMonomial({1}), BoolMonomial({2})};
  const PhasePoly p = scale_lift(Phase::of(1, 3), q);
  const IntPoly lifted = lift(q);
  PhasePoly expect;
  for (const auto& [m, c] : lifted.terms()) expect.add_term(m, Phase::of(1, 3).times_int(c));
  CHECK(p == expect);
}

TEST_CASE("canonicalize agrees with the Boolean value pointwise mod 1") {
  std::mt19937_64 eng(9);
  for (int i = 0; i < 60; ++i) {
    const BoolPoly f = random_bool_poly(eng, 5, 4);
    std::uniform_int_distribution<int> num(1, 7);
    const Phase alpha = Phase::of(num(eng), 8);
    const PhasePoly p = canonicalize(alpha, f);
    for (std::size_t mask = 0; mask < 32; ++mask) {
      auto bit = [&](Var v) { return ((mask >> (v - 1)) & 1) != 0; };
      const Phase want = f.eval(bit) ? alpha : Phase::zero();
      CHECK(p.eval(bit) == want);
    }
  }
}

TEST_CASE("canonicalize half of x1 xor x2 drops the cross term") {
  const PhasePoly p = canonicalize(Phase::of(1, 2), BoolPoly{BoolMonomial({1}), BoolMonomial({2})});
  CHECK(p.size() == 2);
  CHECK(p.coeff(BoolMonomial({1})) == Phase::of(1, 2));
}

TEST_CASE("canonicalize quarter of x1 xor x2 keeps a half cross term") {
  const PhasePoly p = canonicalize(Phase::of(1, 4), BoolPoly{BoolMonomial({1}), BoolMonomial({2})});
  CHECK(p.size() == 3);
  CHECK(p.coeff(BoolMonomial({1, 2})) == Phase::of(1, 2));
}

TEST_CASE("substitute a monomial for a variable") {
  PhasePoly r;
  r.add_term(BoolMonomial({9, 1}), Phase::of(1, 4)); // (1/4) y x1 with y = 9
  IntPoly p;
  p.add(BoolMonomial({2}), 1);
  const PhasePoly out = substitute(r, 9, p);
  CHECK(out.size() == 1);
  CHECK(out.coeff(BoolMonomial({1, 2})) == Phase::of(1, 4));
}

TEST_CASE("substitute a lifting, frozen expansion") {
  PhasePoly r;
  r.add_term(BoolMonomial({9}), Phase::of(1, 4));
  const IntPoly p = lift(BoolPoly{BoolMonomial({1}), BoolMonomial({2})}); // x + x' - 2xx'
  const PhasePoly out = substitute(r, 9, p);
  CHECK(out.coeff(BoolMonomial({1})) == Phase::of(1, 4));
  CHECK(out.coeff(BoolMonomial({2})) == Phase::of(1, 4));
  CHECK(out.coeff(BoolMonomial({1, 2})) == Phase::of(1, 2)); // -1/2 mod 1
}

TEST_CASE("substitute leaves y-free polynomials unchanged") {
  PhasePoly r;
  r.add_term(BoolMonomial({1, 2}), Phase::of(3, 8));
  IntPoly p;
  p.add(BoolMonomial({3}), 1);
  CHECK(substitute(r, 9, p) == r);
}

TEST_CASE("substitution matches evaluating with y := q(x)") {
  std::mt19937_64 eng(13);
  const Var y = 7;
  for (int i = 0; i < 80; ++i) {
    const BoolPoly q = random_bool_poly(eng, 4, 3);
    PhasePoly r;
    std::uniform_int_distribution<int> num(0, 7), pick(0, 1);
    for (int t = 0; t < 4; ++t) {
      std::vector<Var> vs;
      for (Var v = 1; v <= 4; ++v)
        if (pick(eng)) vs.push_back(v);
      if (pick(eng)) vs.push_back(y);
      if (vs.empty()) continue;
      r.add_term(BoolMonomial(vs), Phase::of(num(eng), 8));
    }
    const PhasePoly subbed = substitute(r, y, lift(q));
    for (std::size_t mask = 0; mask < 16; ++mask) {
      auto bit = [&](Var v) { return v == y ? q.eval([&](Var w) { return ((mask >> (w - 1)) & 1) != 0; })
                                            : ((mask >> (v - 1)) & 1) != 0; };
      auto bit_no_y = [&](Var v) { return ((mask >> (v - 1)) & 1) != 0; };
      CHECK(subbed.eval(bit_no_y) == r.eval(bit));
    }
  }
}

TEST_CASE("phase poly accumulates and drops zeros") {
  PhasePoly p;
  p.add_term(BoolMonomial({1}), Phase::of(1, 2));
  p.add_term(BoolMonomial({1}), Phase::of(1, 2));
  CHECK(p.empty());
}
