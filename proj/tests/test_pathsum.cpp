#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "zhps/oracle.hpp"
#include "zhps/pathsum.hpp"
#include "zhps/random_gen.hpp"

using namespace zhps;

TEST_CASE("purify reproduces the five-term CNOT pure path-sum") {
  // f1 = x1, f2 = x1 xor x2, phi = 0: inputs are variables 1 and 2; each
  // output j introduces (v_j, w_j) = (2j+1, 2j+2).
  std::vector<BoolPoly> f = {BoolPoly{BoolMonomial({1})},
                             BoolPoly{BoolMonomial({1}), BoolMonomial({2})}};
  const PurePathSum e = purify(f, PhasePoly(), ScalarFactor::one(), 2, 0);

  CHECK(e.num_vars() == 6);
  CHECK(e.phi().size() == 5);
  const Phase h = Phase::of(1, 2);
  CHECK(e.phi().coeff(BoolMonomial({3, 4})) == h); // v1 w1
  CHECK(e.phi().coeff(BoolMonomial({1, 3})) == h); // v1 x1
  CHECK(e.phi().coeff(BoolMonomial({5, 6})) == h); // v2 w2
  CHECK(e.phi().coeff(BoolMonomial({1, 5})) == h); // v2 x1
  CHECK(e.phi().coeff(BoolMonomial({2, 5})) == h); // v2 x2
  CHECK(e.scalar().half_pow2() == -4);             // 1/4
  CHECK(e.input_sig() == std::vector<Var>{1, 2});
  CHECK(e.output_sig() == std::vector<Var>{4, 6});

  // Oracle: exactly the CNOT matrix, scalar included.
  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {0, 1};
  CHECK(testutil::diff(eval_pathsum(e), testutil::gate_unitary(g)) < 1e-12);
}

TEST_CASE("purify of the identity on one qubit evaluates to the identity") {
  const PurePathSum e =
      purify({BoolPoly{BoolMonomial({1})}}, PhasePoly(), ScalarFactor::one(), 1, 0);
  CHECK(testutil::diff(eval_pathsum(e), testutil::identity(2)) < 1e-12);
}

TEST_CASE("purify with no outputs is a scalar-only path-sum") {
  ScalarFactor lambda = ScalarFactor::pow2_halves(2);
  const PurePathSum e = purify({}, PhasePoly(), lambda, 0, 0);
  CHECK(e.num_vars() == 0);
  CHECK(e.phi().empty());
  CHECK(e.scalar() == lambda);
  CHECK(testutil::diff(eval_pathsum(e), testutil::matrix(1, 1, {2.0})) < 1e-12);
}

TEST_CASE("purify respects the functional-form oracle") {
  // lambda Sum e^{2 pi i phi} |f(x,y)><x| computed directly.
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n_in = rng.range(1, 3), n_path = rng.range(0, 2), n_out = rng.range(1, 3);
    std::vector<Var> pool;
    for (Var v = 1; v <= n_in + n_path; ++v) pool.push_back(v);
    std::vector<BoolPoly> f;
    for (int j = 0; j < n_out; ++j) {
      BoolPoly q;
      const int monos = rng.range(1, 2);
      for (int m = 0; m < monos; ++m) {
        std::vector<Var> vs;
        for (Var v : pool)
          if (rng.chance(0.5)) vs.push_back(v);
        if (!vs.empty()) q.xor_mono(BoolMonomial(vs));
      }
      if (q.is_zero()) q.xor_mono(BoolMonomial({pool[0]}));
      f.push_back(q);
    }
    PhasePoly phi;
    for (int t = 0; t < rng.range(0, 3); ++t) {
      std::vector<Var> vs;
      for (Var v : pool)
        if (rng.chance(0.4)) vs.push_back(v);
      if (vs.empty()) continue;
      phi.add_term(BoolMonomial(vs), rng.phase());
    }
    const PurePathSum e = purify(f, phi, ScalarFactor::one(), n_in, n_path);

    DenseMatrix direct(std::size_t(1) << n_out, std::size_t(1) << n_in);
    for (std::size_t mask = 0; mask < (std::size_t(1) << (n_in + n_path)); ++mask) {
      auto bit = [&](Var v) { return ((mask >> (v - 1)) & 1) != 0; };
      std::size_t row = 0, col = 0;
      for (const auto& q : f) row = (row << 1) | (q.eval(bit) ? 1 : 0);
      for (Var v = 1; v <= n_in; ++v) col = (col << 1) | (bit(v) ? 1 : 0);
      direct.at(row, col) += phi.eval(bit).to_complex();
    }
    CHECK(testutil::diff(eval_pathsum(e), direct) < 1e-9);
  }
}

TEST_CASE("composition with the identity only renames variables") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    PurePathSum e = random_pathsum(rng, 5, 6);
    const int n = static_cast<int>(e.arity_out());
    const PurePathSum composed = compose_pathsums(e, PurePathSum::identity(n));
    if (static_cast<int>(e.num_vars()) <= 16) {
      CHECK(testutil::diff(eval_pathsum(e), eval_pathsum(composed)) < 1e-9);
    }
    CHECK(composed.num_vars() == e.num_vars());
  }
}

TEST_CASE("CNOT composed with CNOT is the identity") {
  // The three-term hypergraph-form CNOT with its 1/2 scalar.
  auto cnot = [] {
    PurePathSum e;
    for (Var v = 1; v <= 4; ++v) e.add_var(v);
    e.add_phase(Phase::of(1, 2), BoolMonomial({2, 3}));
    e.add_phase(Phase::of(1, 2), BoolMonomial({1, 3}));
    e.add_phase(Phase::of(1, 2), BoolMonomial({3, 4}));
    e.set_input_sig({1, 2});
    e.set_output_sig({1, 4});
    e.scalar().mul_pow2_halves(-2);
    return e;
  }();
  const PurePathSum twice = compose_pathsums(cnot, cnot);
  CHECK(testutil::diff(eval_pathsum(twice), testutil::identity(4)) < 1e-12);
}

TEST_CASE("repeated signature entries are identified through composition") {
  // M = Sum |x><xx| (the 2-to-1 spider): M . M^dag = identity.
  PurePathSum m;
  m.add_var(1);
  m.set_input_sig({1, 1});
  m.set_output_sig({1});
  const PurePathSum composite = compose_pathsums(m.adjoint(), m);
  DenseMatrix want = testutil::identity(2);
  CHECK(testutil::diff(eval_pathsum(composite), want) < 1e-12);

  // And the matrix of M itself.
  DenseMatrix mm(2, 4);
  mm.at(0, 0) = 1.0;
  mm.at(1, 3) = 1.0;
  CHECK(testutil::diff(eval_pathsum(m), mm) < 1e-12);
}

TEST_CASE("composition order matches matrix product order") {
  Rng rng(31);
  for (int i = 0; i < 25; ++i) {
    PurePathSum a = random_pathsum(rng, 4, 5);
    PurePathSum b = random_pathsum(rng, 4, 5);
    // Force compatible arities.
    std::vector<Var> sig;
    const int wires = rng.range(0, 2);
    std::vector<Var> bpool(b.vars().begin(), b.vars().end());
    for (int w = 0; w < wires; ++w)
      sig.push_back(bpool[static_cast<std::size_t>(rng.range(0, static_cast<int>(bpool.size()) - 1))]);
    b.set_input_sig(sig);
    std::vector<Var> apool(a.vars().begin(), a.vars().end());
    std::vector<Var> outs;
    for (int w = 0; w < wires; ++w)
      outs.push_back(apool[static_cast<std::size_t>(rng.range(0, static_cast<int>(apool.size()) - 1))]);
    a.set_output_sig(outs);
    const DenseMatrix prod = eval_pathsum(b).times(eval_pathsum(a));
    CHECK(testutil::diff(eval_pathsum(compose_pathsums(a, b)), prod) < 1e-9);
  }
}

TEST_CASE("composition arity mismatch throws") {
  CHECK_THROWS_AS(compose_pathsums(PurePathSum::identity(2), PurePathSum::identity(3)), Error);
}

TEST_CASE("adjoint is an involution and conjugate-transposes the matrix") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const PurePathSum e = random_pathsum(rng, 5, 6);
    CHECK(e.adjoint().adjoint() == e);
    const DenseMatrix m = eval_pathsum(e);
    const DenseMatrix a = eval_pathsum(e.adjoint());
    REQUIRE(a.rows == m.cols);
    double worst = 0;
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c)
        worst = std::max(worst, std::abs(a.at(c, r) - std::conj(m.at(r, c))));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("constant phase terms migrate to the scalar") {
  PurePathSum e = PurePathSum::identity(1);
  e.add_phase(Phase::of(1, 8), BoolMonomial::one());
  CHECK(e.phi().empty());
  CHECK(e.scalar().phase() == Phase::of(1, 8));
}

TEST_CASE("identity form detection") {
  PurePathSum e = PurePathSum::identity(3);
  CHECK(e.is_identity());
  e.scalar().mul_phase(Phase::of(1, 8));
  CHECK_FALSE(e.is_identity());
  CHECK(e.is_identity(true));
  e.scalar().mul_pow2_halves(1);
  CHECK_FALSE(e.is_identity(true));

  PurePathSum f = PurePathSum::identity(2);
  f.fresh_var(); // a free variable is not part of an identity form
  CHECK_FALSE(f.is_identity());
}

TEST_CASE("evaluate_assignment frozen values") {
  PhasePoly half_x1x2;
  half_x1x2.add_term(BoolMonomial({1, 2}), Phase::of(1, 2));
  CHECK(evaluate_assignment(half_x1x2, {1, 2}, {true, true}) == Phase::of(1, 2));
  CHECK(evaluate_assignment(half_x1x2, {1, 2}, {true, false}) == Phase::zero());

  PhasePoly cnot_phi;
  cnot_phi.add_term(BoolMonomial({2, 3}), Phase::of(1, 2));
  cnot_phi.add_term(BoolMonomial({1, 3}), Phase::of(1, 2));
  cnot_phi.add_term(BoolMonomial({3, 4}), Phase::of(1, 2));
  CHECK(evaluate_assignment(cnot_phi, {1, 2, 3, 4}, {true, true, true, true}) == Phase::of(1, 2));
}
