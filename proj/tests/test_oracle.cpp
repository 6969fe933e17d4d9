#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "zhps/circuit.hpp"
#include "zhps/random_gen.hpp"
#include "zhps/translate.hpp"

using namespace zhps;

TEST_CASE("eval_pathsum of the hypergraph-form CNOT") {
  PurePathSum e;
  for (Var v = 1; v <= 4; ++v) e.add_var(v);
  e.add_phase(Phase::of(1, 2), BoolMonomial({2, 3}));
  e.add_phase(Phase::of(1, 2), BoolMonomial({1, 3}));
  e.add_phase(Phase::of(1, 2), BoolMonomial({3, 4}));
  e.set_input_sig({1, 2});
  e.set_output_sig({1, 4});
  e.scalar().mul_pow2_halves(-2);
  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {0, 1};
  CHECK(testutil::diff(eval_pathsum(e), testutil::gate_unitary(g)) < 1e-12);
}

TEST_CASE("eval_pathsum of a variable-free scalar path-sum") {
  PurePathSum e;
  e.scalar().mul_pow2_halves(2);
  CHECK(testutil::diff(eval_pathsum(e), testutil::matrix(1, 1, {2.0})) < 1e-12);
}

TEST_CASE("eval_pathsum of the copy spider") {
  PurePathSum m;
  m.add_var(1);
  m.set_input_sig({1, 1});
  m.set_output_sig({1});
  DenseMatrix want(2, 4);
  want.at(0, 0) = 1.0;
  want.at(1, 3) = 1.0;
  CHECK(testutil::diff(eval_pathsum(m), want) < 1e-12);
}

TEST_CASE("eval_pathsum enforces the variable cap") {
  PurePathSum e;
  for (Var v = 1; v <= 25; ++v) e.add_var(v);
  CHECK_THROWS_AS(eval_pathsum(e), Error);
  CHECK_THROWS_AS(eval_pathsum(e, 24), Error);
}

TEST_CASE("eval_diagram generator semantics") {
  RawDiagram h;
  const int a = h.fresh_wire(), b = h.fresh_wire();
  h.add_gen(GenKind::HBox, {a}, {b}, HLabel::minus_one());
  h.mutable_inputs() = {a};
  h.mutable_outputs() = {b};
  CHECK(testutil::diff(eval_diagram(h), testutil::matrix(2, 2, {1, 1, 1, -1})) < 1e-12);

  RawDiagram z0;
  z0.add_gen(GenKind::ZSpider, {}, {});
  CHECK(testutil::diff(eval_diagram(z0), testutil::matrix(1, 1, {2.0})) < 1e-12);

  RawDiagram h3;
  const int o1 = h3.fresh_wire(), o2 = h3.fresh_wire(), o3 = h3.fresh_wire();
  h3.add_gen(GenKind::HBox, {}, {o1, o2, o3}, HLabel::minus_one());
  h3.mutable_outputs() = {o1, o2, o3};
  const DenseMatrix m = eval_diagram(h3);
  for (std::size_t r = 0; r < 8; ++r)
    CHECK(std::abs(m.at(r, 0) - std::complex<double>(r == 7 ? -1.0 : 1.0, 0.0)) < 1e-12);
}

TEST_CASE("not and x-spider generators") {
  RawDiagram nt;
  const int a = nt.fresh_wire(), b = nt.fresh_wire();
  nt.add_gen(GenKind::Not, {a}, {b});
  nt.mutable_inputs() = {a};
  nt.mutable_outputs() = {b};
  CHECK(testutil::diff(eval_diagram(nt), testutil::matrix(2, 2, {0, 1, 1, 0})) < 1e-12);

  RawDiagram x11;
  const int c = x11.fresh_wire(), d = x11.fresh_wire();
  x11.add_gen(GenKind::XSpider, {c}, {d});
  x11.mutable_inputs() = {c};
  x11.mutable_outputs() = {d};
  CHECK(testutil::diff(eval_diagram(x11), testutil::identity(2)) < 1e-12);

  RawDiagram x01; // sqrt(2)|0>
  const int e = x01.fresh_wire();
  x01.add_gen(GenKind::XSpider, {}, {e});
  x01.mutable_outputs() = {e};
  CHECK(testutil::diff(eval_diagram(x01), testutil::matrix(2, 1, {std::sqrt(2.0), 0.0})) < 1e-12);
}

TEST_CASE("raw and normalized evaluation agree with the translated path-sum") {
  Rng rng(53);
  for (int i = 0; i < 40; ++i) {
    const RawDiagram d = random_raw_diagram(rng);
    const Diagram n = normalize(d);
    bool general_label = false;
    for (const auto& [id, box] : n.hboxes())
      if (!box.label.is_phase() && !HLabel::from_complex(box.label.value()).is_phase())
        general_label = true;
    if (general_label) continue;
    const DenseMatrix via_tensor = eval_diagram(d);
    const DenseMatrix via_pathsum = eval_pathsum(zh_to_pathsum(n, true));
    CHECK(testutil::diff(via_tensor, via_pathsum) < 1e-9);
  }
}

TEST_CASE("compare modes") {
  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {0, 1};
  const DenseMatrix cnot = testutil::gate_unitary(g);
  CHECK(compare(cnot, cnot).equal());

  const DenseMatrix phased = cnot.scaled(std::complex<double>(0.0, 1.0));
  CHECK_FALSE(compare(cnot, phased, CompareMode::ExactScalar).equal());
  CHECK(compare(cnot, phased, CompareMode::UpToGlobalPhase).equal());

  Gate sw;
  sw.kind = GateKind::SWAP;
  sw.qubits = {0, 1};
  const DenseMatrix swap = testutil::gate_unitary(sw);
  const CompareResult r = compare(cnot, swap, CompareMode::UpToGlobalPhase);
  CHECK(r.verdict == CompareResult::Verdict::Unequal);
  CHECK(r.max_abs_diff > 0.5);

  CHECK(compare(cnot, testutil::identity(8)).verdict == CompareResult::Verdict::ShapeMismatch);

  // A doubled matrix differs in magnitude, not phase.
  CHECK_FALSE(compare(cnot, cnot.scaled(2.0), CompareMode::UpToGlobalPhase).equal());
}

TEST_CASE("matrix product shape checks") {
  DenseMatrix a(2, 4), b(4, 8);
  CHECK_NOTHROW(a.times(b));
  CHECK_THROWS_AS(b.times(a), Error);
}

TEST_CASE("oracle cap honors ZHPS_ORACLE_CAP") {
  // The default is 20 unless the environment overrides it.
  CHECK(oracle_cap() >= 1);
}
