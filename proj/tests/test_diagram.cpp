#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "zhps/circuit.hpp"
#include "zhps/random_gen.hpp"
#include "zhps/translate.hpp"

using namespace zhps;

TEST_CASE("sequential composition of identities is the identity") {
  const RawDiagram d = compose_seq(RawDiagram::identity(1), RawDiagram::identity(1));
  CHECK(testutil::diff(eval_diagram(d), testutil::identity(2)) < 1e-12);
}

TEST_CASE("unnormalized Hadamard squared is twice the identity") {
  RawDiagram h;
  const int a = h.fresh_wire(), b = h.fresh_wire();
  h.add_gen(GenKind::Hadamard, {a}, {b});
  h.mutable_inputs() = {a};
  h.mutable_outputs() = {b};
  const RawDiagram hh = compose_seq(h, h);
  CHECK(testutil::diff(eval_diagram(hh), testutil::identity(2).scaled(2.0)) < 1e-12);
}

TEST_CASE("spider split then merge is the plain identity") {
  RawDiagram split; // Z(1,2)
  {
    const int i = split.fresh_wire(), o1 = split.fresh_wire(), o2 = split.fresh_wire();
    split.add_gen(GenKind::ZSpider, {i}, {o1, o2});
    split.mutable_inputs() = {i};
    split.mutable_outputs() = {o1, o2};
  }
  RawDiagram merge; // Z(2,1)
  {
    const int i1 = merge.fresh_wire(), i2 = merge.fresh_wire(), o = merge.fresh_wire();
    merge.add_gen(GenKind::ZSpider, {i1, i2}, {o});
    merge.mutable_inputs() = {i1, i2};
    merge.mutable_outputs() = {o};
  }
  CHECK(testutil::diff(eval_diagram(compose_seq(split, merge)), testutil::identity(2)) < 1e-12);
}

TEST_CASE("parallel composition tensors the semantics") {
  RawDiagram zero; // |0> as an arity-1 H-box with label 0
  {
    const int o = zero.fresh_wire();
    zero.add_gen(GenKind::HBox, {}, {o}, HLabel::general({0.0, 0.0}));
    zero.mutable_outputs() = {o};
  }
  const RawDiagram pair = compose_par(zero, zero);
  CHECK(testutil::diff(eval_diagram(pair), testutil::matrix(4, 1, {1, 0, 0, 0})) < 1e-12);

  const RawDiagram empty;
  CHECK(testutil::diff(eval_diagram(compose_par(zero, empty)), eval_diagram(zero)) < 1e-12);

  RawDiagram h;
  const int a = h.fresh_wire(), b = h.fresh_wire();
  h.add_gen(GenKind::Hadamard, {a}, {b});
  h.mutable_inputs() = {a};
  h.mutable_outputs() = {b};
  const DenseMatrix hxh = eval_diagram(compose_par(h, h));
  for (const auto& v : hxh.data) CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-12);
}

TEST_CASE("normalize is idempotent on hypergraph-like diagrams") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    Diagram d = random_normalized_diagram(rng, 6, 6);
    // Isolated spiders fold to scalars on re-ingestion, so keep every spider
    // covered for this roundtrip.
    bool covered = true;
    for (SpiderId s : d.spiders())
      if (d.boxes_on(s).empty() && !d.on_boundary(s)) covered = false;
    if (!covered) continue;
    CHECK(iso_equal(normalize(d.to_raw()), d));
  }
}

TEST_CASE("normalizing the CNOT gadget gives the four-spider three-box form") {
  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {0, 1};
  const Diagram d = normalize(gate_to_diagram(g, 2));
  CHECK(d.spiders().size() == 4);
  CHECK(d.hboxes().size() == 3);
  for (const auto& [id, box] : d.hboxes()) {
    CHECK(box.label.is_unlabeled());
    CHECK(box.neighbors.size() == 2);
  }
  CHECK(!d.validate());
  // Its translation has the three half-coefficient quadratic terms.
  const PurePathSum e = zh_to_pathsum(d);
  CHECK(e.phi().size() == 3);
  for (const auto& [m, c] : e.phi().terms()) {
    CHECK(m.degree() == 2);
    CHECK(c == Phase::of(1, 2));
  }
  CHECK(testutil::diff(eval_pathsum(e), eval_diagram(d)) < 1e-12);
}

TEST_CASE("parallel edges between an H-box and a spider reduce to one") {
  // Two wires from one box to one spider vs a single wire.
  RawDiagram doubled;
  {
    const int o = doubled.fresh_wire(), w1 = doubled.fresh_wire(), w2 = doubled.fresh_wire();
    doubled.add_gen(GenKind::ZSpider, {}, {o, w1, w2});
    doubled.add_gen(GenKind::HBox, {w1, w2}, {}, HLabel::from_phase(Phase::of(1, 8)));
    doubled.mutable_outputs() = {o};
  }
  RawDiagram single;
  {
    const int o = single.fresh_wire(), w = single.fresh_wire();
    single.add_gen(GenKind::ZSpider, {}, {o, w});
    single.add_gen(GenKind::HBox, {w}, {}, HLabel::from_phase(Phase::of(1, 8)));
    single.mutable_outputs() = {o};
  }
  CHECK(testutil::diff(eval_diagram(doubled), eval_diagram(single)) < 1e-12);
  const Diagram n = normalize(doubled);
  CHECK(n.hboxes().size() == 1);
  CHECK(n.hboxes().begin()->second.neighbors.size() == 1);

  // Triple wires reduce the same way.
  RawDiagram tripled;
  {
    const int o = tripled.fresh_wire(), w1 = tripled.fresh_wire(), w2 = tripled.fresh_wire(),
              w3 = tripled.fresh_wire();
    tripled.add_gen(GenKind::ZSpider, {}, {o, w1, w2, w3});
    tripled.add_gen(GenKind::HBox, {w1, w2, w3}, {}, HLabel::from_phase(Phase::of(1, 8)));
    tripled.mutable_outputs() = {o};
  }
  CHECK(testutil::diff(eval_diagram(tripled), eval_diagram(single)) < 1e-12);
}

TEST_CASE("reduce_parallel on the in-progress edge structure") {
  MultiEdge e;
  e.neighbors = {3, 5, 5, 5, 7};
  reduce_parallel(e, 5);
  CHECK(e.neighbors == std::vector<SpiderId>{3, 5, 7});
  reduce_parallel(e, 3); // single occurrence: unchanged
  CHECK(e.neighbors == std::vector<SpiderId>{3, 5, 7});
}

TEST_CASE("normalize folds arity-0 generators into the scalar") {
  RawDiagram d;
  d.add_gen(GenKind::ZSpider, {}, {});
  d.add_gen(GenKind::HBox, {}, {}, HLabel::from_phase(Phase::of(1, 8)));
  const Diagram n = normalize(d);
  CHECK(n.spiders().empty());
  CHECK(n.hboxes().empty());
  CHECK(n.scalar().half_pow2() == 2);
  CHECK(n.scalar().phase() == Phase::of(1, 8));
}

TEST_CASE("normalize detaches boundary wires from H-boxes") {
  RawDiagram d;
  const int i = d.fresh_wire(), o = d.fresh_wire();
  d.add_gen(GenKind::HBox, {i}, {o}, HLabel::minus_one());
  d.mutable_inputs() = {i};
  d.mutable_outputs() = {o};
  const Diagram n = normalize(d);
  CHECK(!n.validate());
  CHECK(n.spiders().size() == 2);
  CHECK(n.hboxes().size() == 1);
  CHECK(testutil::diff(eval_diagram(n), eval_diagram(d)) < 1e-12);
}

TEST_CASE("normalize splits wires between labeled H-boxes with a fresh spider") {
  RawDiagram d;
  const int in = d.fresh_wire(), mid = d.fresh_wire(), out = d.fresh_wire();
  d.add_gen(GenKind::HBox, {in}, {mid}, HLabel::from_phase(Phase::of(1, 8)));
  d.add_gen(GenKind::HBox, {mid}, {out}, HLabel::from_phase(Phase::of(1, 4)));
  d.mutable_inputs() = {in};
  d.mutable_outputs() = {out};
  const Diagram n = normalize(d);
  CHECK(n.spiders().size() == 3); // two boundary spiders plus the inserted one
  CHECK(n.hboxes().size() == 2);
  CHECK(!n.validate());
  CHECK(testutil::diff(eval_diagram(n), eval_diagram(d)) < 1e-12);
}

TEST_CASE("zero-label boxes are retained, not folded") {
  RawDiagram d;
  const int o = d.fresh_wire(), w = d.fresh_wire();
  d.add_gen(GenKind::ZSpider, {}, {o, w});
  d.add_gen(GenKind::HBox, {w}, {}, HLabel::general({0.0, 0.0}));
  d.mutable_outputs() = {o};
  const Diagram n = normalize(d);
  REQUIRE(n.hboxes().size() == 1);
  CHECK(n.hboxes().begin()->second.label.value() == std::complex<double>(0.0, 0.0));
  CHECK(testutil::diff(eval_diagram(n), testutil::matrix(2, 1, {1.0, 0.0})) < 1e-12);
}

TEST_CASE("normalize preserves the tensor on random raw terms") {
  Rng rng(43);
  for (int i = 0; i < 60; ++i) {
    const RawDiagram d = random_raw_diagram(rng);
    const Diagram n = normalize(d);
    CHECK(!n.validate());
    CHECK(testutil::diff(eval_diagram(d), eval_diagram(n)) < 1e-9);
  }
}

TEST_CASE("duplicate neighborhoods fuse multiplicatively and 1-labels vanish") {
  RawDiagram d;
  const int o = d.fresh_wire(), w1 = d.fresh_wire(), w2 = d.fresh_wire();
  d.add_gen(GenKind::ZSpider, {}, {o, w1, w2});
  d.add_gen(GenKind::HBox, {w1}, {}, HLabel::from_phase(Phase::of(1, 8)));
  d.add_gen(GenKind::HBox, {w2}, {}, HLabel::from_phase(Phase::of(3, 8)));
  d.mutable_outputs() = {o};
  const Diagram n = normalize(d);
  CHECK(n.hboxes().size() == 1);
  CHECK(n.hboxes().begin()->second.label == HLabel::from_phase(Phase::of(1, 2)));

  RawDiagram cancel;
  const int o2 = cancel.fresh_wire(), v1 = cancel.fresh_wire(), v2 = cancel.fresh_wire();
  cancel.add_gen(GenKind::ZSpider, {}, {o2, v1, v2});
  cancel.add_gen(GenKind::HBox, {v1}, {}, HLabel::from_phase(Phase::of(1, 8)));
  cancel.add_gen(GenKind::HBox, {v2}, {}, HLabel::from_phase(Phase::of(7, 8)));
  cancel.mutable_outputs() = {o2};
  CHECK(normalize(cancel).hboxes().empty());
}

TEST_CASE("iso_equal accepts relabelings and rejects label changes") {
  Rng rng(47);
  for (int i = 0; i < 30; ++i) {
    const Diagram d = random_normalized_diagram(rng, 6, 6);
    // Rebuild with shifted ids.
    Diagram shifted;
    std::map<SpiderId, SpiderId> remap;
    for (SpiderId s : d.spiders()) remap[s] = shifted.add_spider_with_id(s + 100);
    for (const auto& [id, box] : d.hboxes()) {
      std::set<SpiderId> nbrs;
      for (SpiderId s : box.neighbors) nbrs.insert(remap.at(s));
      shifted.add_hbox(box.label, nbrs);
    }
    std::vector<SpiderId> in, out;
    for (SpiderId s : d.inputs()) in.push_back(remap.at(s));
    for (SpiderId s : d.outputs()) out.push_back(remap.at(s));
    shifted.set_inputs(in);
    shifted.set_outputs(out);
    shifted.set_scalar(d.scalar());
    CHECK(iso_equal(d, shifted));
  }

  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {0, 1};
  const Diagram cnot = normalize(gate_to_diagram(g, 2));
  Diagram tweaked = cnot;
  const HBoxId first = tweaked.hboxes().begin()->first;
  const auto box = tweaked.hboxes().at(first);
  tweaked.remove_hbox(first);
  tweaked.add_hbox(HLabel::from_phase(Phase::of(1, 4)), box.neighbors);
  CHECK_FALSE(iso_equal(cnot, tweaked));
}

TEST_CASE("iso_equal distinguishes scalars and boundary order") {
  Diagram a;
  const SpiderId s1 = a.add_spider(), s2 = a.add_spider();
  a.set_inputs({s1, s2});
  a.set_outputs({s1, s2});
  Diagram b = a;
  CHECK(iso_equal(a, b));
  b.set_outputs({s2, s1});
  CHECK_FALSE(iso_equal(a, b));
  Diagram c = a;
  c.scalar().mul_pow2_halves(1);
  CHECK_FALSE(iso_equal(a, c));
}

TEST_CASE("validate reports each normal-form violation") {
  Diagram d;
  const SpiderId s = d.add_spider();
  d.set_inputs({s});
  CHECK(!d.validate());
  d.add_hbox(HLabel::minus_one(), {s});
  d.add_hbox(HLabel::from_phase(Phase::of(1, 4)), {s});
  auto why = d.validate();
  REQUIRE(why.has_value());
  CHECK(why->find("share a neighborhood") != std::string::npos);
}

TEST_CASE("composition arity mismatch throws") {
  CHECK_THROWS_AS(compose_seq(RawDiagram::identity(1), RawDiagram::identity(2)), Error);
}

TEST_CASE("swap wiring permutes the boundary") {
  const DenseMatrix m = eval_diagram(RawDiagram::wire_swap());
  Gate g;
  g.kind = GateKind::SWAP;
  g.qubits = {0, 1};
  CHECK(testutil::diff(m, testutil::gate_unitary(g)) < 1e-12);
}
