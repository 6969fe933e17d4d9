// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and case counts are pinned here.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "testutil.hpp"
#include "zhps/graph_rules.hpp"
#include "zhps/random_gen.hpp"
#include "zhps/rules.hpp"
#include "zhps/selfcheck.hpp"
#include "zhps/translate.hpp"
#include "zhps/verify.hpp"

using namespace zhps;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool ok{true};
  std::string detail;
  double seconds{0.0};
};

std::vector<Criterion> results;

template <typename F>
void run(int id, const std::string& name, double budget_s, F body) {
  Criterion c;
  c.id = id;
  c.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    c.ok = body(detail);
    c.detail = detail.str();
  } catch (const std::exception& ex) {
    c.ok = false;
    c.detail = std::string("exception: ") + ex.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && c.seconds > budget_s) {
    c.ok = false;
    c.detail += " [over time budget]";
  }
  results.push_back(c);
  std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
  if (!c.detail.empty()) std::cout << " — " << c.detail;
  std::cout << " (" << c.seconds << " s)\n" << std::flush;
}

std::string fixture(const std::string& name) {
  return std::string(ZHPS_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

} // namespace

int main() {
  // 1. Bijection roundtrips.
  run(1, "bijection roundtrips", 10.0, [](std::ostringstream& detail) {
    Rng rng(2024);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
      const PurePathSum e = random_pathsum(rng, 8, 10);
      if (!(zh_to_pathsum(pathsum_to_zh(e)) == e)) ++bad;
    }
    for (int i = 0; i < 500; ++i) {
      const Diagram d = random_normalized_diagram(rng, 8, 10);
      if (!iso_equal(pathsum_to_zh(zh_to_pathsum(d)), d)) ++bad;
    }
    detail << "500+500 cases, " << bad << " mismatches";
    return bad == 0;
  });

  // 2. The CNOT chain.
  run(2, "CNOT purification and translation", 0.0, [](std::ostringstream& detail) {
    bool ok = true;
    const std::vector<BoolPoly> f = {BoolPoly{BoolMonomial({1})},
                                     BoolPoly{BoolMonomial({1}), BoolMonomial({2})}};
    const PurePathSum purified = purify(f, PhasePoly(), ScalarFactor::one(), 2, 0);
    const Phase h = Phase::of(1, 2);
    ok &= purified.phi().size() == 5;
    for (const BoolMonomial& m :
         {BoolMonomial({3, 4}), BoolMonomial({1, 3}), BoolMonomial({5, 6}), BoolMonomial({1, 5}),
          BoolMonomial({2, 5})})
      ok &= purified.phi().coeff(m) == h;

    Gate g;
    g.kind = GateKind::CNOT;
    g.qubits = {0, 1};
    const Diagram nd = normalize(gate_to_diagram(g, 2));
    const PurePathSum translated = zh_to_pathsum(nd);
    ok &= translated.phi().size() == 3;
    for (const auto& [m, c] : translated.phi().terms()) ok &= (m.degree() == 2 && c == h);

    const DenseMatrix want = testutil::gate_unitary(g);
    const double d1 =
        compare(eval_pathsum(purified), want, CompareMode::UpToGlobalPhase, 1e-12).max_abs_diff;
    const double d2 =
        compare(eval_pathsum(translated), want, CompareMode::UpToGlobalPhase, 1e-12).max_abs_diff;
    ok &= d1 <= 1e-12 && d2 <= 1e-12;
    detail << "five 1/2-monomials, three 1/2-monomials, oracle diffs " << d1 << " / " << d2;
    return ok;
  });

  // 3. Rule soundness, 100 in-precondition instances per rule.
  run(3, "rule soundness vs oracle", 120.0, [](std::ostringstream& detail) {
    const std::vector<std::string> units = {
        "Elim", "omega", "HH",  "Case", "fourier_transform", "hyper_local_complement",
        "hyper_pivot", "fourier_hyper_pivot", "case_hyper_pivot", "ZS1", "ZS2", "HS1",
        "HS2",  "BA1",  "BA2", "M",    "U",   "I",  "A",  "O"};
    SelfCheckOptions opt;
    opt.seed = 424242;
    opt.cases = 100;
    opt.tol = 1e-9;
    bool ok = true;
    double worst = 0.0;
    for (const auto& unit : units) {
      const RuleReport rep = check_unit(unit, opt);
      worst = std::max(worst, rep.worst_diff);
      if (!rep.passed()) {
        ok = false;
        detail << unit << " failed " << rep.failures << "/" << rep.cases << "; ";
      }
    }
    detail << units.size() << " rules x 100 cases, worst diff " << worst;
    return ok;
  });

  // 4. Lifting correctness.
  run(4, "lifting agrees over the Booleans", 0.0, [](std::ostringstream& detail) {
    Rng rng(77);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
      const int nvars = rng.range(1, 6);
      BoolPoly q;
      for (int t = rng.range(0, 6); t > 0; --t) {
        std::vector<Var> vs;
        for (Var v = 1; v <= nvars; ++v)
          if (rng.chance(0.5)) vs.push_back(v);
        if (!vs.empty()) q.xor_mono(BoolMonomial(vs));
      }
      const IntPoly lifted = lift(q);
      for (std::size_t mask = 0; mask < (std::size_t(1) << nvars); ++mask) {
        auto bit = [&](Var v) { return ((mask >> (v - 1)) & 1) != 0; };
        const std::int64_t lv = lifted.eval(bit);
        if (lv != (q.eval(bit) ? 1 : 0)) ++bad;
      }
      const Phase alpha = rng.phase();
      PhasePoly scaled_by_hand;
      for (const auto& [m, c] : lifted.terms()) scaled_by_hand.add_term(m, alpha.times_int(c));
      if (!(scale_lift(alpha, q) == scaled_by_hand)) ++bad;
    }
    detail << "200 polynomials, " << bad << " disagreements";
    return bad == 0;
  });

  // 5. The combinatorial identity behind the fused phases.
  run(5, "integer identity sum C(p,r)C(r,q-p)(-2)^(q-1) = -(-2)^(p-1)", 0.0,
      [](std::ostringstream& detail) {
        int checked = 0, bad = 0;
        for (int p = 1; p <= 10; ++p)
          for (int n = p; n <= 10; ++n) {
            std::int64_t sum = 0;
            for (int q = p; q <= 2 * n; ++q) {
              std::int64_t pw = 1;
              for (int i = 1; i < q; ++i) pw *= -2;
              for (int r = 1; r <= p; ++r) sum += binom(p, r) * binom(r, q - p) * pw;
            }
            std::int64_t want = 1;
            for (int i = 1; i < p; ++i) want *= -2;
            want = -want;
            ++checked;
            if (sum != want) ++bad;
          }
        detail << checked << " (p, n) pairs with p <= n <= 10, " << bad << " failures";
        return bad == 0;
      });

  // 6. Verification workloads.
  run(6, "verification workloads", 120.0, [](std::ostringstream& detail) {
    bool ok = true;

    // (a) the checked-in Toffoli+H fixture reduces to bare wires.
    const Circuit fix = parse_circuit(slurp(fixture("toffoli_roundtrip.qc")));
    auto [reduced, trace] = simplify_diagram(normalize(circuit_to_diagram(fix)));
    if (!reduced.is_identity()) {
      ok = false;
      detail << "fixture did not reduce to the identity; ";
    }

    // (b) equal-by-rewriting pairs.
    for (const char* text : {"qubits 3\ntof 0 1 2\ntof 0 1 2\n",
                             "qubits 2\ncnot 0 1\ncnot 0 1\n", "qubits 1\nh 0\nh 0\n"}) {
      const Circuit c = parse_circuit(text);
      const Circuit id = parse_circuit("qubits " + std::to_string(c.width) + "\n");
      const Verdict v = verify_circuits(c, id);
      if (v.status != VerifyStatus::Equal || !v.by_rewriting) {
        ok = false;
        detail << "rewriting-only proof missing; ";
      }
    }

    // (c) 50 random self-equivalences, no Unequal and nothing left unproven.
    Rng rng(31337);
    int rewritten = 0, by_oracle = 0, unequal = 0, unproven = 0;
    for (int i = 0; i < 50; ++i) {
      const Circuit c = random_circuit(rng, rng.range(1, 4), rng.range(1, 20),
                                       {GateKind::TOF, GateKind::H, GateKind::CNOT, GateKind::T});
      const Verdict v = verify_circuits(c, c);
      switch (v.status) {
        case VerifyStatus::Equal:
        case VerifyStatus::EqualUpToGlobalPhase:
          (v.by_rewriting ? rewritten : by_oracle)++;
          break;
        case VerifyStatus::NotProven: ++unproven; break;
        case VerifyStatus::Unequal: ++unequal; break;
      }
    }
    detail << "50 self-checks: " << rewritten << " by rewriting, " << by_oracle << " by oracle, "
           << unproven << " unproven, " << unequal << " unequal";
    return ok && unequal == 0 && unproven == 0;
  });

  // 7. Normalization contract.
  run(7, "normalization contract", 0.0, [](std::ostringstream& detail) {
    Rng rng(90210);
    int bad_form = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const RawDiagram d = random_raw_diagram(rng);
      const Diagram n = normalize(d);
      // The five normal-form conditions: (1)-(3) are structural in this
      // representation; validate() covers referential integrity, nonempty
      // neighborhoods, set-valued edges and distinct neighborhoods.
      if (n.validate()) ++bad_form;
      worst = std::max(worst, eval_diagram(d).max_abs_diff(eval_diagram(n)));
    }
    detail << "200 raw terms, " << bad_form << " malformed, worst tensor diff " << worst;
    return bad_form == 0 && worst <= 1e-9;
  });

  // 8. Bridge between the path-sum rules and the graphical rules.
  run(8, "rewrite bridge", 0.0, [](std::ostringstream& detail) {
    Rng rng(60606);
    int bad = 0, cases = 0;
    auto bridge_ok = [&](const Diagram& d, const GMatch& gm) {
      const PurePathSum e = zh_to_pathsum(d);
      PurePathSum via_rule;
      bool found = false;
      if (gm.rule == GRule::HyperLocalComp) {
        for (const auto& m : match_omega(e))
          if (m.y0 == gm.u && !found) {
            via_rule = apply_omega(e, m);
            found = true;
          }
      } else if (gm.rule == GRule::CaseHyperPivot) {
        for (const auto& m : match_case(e))
          if (((m.y0 == gm.u && m.y1 == gm.v) || (m.y0 == gm.v && m.y1 == gm.u)) && !found) {
            via_rule = apply_case(e, m);
            found = true;
          }
      } else {
        for (const auto& m : match_hh(e))
          if (((m.y0 == gm.u && m.y1 == gm.v) || (m.y0 == gm.v && m.y1 == gm.u)) && !found) {
            via_rule = apply_hh(e, m);
            found = true;
          }
      }
      if (!found) return false;
      Diagram after;
      switch (gm.rule) {
        case GRule::HyperLocalComp: after = hyper_local_complement(d, gm); break;
        case GRule::HyperPivot: after = hyper_pivot(d, gm); break;
        case GRule::FourierHyperPivot: after = fourier_hyper_pivot(d, gm); break;
        case GRule::CaseHyperPivot: after = case_hyper_pivot(d, gm); break;
      }
      const PurePathSum via_graph = zh_to_pathsum(after);
      return via_graph.phi() == via_rule.phi() && via_graph.scalar() == via_rule.scalar() &&
             via_graph.vars() == via_rule.vars() &&
             via_graph.input_sig() == via_rule.input_sig() &&
             via_graph.output_sig() == via_rule.output_sig();
    };
    for (int i = 0; i < 25; ++i) {
      const Diagram d = random_hlc_instance(rng);
      ++cases;
      if (!bridge_ok(d, match_hyper_local_complement(d).front())) ++bad;
    }
    for (int i = 0; i < 25; ++i) {
      const Diagram d = random_hp_instance(rng);
      ++cases;
      if (!bridge_ok(d, match_hyper_pivot(d).front())) ++bad;
    }
    for (int i = 0; i < 25; ++i) {
      const Diagram d = random_fhp_instance(rng);
      ++cases;
      if (!bridge_ok(d, match_fourier_hyper_pivot(d).front())) ++bad;
    }
    for (int i = 0; i < 25; ++i) {
      const Diagram d = random_chp_instance(rng);
      ++cases;
      if (!bridge_ok(d, match_case_hyper_pivot(d).front())) ++bad;
    }
    detail << cases << " matched instances, " << bad << " mismatches";
    return bad == 0;
  });

  int failures = 0;
  for (const auto& c : results)
    if (!c.ok) ++failures;
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
