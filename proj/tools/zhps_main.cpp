#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "zhps/graph_rules.hpp"
#include "zhps/json_io.hpp"
#include "zhps/selfcheck.hpp"
#include "zhps/translate.hpp"
#include "zhps/verify.hpp"

namespace {

using namespace zhps;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

PurePathSum load_pathsum(const std::string& path, const std::string& kind, bool inexact) {
  const std::string text = slurp(path);
  if (kind == "circuit") return circuit_to_pathsum(parse_circuit(text));
  if (kind == "pathsum") return pathsum_from_json_text(text);
  if (kind == "zh") return zh_to_pathsum(diagram_from_json_text(text), inexact);
  throw Error("unknown input kind '" + kind + "'");
}

Diagram load_diagram(const std::string& path, const std::string& kind) {
  const std::string text = slurp(path);
  if (kind == "circuit") return normalize(circuit_to_diagram(parse_circuit(text)));
  if (kind == "zh") return diagram_from_json_text(text);
  if (kind == "pathsum") return pathsum_to_zh(pathsum_from_json_text(text));
  throw Error("unknown input kind '" + kind + "'");
}

int run_verify_pair(const std::string& a, const std::string& b, const std::string& kind,
                    const std::string& engine, const VerifyOptions& opt, std::ostream& os) {
  Verdict v;
  if (kind == "circuit") {
    const Circuit ca = parse_circuit(slurp(a)), cb = parse_circuit(slurp(b));
    v = engine == "diagram" ? verify_circuits_diagram(ca, cb, opt) : verify_circuits(ca, cb, opt);
  } else if (engine == "diagram") {
    v = verify_diagrams(load_diagram(a, kind), load_diagram(b, kind), opt);
  } else {
    const PurePathSum ea = load_pathsum(a, kind, false), eb = load_pathsum(b, kind, false);
    v = verify_pathsums(ea, eb, opt);
  }
  os << v.status_str();
  if (v.by_rewriting)
    os << " (by rewriting, " << v.trace.size() << " steps)";
  else if (v.status == VerifyStatus::Equal || v.status == VerifyStatus::EqualUpToGlobalPhase)
    os << " (by oracle)";
  if (v.evidence) {
    os << " witness entry (" << v.evidence->row << "," << v.evidence->col << "): "
       << v.evidence->lhs << " vs " << v.evidence->rhs;
  }
  os << "\n";
  return v.exit_code();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"zhps: ZH-diagram / path-sum circuit verification and simplification"};
  app.require_subcommand(1);

  // translate
  auto* tr = app.add_subcommand("translate", "convert between circuit, zh and pathsum forms");
  std::string tr_in, tr_out = "-", tr_from = "circuit", tr_to = "pathsum", tr_dot;
  bool tr_inexact = false;
  tr->add_option("--in", tr_in, "input file")->required();
  tr->add_option("--from", tr_from, "circuit|zh|pathsum")
      ->check(CLI::IsMember({"circuit", "zh", "pathsum"}));
  tr->add_option("--to", tr_to, "zh|pathsum")->check(CLI::IsMember({"zh", "pathsum"}));
  tr->add_option("--out", tr_out, "output file ('-' for stdout)");
  tr->add_option("--dot", tr_dot, "also write a Graphviz rendering of the zh form");
  tr->add_flag("--inexact", tr_inexact, "accept unit-modulus labels with irrational phases");

  // simplify
  auto* si = app.add_subcommand("simplify", "rewrite to a fixpoint");
  std::string si_in, si_out = "-", si_from = "circuit", si_engine = "pathsum", si_trace, si_dot;
  si->add_option("--in", si_in, "input file")->required();
  si->add_option("--from", si_from, "circuit|zh|pathsum")
      ->check(CLI::IsMember({"circuit", "zh", "pathsum"}));
  si->add_option("--engine", si_engine, "pathsum|diagram")
      ->check(CLI::IsMember({"pathsum", "diagram"}));
  si->add_option("--out", si_out, "output file ('-' for stdout)");
  si->add_option("--trace", si_trace, "rewrite trace JSON file");
  si->add_option("--dot", si_dot, "Graphviz rendering of the result (diagram engine)");

  // verify
  auto* ve = app.add_subcommand("verify", "check two inputs implement the same unitary");
  std::vector<std::string> ve_files;
  std::string ve_from = "circuit", ve_mode = "exact", ve_engine = "pathsum", ve_pairs;
  int ve_cap = 0, ve_jobs = 1;
  ve->add_option("inputs", ve_files, "two input files")->expected(0, 2);
  ve->add_option("--from", ve_from, "circuit|zh|pathsum")
      ->check(CLI::IsMember({"circuit", "zh", "pathsum"}));
  ve->add_option("--mode", ve_mode, "exact|global-phase")
      ->check(CLI::IsMember({"exact", "global-phase"}));
  ve->add_option("--engine", ve_engine, "pathsum|diagram")
      ->check(CLI::IsMember({"pathsum", "diagram"}));
  ve->add_option("--oracle-cap", ve_cap, "brute-force size cap");
  ve->add_option("--pairs", ve_pairs, "batch file with one 'A B' pair per line");
  ve->add_option("--jobs", ve_jobs, "parallel workers in batch mode");

  // eval
  auto* ev = app.add_subcommand("eval", "print the dense matrix");
  std::string ev_in, ev_from = "circuit", ev_format = "text";
  int ev_cap = 0;
  ev->add_option("--in", ev_in, "input file")->required();
  ev->add_option("--from", ev_from, "circuit|zh|pathsum")
      ->check(CLI::IsMember({"circuit", "zh", "pathsum"}));
  ev->add_option("--format", ev_format, "text|json")->check(CLI::IsMember({"text", "json"}));
  ev->add_option("--oracle-cap", ev_cap, "brute-force size cap");

  // selfcheck
  auto* sc = app.add_subcommand("selfcheck", "randomized soundness suite");
  std::uint64_t sc_seed = 1;
  int sc_cases = 100;
  std::string sc_fault;
  sc->add_option("--seed", sc_seed, "random seed");
  sc->add_option("--cases", sc_cases, "cases per rule");
  sc->add_option("--inject-fault", sc_fault, "corrupt the named rule (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tr) {
      if (tr_to == "zh") {
        const Diagram d = tr_from == "zh" ? diagram_from_json_text(slurp(tr_in))
                                          : load_diagram(tr_in, tr_from);
        spit(tr_out, diagram_to_json(d) + "\n");
        if (!tr_dot.empty()) spit(tr_dot, diagram_to_dot(d));
      } else {
        const PurePathSum e = load_pathsum(tr_in, tr_from, tr_inexact);
        spit(tr_out, pathsum_to_json(e) + "\n");
        if (!tr_dot.empty()) spit(tr_dot, diagram_to_dot(pathsum_to_zh(e)));
      }
      return 0;
    }
    if (*si) {
      if (si_engine == "pathsum") {
        const PurePathSum e = load_pathsum(si_in, si_from, false);
        auto [fix, trace] = simplify(e);
        std::cerr << "variables: " << e.num_vars() << " -> " << fix.num_vars() << " ("
                  << trace.size() << " steps)\n";
        spit(si_out, pathsum_to_json(fix) + "\n");
        if (!si_trace.empty()) spit(si_trace, trace_to_json(trace) + "\n");
      } else {
        const Diagram d = load_diagram(si_in, si_from);
        auto [fix, trace] = simplify_diagram(d);
        std::cerr << "spiders: " << d.spiders().size() << " -> " << fix.spiders().size() << " ("
                  << trace.size() << " steps)\n";
        spit(si_out, diagram_to_json(fix) + "\n");
        if (!si_trace.empty()) spit(si_trace, trace_to_json(trace) + "\n");
        if (!si_dot.empty()) spit(si_dot, diagram_to_dot(fix));
      }
      return 0;
    }
    if (*ve) {
      VerifyOptions opt;
      opt.mode = ve_mode == "global-phase" ? CompareMode::UpToGlobalPhase : CompareMode::ExactScalar;
      opt.oracle_cap = ve_cap;
      if (!ve_pairs.empty()) {
        std::vector<std::pair<std::string, std::string>> pairs;
        std::istringstream in(slurp(ve_pairs));
        std::string a, b;
        while (in >> a >> b) pairs.emplace_back(a, b);
        const int jobs = std::max(1, ve_jobs);
        std::atomic<std::size_t> next{0};
        std::mutex mu;
        std::vector<std::pair<std::size_t, std::string>> results(pairs.size());
        std::vector<int> codes(pairs.size(), 0);
        auto worker = [&] {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            std::ostringstream os;
            int code = 3;
            try {
              code = run_verify_pair(pairs[i].first, pairs[i].second, ve_from, ve_engine, opt, os);
            } catch (const std::exception& ex) {
              os << "error: " << ex.what() << "\n";
            }
            std::lock_guard<std::mutex> lk(mu);
            results[i] = {i, os.str()};
            codes[i] = code;
          }
        };
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        int worst = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          std::cout << pairs[i].first << " " << pairs[i].second << ": " << results[i].second;
          worst = std::max(worst, codes[i]);
        }
        return worst;
      }
      if (ve_files.size() != 2) {
        std::cerr << "verify needs two inputs (or --pairs FILE)\n";
        return 3;
      }
      return run_verify_pair(ve_files[0], ve_files[1], ve_from, ve_engine, opt, std::cout);
    }
    if (*ev) {
      const int cap = ev_cap > 0 ? ev_cap : oracle_cap();
      DenseMatrix m;
      if (ev_from == "pathsum")
        m = eval_pathsum(load_pathsum(ev_in, ev_from, false), cap);
      else if (ev_from == "circuit")
        m = eval_diagram(circuit_to_diagram(parse_circuit(slurp(ev_in))), cap);
      else
        m = eval_diagram(load_diagram(ev_in, ev_from), cap);
      std::cout << (ev_format == "json" ? matrix_to_json(m) + "\n" : matrix_to_text(m));
      return 0;
    }
    if (*sc) {
      SelfCheckOptions opt;
      opt.seed = sc_seed;
      opt.cases = sc_cases;
      opt.inject_fault = sc_fault;
      bool all_ok = true;
      for (const auto& rep : run_selfcheck(opt)) {
        const bool ok = rep.passed();
        all_ok &= ok;
        std::cout << (ok ? "PASS" : "FAIL") << " " << rep.rule << " (" << rep.cases << " cases";
        if (rep.worst_diff > 0) std::cout << ", worst " << rep.worst_diff;
        if (rep.failures) std::cout << ", " << rep.failures << " failures";
        std::cout << ")\n";
      }
      return all_ok ? 0 : 1;
    }
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 3;
}
