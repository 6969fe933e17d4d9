#include "zhps/verify.hpp"

#include "zhps/graph_rules.hpp"

namespace zhps {

std::string Verdict::status_str() const {
  switch (status) {
    case VerifyStatus::Equal: return "Equal";
    case VerifyStatus::EqualUpToGlobalPhase: return "EqualUpToGlobalPhase";
    case VerifyStatus::NotProven: return "NotProven";
    case VerifyStatus::Unequal: return "Unequal";
  }
  return "?";
}

namespace {

Verdict oracle_fallback(const DenseMatrix& ma, const DenseMatrix& mb, const VerifyOptions& opt,
                        Verdict base) {
  const CompareResult exact = compare(ma, mb, CompareMode::ExactScalar, 1e-9);
  if (exact.equal()) {
    base.status = VerifyStatus::Equal;
    return base;
  }
  const CompareResult phase = compare(ma, mb, CompareMode::UpToGlobalPhase, 1e-9);
  if (phase.equal() && opt.mode == CompareMode::UpToGlobalPhase) {
    base.status = VerifyStatus::EqualUpToGlobalPhase;
    return base;
  }
  if (!phase.equal()) {
    base.status = VerifyStatus::Unequal;
    OracleEvidence ev;
    ev.row = exact.row;
    ev.col = exact.col;
    ev.lhs = ma.at(exact.row, exact.col);
    ev.rhs = mb.at(exact.row, exact.col);
    ev.diff = exact.max_abs_diff;
    base.evidence = ev;
    return base;
  }
  // Equal up to phase but exact equality was requested.
  base.status = VerifyStatus::Unequal;
  OracleEvidence ev;
  ev.row = exact.row;
  ev.col = exact.col;
  ev.lhs = ma.at(exact.row, exact.col);
  ev.rhs = mb.at(exact.row, exact.col);
  ev.diff = exact.max_abs_diff;
  base.evidence = ev;
  return base;
}

} // namespace

Verdict verify_pathsums(const PurePathSum& a, const PurePathSum& b, const VerifyOptions& opt) {
  if (a.arity_in() != b.arity_in() || a.arity_out() != b.arity_out())
    throw Error("verify: arity mismatch");
  const int cap = opt.oracle_cap > 0 ? opt.oracle_cap : oracle_cap();

  const PurePathSum product = compose_pathsums(a, b.adjoint());
  auto [fix, trace] = simplify(product, opt.policy);

  Verdict v;
  v.trace = std::move(trace);
  v.residual_vars = fix.num_vars();
  if (fix.is_identity(false)) {
    v.status = VerifyStatus::Equal;
    v.by_rewriting = true;
    return v;
  }
  if (opt.mode == CompareMode::UpToGlobalPhase && fix.is_identity(true)) {
    v.status = fix.scalar().phase().is_zero() ? VerifyStatus::Equal
                                              : VerifyStatus::EqualUpToGlobalPhase;
    v.by_rewriting = true;
    return v;
  }

  // Oracle fallback on the operands themselves.
  if (static_cast<int>(a.num_vars()) <= cap && static_cast<int>(b.num_vars()) <= cap) {
    const DenseMatrix ma = eval_pathsum(a, cap);
    const DenseMatrix mb = eval_pathsum(b, cap);
    return oracle_fallback(ma, mb, opt, std::move(v));
  }
  // Or on the simplified product against the identity.
  if (static_cast<int>(fix.num_vars()) <= cap) {
    const DenseMatrix mp = eval_pathsum(fix, cap);
    DenseMatrix ident(mp.rows, mp.cols);
    if (mp.rows == mp.cols)
      for (std::size_t i = 0; i < mp.rows; ++i) ident.at(i, i) = 1.0;
    return oracle_fallback(mp, ident, opt, std::move(v));
  }
  v.status = VerifyStatus::NotProven;
  return v;
}

Verdict verify_circuits(const Circuit& a, const Circuit& b, const VerifyOptions& opt) {
  if (a.width != b.width) throw Error("verify: circuit widths differ");
  const int cap = opt.oracle_cap > 0 ? opt.oracle_cap : oracle_cap();

  const PurePathSum ea = circuit_to_pathsum(a);
  const PurePathSum eb = circuit_to_pathsum(b);
  const PurePathSum product = compose_pathsums(ea, eb.adjoint());
  auto [fix, trace] = simplify(product, opt.policy);

  Verdict v;
  v.trace = std::move(trace);
  v.residual_vars = fix.num_vars();
  if (fix.is_identity(false)) {
    v.status = VerifyStatus::Equal;
    v.by_rewriting = true;
    return v;
  }
  if (opt.mode == CompareMode::UpToGlobalPhase && fix.is_identity(true)) {
    v.status = fix.scalar().phase().is_zero() ? VerifyStatus::Equal
                                              : VerifyStatus::EqualUpToGlobalPhase;
    v.by_rewriting = true;
    return v;
  }

  // Circuits have an always-available tensor route.
  const DenseMatrix ma = eval_diagram(circuit_to_diagram(a), cap);
  const DenseMatrix mb = eval_diagram(circuit_to_diagram(b), cap);
  return oracle_fallback(ma, mb, opt, std::move(v));
}

namespace {

Verdict verify_raw_diagrams(const RawDiagram& ra, const RawDiagram& rb, const RawDiagram& rb_adj,
                            const VerifyOptions& opt) {
  if (ra.arity_in() != rb.arity_in() || ra.arity_out() != rb.arity_out())
    throw Error("verify: arity mismatch");
  const int cap = opt.oracle_cap > 0 ? opt.oracle_cap : oracle_cap();

  auto [fix, trace] = simplify_diagram(normalize(compose_seq(ra, rb_adj)));

  Verdict v;
  v.trace = std::move(trace);
  v.residual_vars = fix.spiders().size();
  if (fix.is_identity(false)) {
    v.status = VerifyStatus::Equal;
    v.by_rewriting = true;
    return v;
  }
  if (opt.mode == CompareMode::UpToGlobalPhase && fix.is_identity(true)) {
    v.status = fix.scalar().phase().is_zero() ? VerifyStatus::Equal
                                              : VerifyStatus::EqualUpToGlobalPhase;
    v.by_rewriting = true;
    return v;
  }
  const DenseMatrix ma = eval_diagram(ra, cap);
  const DenseMatrix mb = eval_diagram(rb, cap);
  return oracle_fallback(ma, mb, opt, std::move(v));
}

} // namespace

Verdict verify_circuits_diagram(const Circuit& a, const Circuit& b, const VerifyOptions& opt) {
  if (a.width != b.width) throw Error("verify: circuit widths differ");
  return verify_raw_diagrams(circuit_to_diagram(a), circuit_to_diagram(b),
                             circuit_to_diagram(adjoint(b)), opt);
}

Verdict verify_diagrams(const Diagram& a, const Diagram& b, const VerifyOptions& opt) {
  return verify_raw_diagrams(a.to_raw(), b.to_raw(), b.adjoint().to_raw(), opt);
}

} // namespace zhps
