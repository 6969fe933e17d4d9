#include "zhps/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace zhps {

DenseMatrix DenseMatrix::times(const DenseMatrix& o) const {
  if (cols != o.rows) throw Error("matrix product shape mismatch");
  DenseMatrix r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const auto v = at(i, k);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

DenseMatrix DenseMatrix::scaled(std::complex<double> z) const {
  DenseMatrix r = *this;
  for (auto& v : r.data) v *= z;
  return r;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& o) const {
  if (rows != o.rows || cols != o.cols) throw Error("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) m = std::max(m, std::abs(data[i] - o.data[i]));
  return m;
}

std::string DenseMatrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) os << "\t";
      os << at(r, c).real() << (at(r, c).imag() < 0 ? "" : "+") << at(r, c).imag() << "j";
    }
    os << "\n";
  }
  return os.str();
}

int oracle_cap() {
  if (const char* env = std::getenv("ZHPS_ORACLE_CAP")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 20;
}

DenseMatrix eval_pathsum(const PurePathSum& e, std::optional<int> cap) {
  const int limit = cap.value_or(oracle_cap());
  const std::vector<Var> order(e.vars().begin(), e.vars().end());
  if (static_cast<int>(order.size()) > limit)
    throw Error("eval_pathsum: " + std::to_string(order.size()) + " variables exceeds cap " +
                std::to_string(limit));

  DenseMatrix m(std::size_t(1) << e.output_sig().size(), std::size_t(1) << e.input_sig().size());
  const std::size_t total = std::size_t(1) << order.size();
  std::map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  for (std::size_t mask = 0; mask < total; ++mask) {
    auto bit = [&](Var v) { return ((mask >> pos.at(v)) & 1) != 0; };
    const Phase ph = e.phi().eval(bit);
    std::size_t row = 0, col = 0;
    for (Var v : e.output_sig()) row = (row << 1) | (bit(v) ? 1 : 0);
    for (Var v : e.input_sig()) col = (col << 1) | (bit(v) ? 1 : 0);
    m.at(row, col) += ph.to_complex();
  }
  return m.scaled(e.scalar().to_complex());
}

namespace {

struct Tensor {
  std::vector<int> wires; // index 0 is the least significant bit
  std::vector<std::complex<double>> data;

  std::size_t size() const { return data.size(); }
};

Tensor gen_tensor(const RawDiagram::Gen& g) {
  std::vector<int> wires = g.in_wires;
  wires.insert(wires.end(), g.out_wires.begin(), g.out_wires.end());
  const std::size_t n = wires.size();
  Tensor t;
  t.wires = wires;
  t.data.assign(std::size_t(1) << n, {0.0, 0.0});
  switch (g.kind) {
    case GenKind::ZSpider:
      t.data[0] = 1.0;
      t.data[t.data.size() - 1] += 1.0; // arity 0: 1+1 = 2
      break;
    case GenKind::HBox: {
      const std::complex<double> a = g.label.value();
      for (auto& v : t.data) v = 1.0;
      t.data[t.data.size() - 1] = a;
      break;
    }
    case GenKind::XSpider: {
      const double scale = std::pow(2.0, 1.0 - static_cast<double>(n) / 2.0);
      for (std::size_t i = 0; i < t.data.size(); ++i)
        if (__builtin_parityll(i) == 0) t.data[i] = scale;
      break;
    }
    case GenKind::Not:
      t.data[1] = 1.0;
      t.data[2] = 1.0;
      break;
    case GenKind::Hadamard:
      t.data[0] = t.data[1] = t.data[2] = 1.0;
      t.data[3] = -1.0;
      break;
  }
  return t;
}

// Traces out wires that appear twice within the tensor.
Tensor self_trace(Tensor t) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < t.wires.size() && !again; ++i)
      for (std::size_t j = i + 1; j < t.wires.size(); ++j)
        if (t.wires[i] == t.wires[j]) {
          std::vector<int> nw;
          for (std::size_t k = 0; k < t.wires.size(); ++k)
            if (k != i && k != j) nw.push_back(t.wires[k]);
          Tensor r;
          r.wires = nw;
          r.data.assign(std::size_t(1) << nw.size(), {0.0, 0.0});
          for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
            if (((idx >> i) & 1) != ((idx >> j) & 1)) continue;
            std::size_t out = 0;
            std::size_t b = 0;
            for (std::size_t k = 0; k < t.wires.size(); ++k) {
              if (k == i || k == j) continue;
              out |= ((idx >> k) & 1) << b;
              ++b;
            }
            r.data[out] += t.data[idx];
          }
          t = std::move(r);
          again = true;
          break;
        }
  }
  return t;
}

Tensor contract(const Tensor& a, const Tensor& b, int cap) {
  std::set<int> shared;
  for (int w : a.wires)
    for (int w2 : b.wires)
      if (w == w2) shared.insert(w);
  std::vector<int> out_wires;
  for (int w : a.wires)
    if (!shared.count(w)) out_wires.push_back(w);
  for (int w : b.wires)
    if (!shared.count(w)) out_wires.push_back(w);
  if (static_cast<int>(out_wires.size()) > cap)
    throw Error("eval_diagram: intermediate tensor rank " + std::to_string(out_wires.size()) +
                " exceeds cap " + std::to_string(cap));

  Tensor r;
  r.wires = out_wires;
  r.data.assign(std::size_t(1) << out_wires.size(), {0.0, 0.0});

  std::map<int, std::size_t> apos, bpos, rpos;
  for (std::size_t i = 0; i < a.wires.size(); ++i) apos[a.wires[i]] = i;
  for (std::size_t i = 0; i < b.wires.size(); ++i) bpos[b.wires[i]] = i;
  for (std::size_t i = 0; i < out_wires.size(); ++i) rpos[out_wires[i]] = i;
  const std::vector<int> sh(shared.begin(), shared.end());

  for (std::size_t out = 0; out < r.data.size(); ++out) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t smask = 0; smask < (std::size_t(1) << sh.size()); ++smask) {
      auto value_of = [&](int wire) -> std::size_t {
        auto it = rpos.find(wire);
        if (it != rpos.end()) return (out >> it->second) & 1;
        for (std::size_t k = 0; k < sh.size(); ++k)
          if (sh[k] == wire) return (smask >> k) & 1;
        throw Error("contract: missing wire");
      };
      std::size_t ai = 0, bi = 0;
      for (std::size_t k = 0; k < a.wires.size(); ++k) ai |= value_of(a.wires[k]) << k;
      for (std::size_t k = 0; k < b.wires.size(); ++k) bi |= value_of(b.wires[k]) << k;
      acc += a.data[ai] * b.data[bi];
    }
    r.data[out] = acc;
  }
  return r;
}

} // namespace

DenseMatrix eval_diagram(const RawDiagram& d, std::optional<int> cap) {
  d.check_wiring();
  // The cap bounds the open-wire count and every intermediate tensor rank;
  // the total wire count only affects how many contraction steps run.
  const int limit = cap.value_or(oracle_cap());
  if (static_cast<int>(d.input_wires().size() + d.output_wires().size()) > limit)
    throw Error("eval_diagram: " +
                std::to_string(d.input_wires().size() + d.output_wires().size()) +
                " boundary wires exceeds cap " + std::to_string(limit));

  std::vector<Tensor> tensors;
  for (const auto& g : d.gens()) tensors.push_back(self_trace(gen_tensor(g)));

  // Wires that still need contraction are exactly those with two generator
  // endpoints; boundary wires stay open.
  std::map<int, int> gen_count;
  for (const auto& t : tensors)
    for (int w : t.wires) gen_count[w]++;

  auto shares_contractible = [&](const Tensor& a, const Tensor& b) {
    for (int w : a.wires)
      if (gen_count[w] == 2)
        for (int w2 : b.wires)
          if (w == w2) return true;
    return false;
  };

  for (bool progress = true; progress;) {
    progress = false;
    std::size_t best_i = 0, best_j = 0;
    std::size_t best_rank = SIZE_MAX;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      for (std::size_t j = i + 1; j < tensors.size(); ++j) {
        if (!shares_contractible(tensors[i], tensors[j])) continue;
        std::set<int> u(tensors[i].wires.begin(), tensors[i].wires.end());
        std::size_t shared = 0;
        for (int w : tensors[j].wires)
          if (u.count(w))
            ++shared;
          else
            u.insert(w);
        const std::size_t rank = u.size() - shared;
        if (rank < best_rank) {
          best_rank = rank;
          best_i = i;
          best_j = j;
        }
      }
    if (best_rank != SIZE_MAX) {
      Tensor merged = self_trace(contract(tensors[best_i], tensors[best_j], limit));
      tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_j));
      tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_i));
      tensors.push_back(std::move(merged));
      progress = true;
    }
  }

  // Assemble the matrix from the remaining open tensors plus passthrough
  // wires (boundary-boundary) and closed loops (factor 2 each).
  std::map<int, int> total_count;
  for (const auto& g : d.gens()) {
    for (int w : g.in_wires) total_count[w]++;
    for (int w : g.out_wires) total_count[w]++;
  }
  std::set<int> boundary_wires(d.input_wires().begin(), d.input_wires().end());
  boundary_wires.insert(d.output_wires().begin(), d.output_wires().end());

  std::vector<int> open;
  std::map<int, std::size_t> open_pos;
  for (const auto& t : tensors)
    for (int w : t.wires)
      if (!open_pos.count(w)) {
        open_pos[w] = open.size();
        open.push_back(w);
      }
  for (int w : boundary_wires)
    if (!total_count.count(w) && !open_pos.count(w)) {
      open_pos[w] = open.size();
      open.push_back(w);
    }

  if (static_cast<int>(open.size()) > limit) throw Error("eval_diagram: too many open wires");

  DenseMatrix m(std::size_t(1) << d.output_wires().size(),
                std::size_t(1) << d.input_wires().size());
  for (std::size_t mask = 0; mask < (std::size_t(1) << open.size()); ++mask) {
    auto wire_bit = [&](int w) { return (mask >> open_pos.at(w)) & 1; };
    std::complex<double> prod{1.0, 0.0};
    for (const auto& t : tensors) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < t.wires.size(); ++k) idx |= wire_bit(t.wires[k]) << k;
      prod *= t.data[idx];
      if (prod == std::complex<double>(0.0, 0.0)) break;
    }
    std::size_t row = 0, col = 0;
    for (int w : d.output_wires()) row = (row << 1) | wire_bit(w);
    for (int w : d.input_wires()) col = (col << 1) | wire_bit(w);
    m.at(row, col) += prod;
  }
  return m.scaled(d.scalar().to_complex());
}

DenseMatrix eval_diagram(const Diagram& d, std::optional<int> cap) {
  return eval_diagram(d.to_raw(), cap);
}

CompareResult compare(const DenseMatrix& a, const DenseMatrix& b, CompareMode mode, double tol) {
  CompareResult r{CompareResult::Verdict::Equal, 0.0, 0, 0};
  if (a.rows != b.rows || a.cols != b.cols) {
    r.verdict = CompareResult::Verdict::ShapeMismatch;
    return r;
  }
  std::complex<double> factor{1.0, 0.0};
  if (mode == CompareMode::UpToGlobalPhase) {
    // Divide out the phase at the entry of largest magnitude.
    std::size_t best = 0;
    double mag = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
      if (std::abs(a.data[i]) > mag) {
        mag = std::abs(a.data[i]);
        best = i;
      }
    if (mag > tol && std::abs(b.data[best]) > tol) {
      factor = b.data[best] / a.data[best];
      factor /= std::abs(factor); // a unit-modulus phase only
    }
  }
  double worst = 0.0;
  std::size_t wi = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double diff = std::abs(a.data[i] * factor - b.data[i]);
    if (diff > worst) {
      worst = diff;
      wi = i;
    }
  }
  r.max_abs_diff = worst;
  if (worst > tol) {
    r.verdict = CompareResult::Verdict::Unequal;
    r.row = wi / a.cols;
    r.col = wi % a.cols;
  }
  return r;
}

} // namespace zhps
