#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zhps/phase.hpp"

namespace zhps {

/// Tracked global scalar: 2^{e/2} * e^{2 pi i phase} * product(extras).
/// `e` is an integer number of half-powers of 2, so the sqrt(2) factors
/// produced by rewriting stay symbolic. `extras` holds residual complex
/// factors that fall outside that form (non-unit-modulus H-box labels folded
/// down to scalars); it stays empty on the unit-modulus fragment.
class ScalarFactor {
 public:
  ScalarFactor() = default;

  static ScalarFactor one() { return {}; }
  static ScalarFactor pow2_halves(std::int64_t e) {
    ScalarFactor s;
    s.half_pow2_ = e;
    return s;
  }
  static ScalarFactor from_phase(Phase p) {
    ScalarFactor s;
    s.phase_ = p;
    return s;
  }

  std::int64_t half_pow2() const { return half_pow2_; }
  const Phase& phase() const { return phase_; }
  const std::vector<std::complex<double>>& extras() const { return extras_; }

  void mul_pow2_halves(std::int64_t e) { half_pow2_ += e; }
  void mul_phase(const Phase& p) { phase_ = phase_ + p; }
  void mul_extra(std::complex<double> z) { extras_.push_back(z); }

  ScalarFactor& operator*=(const ScalarFactor& o);
  friend ScalarFactor operator*(ScalarFactor a, const ScalarFactor& b) {
    a *= b;
    return a;
  }

  /// Multiplicative delta taking `from` to `this`; only defined when the
  /// extras lists share a prefix (which is how rewrites grow them).
  ScalarFactor delta_from(const ScalarFactor& from) const;

  std::complex<double> to_complex() const;

  bool is_one() const { return half_pow2_ == 0 && phase_.is_zero() && extras_.empty(); }
  /// True when the modulus is exactly 1 in symbolic form (a pure phase).
  bool is_unit_modulus() const { return half_pow2_ == 0 && extras_.empty(); }

  bool operator==(const ScalarFactor& o) const;
  bool operator!=(const ScalarFactor& o) const { return !(*this == o); }

 private:
  std::int64_t half_pow2_{0};
  Phase phase_{};
  std::vector<std::complex<double>> extras_{};
};

} // namespace zhps
