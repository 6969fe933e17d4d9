#include "zhps/scalar.hpp"

#include <cmath>

namespace zhps {

ScalarFactor& ScalarFactor::operator*=(const ScalarFactor& o) {
  half_pow2_ += o.half_pow2_;
  phase_ = phase_ + o.phase_;
  extras_.insert(extras_.end(), o.extras_.begin(), o.extras_.end());
  return *this;
}

ScalarFactor ScalarFactor::delta_from(const ScalarFactor& from) const {
  ScalarFactor d;
  d.half_pow2_ = half_pow2_ - from.half_pow2_;
  d.phase_ = phase_ - from.phase_;
  if (extras_.size() >= from.extras_.size())
    d.extras_.assign(extras_.begin() + static_cast<std::ptrdiff_t>(from.extras_.size()),
                     extras_.end());
  return d;
}

std::complex<double> ScalarFactor::to_complex() const {
  std::complex<double> z = std::pow(2.0, static_cast<double>(half_pow2_) / 2.0) * phase_.to_complex();
  for (const auto& e : extras_) z *= e;
  return z;
}

bool ScalarFactor::operator==(const ScalarFactor& o) const {
  return half_pow2_ == o.half_pow2_ && phase_ == o.phase_ && extras_ == o.extras_;
}

} // namespace zhps
