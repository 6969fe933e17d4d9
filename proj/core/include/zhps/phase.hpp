#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zhps {

/// Error type used across the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational number, always reduced, den > 0. Arithmetic is checked;
/// overflow of the 64-bit representation throws (never reached at the sizes
/// this engine works with).
struct Fraction {
  std::int64_t num{0};
  std::int64_t den{1};

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  static Fraction whole(std::int64_t n) { return Fraction(n, 1); }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator-() const;
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Reduced textual form: "3/8", "-1/2", or "2" when the denominator is 1.
  std::string str() const;
  static std::optional<Fraction> parse(std::string_view s);
};

/// A phase as a multiple of a full turn (the stored value r represents the
/// angle 2*pi*r). Exact phases are rationals reduced into [0,1); inexact ones
/// carry a double in [0,1). Exact phases stay exact under every operation
/// offered here; mixing exact and inexact degrades to inexact.
class Phase {
 public:
  Phase() = default;

  static Phase of(std::int64_t num, std::int64_t den);
  static Phase from_fraction(const Fraction& f);
  static Phase inexact(double turns);
  static Phase zero() { return Phase(); }
  static Phase half() { return of(1, 2); }
  static Phase quarter() { return of(1, 4); }

  bool exact() const { return exact_; }
  bool is_zero() const;
  /// Only valid on exact phases.
  const Fraction& frac() const;
  double turns() const;

  Phase operator+(const Phase& o) const;
  Phase operator-(const Phase& o) const;
  Phase operator-() const;
  /// Multiplication by an integer; commutes with mod-1 reduction.
  Phase times_int(std::int64_t k) const;
  /// Multiplication by an exact fraction. The caller is responsible for
  /// ensuring this is meaningful (fractions do not commute with mod-1
  /// reduction in general, so this is used on freshly-constructed values).
  Phase times_fraction(const Fraction& f) const;

  bool operator==(const Phase& o) const;
  bool operator!=(const Phase& o) const { return !(*this == o); }

  /// e^{2 pi i r} as a double complex.
  std::complex<double> to_complex() const;

  std::string str() const;
  static Phase parse(std::string_view s);

 private:
  bool exact_{true};
  Fraction frac_{};   // valid when exact_
  double turns_{0.0}; // valid when !exact_
};

} // namespace zhps
