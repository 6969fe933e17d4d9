#include "zhps/phase.hpp"

#include <cmath>
#include <numeric>

namespace zhps {

namespace {

std::int64_t checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

} // namespace

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error("fraction with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

Fraction Fraction::operator+(const Fraction& o) const {
  const __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  const __int128 d = static_cast<__int128>(den) * o.den;
  // Reduce in 128 bits before narrowing.
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Fraction(checked(n / a, "add"), checked(d / a, "add"));
}

Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::operator*(const Fraction& o) const {
  const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
  const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  const __int128 n = static_cast<__int128>(num / g1) * (o.num / g2);
  const __int128 d = static_cast<__int128>(den / g2) * (o.den / g1);
  return Fraction(checked(n, "mul"), checked(d, "mul"));
}

Fraction Fraction::operator-() const {
  Fraction r;
  r.num = -num;
  r.den = den;
  return r;
}

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Fraction> Fraction::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string_view::npos) {
      const std::int64_t n = std::stoll(std::string(s), &used);
      if (used != s.size()) return std::nullopt;
      return Fraction(n, 1);
    }
    const std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
    if (ns.empty() || ds.empty()) return std::nullopt;
    const std::int64_t n = std::stoll(ns, &used);
    if (used != ns.size()) return std::nullopt;
    const std::int64_t d = std::stoll(ds, &used);
    if (used != ds.size() || d == 0) return std::nullopt;
    return Fraction(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

Fraction mod1(Fraction f) {
  std::int64_t q = f.num / f.den;
  std::int64_t r = f.num % f.den;
  if (r < 0) r += f.den;
  (void)q;
  return Fraction(r, f.den);
}

double mod1d(double t) {
  double r = std::fmod(t, 1.0);
  if (r < 0) r += 1.0;
  if (r == 1.0) r = 0.0;
  return r;
}

} // namespace

Phase Phase::of(std::int64_t num, std::int64_t den) { return from_fraction(Fraction(num, den)); }

Phase Phase::from_fraction(const Fraction& f) {
  Phase p;
  p.exact_ = true;
  p.frac_ = mod1(f);
  return p;
}

Phase Phase::inexact(double turns) {
  Phase p;
  p.exact_ = false;
  p.turns_ = mod1d(turns);
  return p;
}

bool Phase::is_zero() const {
  if (exact_) return frac_.num == 0;
  return turns_ == 0.0;
}

const Fraction& Phase::frac() const {
  if (!exact_) throw Error("frac() on inexact phase");
  return frac_;
}

double Phase::turns() const { return exact_ ? frac_.to_double() : turns_; }

Phase Phase::operator+(const Phase& o) const {
  if (exact_ && o.exact_) return from_fraction(frac_ + o.frac_);
  return inexact(turns() + o.turns());
}

Phase Phase::operator-(const Phase& o) const { return *this + (-o); }

Phase Phase::operator-() const {
  if (exact_) return from_fraction(-frac_);
  return inexact(-turns_);
}

Phase Phase::times_int(std::int64_t k) const {
  if (exact_) {
    const __int128 n = static_cast<__int128>(frac_.num) * k;
    // Reduce mod den in 128 bits, then narrow.
    __int128 r = n % frac_.den;
    if (r < 0) r += frac_.den;
    return Phase::of(static_cast<std::int64_t>(r), frac_.den);
  }
  return inexact(turns_ * static_cast<double>(k));
}

Phase Phase::times_fraction(const Fraction& f) const {
  if (exact_) return from_fraction(frac_ * f);
  return inexact(turns_ * f.to_double());
}

bool Phase::operator==(const Phase& o) const {
  if (exact_ != o.exact_) return false;
  if (exact_) return frac_ == o.frac_;
  return turns_ == o.turns_;
}

std::complex<double> Phase::to_complex() const {
  const double a = 2.0 * M_PI * turns();
  return {std::cos(a), std::sin(a)};
}

std::string Phase::str() const {
  if (exact_) return frac_.str();
  return std::to_string(turns_);
}

Phase Phase::parse(std::string_view s) {
  if (auto f = Fraction::parse(s)) return from_fraction(*f);
  try {
    std::size_t used = 0;
    const double t = std::stod(std::string(s), &used);
    if (used == s.size()) return inexact(t);
  } catch (const std::exception&) {
  }
  throw Error("cannot parse phase '" + std::string(s) + "'");
}

} // namespace zhps
