#pragma once

#include <string>

#include "polylim/numeric.hpp"

namespace polylim {

// Exact scalar q * 2^(g/2) * pi^(h/2).  Every value produced by the limit
// formulas lands here: Gamma at half-integers contributes sqrt(pi), the walk
// singularity u_c = 1/2 raised to half-integers and the odd-k alpha
// contribute sqrt(2).  Canonical form keeps g in {0,1} (even parts of the
// power of two fold into q) and g = h = 0 whenever q = 0.
class ExactScalar {
 public:
  ExactScalar() = default;
  explicit ExactScalar(Rat q, int pi_half = 0, int two_half = 0);
  static ExactScalar zero() { return ExactScalar(); }
  static ExactScalar one() { return ExactScalar(Rat(1)); }

  const Rat& q() const { return q_; }
  int pi_half() const { return pi_half_; }
  int two_half() const { return two_half_; }
  bool is_zero() const { return q_ == 0; }
  bool is_rational() const { return pi_half_ == 0 && two_half_ == 0; }

  ExactScalar operator-() const { return ExactScalar(-q_, pi_half_, two_half_); }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  // Throws MixedRadicalError when the radical parts differ (and neither side is 0).
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);

  ExactScalar pow_int(long e) const;
  ExactScalar inverse() const;

  double to_double() const;
  std::string str() const;  // e.g. "10/(3*pi)", "sqrt(pi)/4", "-2*sqrt(pi)"

 private:
  Rat q_ = 0;
  int pi_half_ = 0;
  int two_half_ = 0;
};

// sqrt of a rational as q * 2^(g/2); exact only when the odd parts of
// numerator and denominator are perfect squares.  Throws IrrationalConstantError.
ExactScalar sqrt_rat(const Rat& x);

// base^(p/2) for rational base > 0 and integer p (via sqrt_rat when p is odd).
ExactScalar rat_pow_half(const Rat& base, long p);

// Gamma(z) for z = two_z / 2: factorial at positive integers, the exact
// half-integer product formula otherwise.  Throws GammaPoleError at poles.
ExactScalar gamma_half(long two_z);

// Exact fourth root of a positive rational, or IrrationalConstantError.
Rat rat_root4(const Rat& y);

}  // namespace polylim
