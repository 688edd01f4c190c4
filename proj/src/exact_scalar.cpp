#include "polylim/exact_scalar.hpp"

#include <cmath>
#include <vector>

#include "polylim/errors.hpp"

namespace polylim {

namespace {

// Largest s with s^2 | n removed: returns (root, odd_part) with n = root^2 * rest
// only when rest == 1; else signals failure by rest != 1.
bool exact_sqrt(const Int& n, Int& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

void split_power_of_two(Int n, Int& odd, long& exp2) {
  exp2 = 0;
  while (n != 0 && (n & 1) == 0) {
    n >>= 1;
    ++exp2;
  }
  odd = n;
}

}  // namespace

ExactScalar::ExactScalar(Rat q, int pi_half, int two_half)
    : q_(std::move(q)), pi_half_(pi_half), two_half_(two_half) {
  if (q_ == 0) {
    pi_half_ = 0;
    two_half_ = 0;
    return;
  }
  // Fold 2^(two_half/2) down to two_half in {0,1}.
  long whole = two_half_ >= 0 ? two_half_ / 2 : -((-two_half_ + 1) / 2);
  two_half_ -= static_cast<int>(2 * whole);
  if (whole >= 0)
    q_ *= Rat(Int(1) << whole);
  else
    q_ /= Rat(Int(1) << (-whole));
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero() || b.is_zero()) return ExactScalar();
  return ExactScalar(a.q_ * b.q_, a.pi_half_ + b.pi_half_, a.two_half_ + b.two_half_);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero exact scalar");
  if (a.is_zero()) return ExactScalar();
  // 1/sqrt(2) = sqrt(2)/2 keeps the radical exponent in {0,1}.
  return ExactScalar(a.q_ / b.q_ / (b.two_half_ ? Rat(2) : Rat(1)),
                     a.pi_half_ - b.pi_half_, a.two_half_ + b.two_half_);
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.pi_half_ != b.pi_half_ || a.two_half_ != b.two_half_) throw MixedRadicalError();
  return ExactScalar(a.q_ + b.q_, a.pi_half_, a.two_half_);
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  return a.q_ == b.q_ && a.pi_half_ == b.pi_half_ && a.two_half_ == b.two_half_;
}

ExactScalar ExactScalar::pow_int(long e) const {
  if (e == 0) return ExactScalar::one();
  const ExactScalar base = e > 0 ? *this : inverse();
  long n = e > 0 ? e : -e;
  ExactScalar r = ExactScalar::one();
  for (long i = 0; i < n; ++i) r = r * base;
  return r;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero exact scalar");
  return ExactScalar(Rat(1) / q_ / (two_half_ ? Rat(2) : Rat(1)), -pi_half_, two_half_);
}

double ExactScalar::to_double() const {
  double v = q_.convert_to<double>();
  if (two_half_) v *= std::sqrt(2.0);
  if (pi_half_) v *= std::pow(3.14159265358979323846, pi_half_ / 2.0);
  return v;
}

std::string ExactScalar::str() const {
  if (is_zero()) return "0";
  const Int num = boost::multiprecision::numerator(q_);
  const Int den = boost::multiprecision::denominator(q_);
  // pi^(h/2) = pi^a * sqrt(pi)^b with b in {0,1}
  const long a = pi_half_ >= 0 ? pi_half_ / 2 : -((-pi_half_ + 1) / 2);
  const int b = static_cast<int>(pi_half_ - 2 * a);

  std::vector<std::string> top, bottom;
  top.push_back(num.str());
  if (two_half_) top.push_back("sqrt(2)");
  if (b == 1) top.push_back("sqrt(pi)");
  if (a > 0) top.push_back(a == 1 ? "pi" : "pi^" + std::to_string(a));
  if (den != 1) bottom.push_back(den.str());
  if (a < 0) bottom.push_back(a == -1 ? "pi" : "pi^" + std::to_string(-a));

  if (top.size() > 1 && (num == 1 || num == -1))
    top.front() = num == 1 ? "" : "-";  // "sqrt(pi)" rather than "1*sqrt(pi)"
  std::string ts = top.front();
  for (size_t i = 1; i < top.size(); ++i) ts += (ts.empty() || ts == "-" ? "" : "*") + top[i];
  if (bottom.empty()) return ts;
  std::string bs = bottom.front();
  for (size_t i = 1; i < bottom.size(); ++i) bs += "*" + bottom[i];
  return ts + "/" + (bottom.size() > 1 ? "(" + bs + ")" : bs);
}

ExactScalar sqrt_rat(const Rat& x) {
  if (x < 0) throw IrrationalConstantError("square root of a negative rational");
  if (x == 0) return ExactScalar();
  Int num_odd, den_odd;
  long num_e2 = 0, den_e2 = 0;
  split_power_of_two(boost::multiprecision::numerator(x), num_odd, num_e2);
  split_power_of_two(boost::multiprecision::denominator(x), den_odd, den_e2);
  Int rn, rd;
  if (!exact_sqrt(num_odd, rn) || !exact_sqrt(den_odd, rd))
    throw IrrationalConstantError("square root is irrational: " + rat_str(x));
  return ExactScalar(Rat(rn, rd), 0, static_cast<int>(num_e2 - den_e2));
}

ExactScalar rat_pow_half(const Rat& base, long p) {
  if (base <= 0) throw IrrationalConstantError("base must be positive");
  const long whole = p >= 0 ? p / 2 : -((-p + 1) / 2);
  const long half = p - 2 * whole;  // 0 or 1
  Rat r = 1;
  if (whole >= 0)
    for (long i = 0; i < whole; ++i) r *= base;
  else
    for (long i = 0; i < -whole; ++i) r /= base;
  ExactScalar out(r);
  if (half) out = out * sqrt_rat(base);
  return out;
}

ExactScalar gamma_half(long two_z) {
  if (two_z % 2 == 0) {
    const long n = two_z / 2;
    if (n <= 0) throw GammaPoleError();
    return ExactScalar(Rat(factorial(static_cast<unsigned>(n - 1))));
  }
  // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi) for m >= 0,
  // Gamma(1/2 - j) = (-4)^j j! / (2j)! sqrt(pi) for j >= 1.
  const long m = (two_z - 1) / 2;
  if (m >= 0) {
    Rat q = Rat(factorial(static_cast<unsigned>(2 * m)),
                factorial(static_cast<unsigned>(m)));
    q /= Rat(Int(1) << (2 * m));
    return ExactScalar(q, 1);
  }
  const long j = -m;
  Rat q = Rat(factorial(static_cast<unsigned>(j)), factorial(static_cast<unsigned>(2 * j)));
  q *= Rat(Int(1) << (2 * j));
  if (j % 2 == 1) q = -q;
  return ExactScalar(q, 1);
}

Rat rat_root4(const Rat& y) {
  if (y <= 0) throw IrrationalConstantError("y must be positive");
  Int rn, rd, rn2, rd2;
  if (!exact_sqrt(boost::multiprecision::numerator(y), rn) ||
      !exact_sqrt(boost::multiprecision::denominator(y), rd) || !exact_sqrt(rn, rn2) ||
      !exact_sqrt(rd, rd2))
    throw IrrationalConstantError("y must be the fourth power of a rational, got " + rat_str(y));
  return Rat(rn2, rd2);
}

}  // namespace polylim
