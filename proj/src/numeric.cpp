#include "polylim/numeric.hpp"

#include <mutex>
#include <vector>

#include "polylim/errors.hpp"

namespace polylim {

namespace {

// Shared factorial cache; appended under a lock, read positions are stable
// because the vector is only grown while holding the same lock.
std::vector<Int>& factorial_cache() {
  static std::vector<Int> cache{Int(1)};
  return cache;
}
std::mutex factorial_mutex;

}  // namespace

Int factorial(unsigned n) {
  std::lock_guard<std::mutex> lock(factorial_mutex);
  auto& cache = factorial_cache();
  while (cache.size() <= n) cache.push_back(cache.back() * cache.size());
  return cache[n];
}

Int binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact: product of j consecutive integers is divisible by j!
  }
  return r;
}

Int catalan(unsigned n) { return binomial(2L * n, n) / (n + 1); }

Int stirling2(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n == 0) return 1;  // S(0,0) = 1
  if (k == 0) return 0;
  // S(n,k) = k S(n-1,k) + S(n-1,k-1)
  std::vector<Int> row(n + 1, Int(0));
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i; j >= 1; --j) row[j] = Int(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
  const Int num = boost::multiprecision::numerator(v);
  const Int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat parse_rat(std::string_view s) {
  if (s.empty()) throw GuardError("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int num{std::string(s.substr(0, slash))};
    Int den{std::string(s.substr(slash + 1))};
    if (den == 0) throw GuardError("rational with zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw GuardError("malformed rational literal: " + std::string(s));
  }
}

double to_double(const Rat& v) { return v.convert_to<double>(); }

}  // namespace polylim
