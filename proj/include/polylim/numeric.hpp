#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace polylim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int factorial(unsigned n);
Int binomial(long n, long k);  // 0 outside 0 <= k <= n
Int catalan(unsigned n);

// Stirling numbers of the second kind S(n, k).
Int stirling2(unsigned n, unsigned k);

std::string int_str(const Int& v);
std::string rat_str(const Rat& v);  // "p/q", or "p" when q == 1

// Parses "p", "p/q" or "-p/q"; throws GuardError on malformed input or q == 0.
Rat parse_rat(std::string_view s);

double to_double(const Rat& v);

}  // namespace polylim
