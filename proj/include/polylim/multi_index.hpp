#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polylim/errors.hpp"

namespace polylim {

// k = (k_1, ..., k_M), the derivative/moment order per counting variable.
struct MultiIndex {
  static constexpr int kMaxM = 8;

  int m = 1;
  std::array<int, kMaxM> v{};

  MultiIndex() = default;
  explicit MultiIndex(int m_) : m(m_) {
    if (m < 1 || m > kMaxM) throw GuardError("multi-index arity out of range");
  }
  MultiIndex(int m_, std::initializer_list<int> init) : MultiIndex(m_) {
    int i = 0;
    for (int x : init) v[i++] = x;
  }

  static MultiIndex zero(int m) { return MultiIndex(m); }
  static MultiIndex unit(int m, int i) {  // e_i, 1-based slot
    MultiIndex k(m);
    k.v[i - 1] = 1;
    return k;
  }

  int operator[](int i) const { return v[i]; }  // 0-based access
  int& operator[](int i) { return v[i]; }

  int total() const {  // |k|
    int s = 0;
    for (int i = 0; i < m; ++i) s += v[i];
    return s;
  }
  bool is_zero() const { return total() == 0; }
  bool nonnegative() const {
    for (int i = 0; i < m; ++i)
      if (v[i] < 0) return false;
    return true;
  }
  bool leq(const MultiIndex& o) const {  // componentwise
    for (int i = 0; i < m; ++i)
      if (v[i] > o.v[i]) return false;
    return true;
  }

  MultiIndex plus_e(int i) const {  // 1-based slot
    MultiIndex k = *this;
    ++k.v[i - 1];
    return k;
  }
  MultiIndex minus_e(int i) const {
    MultiIndex k = *this;
    --k.v[i - 1];
    return k;
  }
  MultiIndex minus(const MultiIndex& o) const {
    MultiIndex k = *this;
    for (int i = 0; i < m; ++i) k.v[i] -= o.v[i];
    return k;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    if (a.m != b.m) return false;
    for (int i = 0; i < a.m; ++i)
      if (a.v[i] != b.v[i]) return false;
    return true;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
  // Graded order, lexicographically decreasing within a grade.  With this
  // order every index appearing on the right-hand side of the amplitude
  // recursions (k - e_1, k - e_{i+1} + e_i, proper sub-indices) precedes k.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    for (int i = 0; i < a.m; ++i)
      if (a.v[i] != b.v[i]) return a.v[i] > b.v[i];
    return false;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < m; ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + ")";
  }
};

// All k with 0 <= k <= box componentwise, sorted by the graded order above.
std::vector<MultiIndex> indices_in_box(const MultiIndex& box);

struct MultiIndexHash {
  size_t operator()(const MultiIndex& k) const {
    size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<size_t>(k.m);
    for (int i = 0; i < k.m; ++i)
      h = (h ^ static_cast<size_t>(k.v[i] + 1)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace polylim
