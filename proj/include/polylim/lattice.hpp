#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polylim/errors.hpp"

namespace polylim {

struct Point {
  int32_t x = 0;
  int32_t y = 0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Point a, Point b) { return !(a == b); }
  // Lexicographic on (x, y); the translation anchor is the minimum under this order.
  friend bool operator<(Point a, Point b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

enum class Dir : uint8_t { Right = 0, Left = 1, Up = 2, Down = 3 };

inline Point step_vec(Dir d) {
  switch (d) {
    case Dir::Right: return {1, 0};
    case Dir::Left: return {-1, 0};
    case Dir::Up: return {0, 1};
    default: return {0, -1};
  }
}

inline char dir_char(Dir d) { return "RLUD"[static_cast<int>(d)]; }

inline Dir dir_from_char(char c) {
  switch (c) {
    case 'R': return Dir::Right;
    case 'L': return Dir::Left;
    case 'U': return Dir::Up;
    case 'D': return Dir::Down;
    default: throw GuardError(std::string("invalid step character '") + c + "'");
  }
}

inline std::string dirs_to_string(const std::vector<Dir>& steps) {
  std::string s;
  s.reserve(steps.size());
  for (Dir d : steps) s.push_back(dir_char(d));
  return s;
}

inline std::vector<Dir> dirs_from_string(std::string_view s) {
  std::vector<Dir> steps;
  steps.reserve(s.size());
  for (char c : s) steps.push_back(dir_from_char(c));
  return steps;
}

}  // namespace polylim
