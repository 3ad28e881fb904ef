#pragma once

#include <random>
#include <set>
#include <vector>

#include "tilecraft/grid.hpp"
#include "tilecraft/sft.hpp"

namespace tilecraft::testing {

// (i + j) mod 2
inline PeriodicConfig checkerboard() {
  return PeriodicConfig::from_function({1, 1}, {2, 0}, [](Vec2 n) { return floor_mod(n.x + n.y, 2); });
}

// i mod 2
inline PeriodicConfig vertical_stripes() {
  return PeriodicConfig::from_function({2, 0}, {0, 1}, [](Vec2 n) { return floor_mod(n.x, 2); });
}

inline PeriodicConfig constant(Color c = 0) { return PeriodicConfig::torus(1, 1, {c}); }

inline WindowConfig window_from_rows(const std::vector<std::vector<Color>>& rows, Vec2 origin = {}) {
  std::vector<Color> values;
  for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  return WindowConfig({origin, static_cast<Coord>(rows[0].size()), static_cast<Coord>(rows.size())}, values);
}

// 4 x 4 window with exactly five distinct 2 x 2 blocks (first such in
// lexicographic order of the 16 bits, found by exhaustive scan).
inline WindowConfig five_pattern_window() {
  return window_from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}});
}

// A 4 x 4 binary de Bruijn torus for 2 x 2 windows, unfolded to 5 x 5 so
// that all 16 binary 2 x 2 patterns occur.
inline WindowConfig de_bruijn_window() {
  const std::vector<std::vector<Color>> torus = {{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 1}};
  return WindowConfig::from_function({{0, 0}, 5, 5}, [&](Vec2 n) { return torus[n.y % 4][n.x % 4]; });
}

inline Pattern rect_pattern(Coord w, Coord h, std::vector<Color> values) {
  return Pattern(DiscreteDomain::rect(w, h), std::move(values));
}

inline PatternSet binary_2x2(const std::vector<std::vector<Color>>& patterns) {
  std::set<Pattern> allowed;
  for (const auto& p : patterns) allowed.insert(rect_pattern(2, 2, p));
  return PatternSet(DiscreteDomain::rect(2, 2), Alphabet::binary(), allowed);
}

// Pattern values are row-major: (0,0), (1,0), (0,1), (1,1).
inline PatternSet all_zero_set() { return binary_2x2({{0, 0, 0, 0}}); }
inline PatternSet checkerboard_set() { return binary_2x2({{0, 1, 1, 0}, {1, 0, 0, 1}}); }
inline PatternSet left0_right1_set() { return binary_2x2({{0, 1, 0, 1}}); }

inline PatternSet full_shift_set() {
  std::vector<std::vector<Color>> all;
  for (int bits = 0; bits < 16; ++bits) all.push_back({bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1});
  return binary_2x2(all);
}

// The i-th binary 2 x 2 pattern: bit s of i colors slot s.
inline std::vector<Color> binary_block(int i) { return {i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1}; }

inline PeriodicConfig random_periodic(std::mt19937& rng, Coord max_period, Color colors = 2) {
  std::uniform_int_distribution<Coord> comp(-max_period, max_period);
  Vec2 p1, p2;
  do {
    p1 = {comp(rng), comp(rng)};
    p2 = {comp(rng), comp(rng)};
  } while (cross(p1, p2) == 0 || std::llabs(cross(p1, p2)) > 12);
  auto [h1, h2] = hermite_basis(p1, p2);
  std::uniform_int_distribution<Color> col(0, colors - 1);
  std::vector<Color> block(static_cast<std::size_t>(h1.x * h2.y));
  for (auto& v : block) v = col(rng);
  return PeriodicConfig(p1, p2, block);
}

}  // namespace tilecraft::testing
