#pragma once

// Lattice geometry, patterns and configurations on Z^2.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tilecraft/error.hpp"

namespace tilecraft {

using Coord = std::int64_t;
using Color = std::int64_t;

// Cell index, translation, direction and monomial exponent all in one.
// Ordering is lexicographic by (y, x); every canonical order in the
// library derives from it.
struct Vec2 {
  Coord x = 0;
  Coord y = 0;

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
  friend constexpr std::strong_ordering operator<=>(const Vec2& a, const Vec2& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  friend constexpr Vec2 operator*(Coord k, Vec2 v) { return {k * v.x, k * v.y}; }

  constexpr bool is_zero() const { return x == 0 && y == 0; }
  std::string str() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

constexpr Coord dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr Coord cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
// (n,m)^perp = (m,-n): orthogonal, same length.
constexpr Vec2 perp(Vec2 v) { return {v.y, -v.x}; }
constexpr Coord chebyshev(Vec2 v) { return std::max(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y); }

constexpr Coord floor_mod(Coord a, Coord m) {
  Coord r = a % m;
  return r < 0 ? r + m : r;
}

constexpr Coord floor_div(Coord a, Coord m) { return (a - floor_mod(a, m)) / m; }

struct Rect {
  Vec2 origin;
  Coord width = 0;
  Coord height = 0;

  friend bool operator==(const Rect&, const Rect&) = default;

  bool empty() const { return width <= 0 || height <= 0; }
  Coord area() const { return empty() ? 0 : width * height; }
  Vec2 max_corner() const { return {origin.x + width - 1, origin.y + height - 1}; }
  bool contains(Vec2 v) const {
    return v.x >= origin.x && v.y >= origin.y && v.x < origin.x + width && v.y < origin.y + height;
  }
  bool contains(const Rect& r) const {
    return r.empty() || (contains(r.origin) && contains(r.max_corner()));
  }
  Rect translated(Vec2 t) const { return {origin + t, width, height}; }
  // Row-major offset of v; v must lie inside.
  std::size_t offset(Vec2 v) const {
    return static_cast<std::size_t>((v.y - origin.y) * width + (v.x - origin.x));
  }
};

class Alphabet {
 public:
  explicit Alphabet(std::vector<Color> colors) : colors_(std::move(colors)) {
    std::sort(colors_.begin(), colors_.end());
    if (colors_.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet must be nonempty");
    if (std::adjacent_find(colors_.begin(), colors_.end()) != colors_.end())
      throw Error(ErrorCode::InvalidArgument, "alphabet colors must be distinct");
  }

  static Alphabet binary() { return Alphabet({0, 1}); }

  const std::vector<Color>& colors() const { return colors_; }
  std::size_t size() const { return colors_.size(); }
  bool contains(Color c) const { return std::binary_search(colors_.begin(), colors_.end(), c); }
  std::optional<std::size_t> index_of(Color c) const {
    auto it = std::lower_bound(colors_.begin(), colors_.end(), c);
    if (it == colors_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - colors_.begin());
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Color> colors_;
};

// Finite set of cells kept sorted by (y, x) without duplicates.
class DiscreteDomain {
 public:
  DiscreteDomain() = default;

  explicit DiscreteDomain(std::vector<Vec2> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
      throw Error(ErrorCode::InvalidArgument, "domain has duplicate cells");
  }

  static DiscreteDomain rect(Coord width, Coord height, Vec2 origin = {}) {
    return from_rect(Rect{origin, width, height});
  }

  static DiscreteDomain from_rect(const Rect& r) {
    DiscreteDomain d;
    if (r.empty()) return d;
    d.cells_.reserve(static_cast<std::size_t>(r.area()));
    for (Coord y = r.origin.y; y < r.origin.y + r.height; ++y)
      for (Coord x = r.origin.x; x < r.origin.x + r.width; ++x) d.cells_.push_back({x, y});
    return d;
  }

  template <class Pred>
  static DiscreteDomain filter(const Rect& r, Pred&& keep) {
    DiscreteDomain d;
    for (Coord y = r.origin.y; y < r.origin.y + r.height; ++y)
      for (Coord x = r.origin.x; x < r.origin.x + r.width; ++x)
        if (keep(Vec2{x, y})) d.cells_.push_back({x, y});
    return d;
  }

  const std::vector<Vec2>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }
  const Vec2& operator[](std::size_t i) const { return cells_[i]; }

  bool contains(Vec2 v) const { return std::binary_search(cells_.begin(), cells_.end(), v); }
  std::optional<std::size_t> index_of(Vec2 v) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), v);
    if (it == cells_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
  }

  bool is_subset_of(const DiscreteDomain& other) const {
    return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
  }

  DiscreteDomain translated(Vec2 t) const {
    DiscreteDomain d;
    d.cells_.reserve(cells_.size());
    for (auto c : cells_) d.cells_.push_back(c + t);
    return d;
  }

  DiscreteDomain minus(const DiscreteDomain& other) const {
    DiscreteDomain d;
    std::set_difference(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                        std::back_inserter(d.cells_));
    return d;
  }

  DiscreteDomain intersect(const DiscreteDomain& other) const {
    DiscreteDomain d;
    std::set_intersection(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                          std::back_inserter(d.cells_));
    return d;
  }

  DiscreteDomain unite(const DiscreteDomain& other) const {
    DiscreteDomain d;
    std::set_union(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end(),
                   std::back_inserter(d.cells_));
    return d;
  }

  // Smallest axis-aligned rectangle containing every cell. Empty domains give an empty rect.
  Rect bounds() const {
    if (cells_.empty()) return {};
    Coord x0 = cells_.front().x, x1 = x0;
    for (auto c : cells_) {
      x0 = std::min(x0, c.x);
      x1 = std::max(x1, c.x);
    }
    Coord y0 = cells_.front().y, y1 = cells_.back().y;
    return {{x0, y0}, x1 - x0 + 1, y1 - y0 + 1};
  }

  // Translate so the bounding box starts at the origin.
  DiscreteDomain normalized() const {
    if (cells_.empty()) return {};
    return translated(-bounds().origin);
  }

  friend bool operator==(const DiscreteDomain&, const DiscreteDomain&) = default;
  friend auto operator<=>(const DiscreteDomain& a, const DiscreteDomain& b) { return a.cells_ <=> b.cells_; }

 private:
  std::vector<Vec2> cells_;
};

// A coloring of a finite domain; values[i] colors domain[i].
class Pattern {
 public:
  Pattern() = default;
  Pattern(DiscreteDomain domain, std::vector<Color> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.size())
      throw Error(ErrorCode::InvalidArgument, "pattern values do not match domain size");
  }

  const DiscreteDomain& domain() const { return domain_; }
  const std::vector<Color>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  Color at(Vec2 cell) const {
    auto i = domain_.index_of(cell);
    if (!i) throw Error(ErrorCode::OutOfWindow, "cell " + cell.str() + " not in pattern domain");
    return values_[*i];
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern& a, const Pattern& b) {
    if (auto c = a.domain_ <=> b.domain_; c != 0) return c;
    return a.values_ <=> b.values_;
  }

 private:
  DiscreteDomain domain_;
  std::vector<Color> values_;
};

namespace detail {

struct Egcd {
  Coord g, s, t;
};

// s*a + t*b = g with g >= 0.
inline Egcd extended_gcd(Coord a, Coord b) {
  Coord old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Coord q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace detail

// Basis (a,0), (b,d) of the lattice spanned by p1, p2 with a, d > 0 and 0 <= b < a.
inline std::pair<Vec2, Vec2> hermite_basis(Vec2 p1, Vec2 p2) {
  Coord det = cross(p1, p2);
  if (det == 0) throw Error(ErrorCode::InvalidArgument, "periods " + p1.str() + ", " + p2.str() + " are linearly dependent");
  auto [d, s, t] = detail::extended_gcd(p1.y, p2.y);
  Coord a = std::llabs(det) / d;
  Vec2 w = s * p1 + t * p2;
  return {{a, 0}, {floor_mod(w.x, a), d}};
}

// Two-periodic configuration stored as one fundamental block of its period lattice.
class PeriodicConfig {
 public:
  // block is row-major over [0,a) x [0,d) of the Hermite basis of (p1, p2).
  PeriodicConfig(Vec2 p1, Vec2 p2, std::vector<Color> block) {
    std::tie(p1_, p2_) = hermite_basis(p1, p2);
    if (block.size() != static_cast<std::size_t>(p1_.x * p2_.y))
      throw Error(ErrorCode::InvalidArgument, "block size " + std::to_string(block.size()) +
                                                   " does not match lattice index " + std::to_string(p1_.x * p2_.y));
    block_ = std::move(block);
  }

  template <class F>
  static PeriodicConfig from_function(Vec2 p1, Vec2 p2, F&& f) {
    auto [h1, h2] = hermite_basis(p1, p2);
    std::vector<Color> block;
    block.reserve(static_cast<std::size_t>(h1.x * h2.y));
    for (Coord y = 0; y < h2.y; ++y)
      for (Coord x = 0; x < h1.x; ++x) block.push_back(static_cast<Color>(f(Vec2{x, y})));
    return PeriodicConfig(h1, h2, std::move(block));
  }

  // Periods (p,0), (0,q) with values given row-major on [0,p) x [0,q).
  static PeriodicConfig torus(Coord p, Coord q, std::vector<Color> values) {
    return PeriodicConfig({p, 0}, {0, q}, std::move(values));
  }

  Vec2 p1() const { return p1_; }
  Vec2 p2() const { return p2_; }
  Coord block_width() const { return p1_.x; }
  Coord block_height() const { return p2_.y; }
  Rect block_rect() const { return {{0, 0}, p1_.x, p2_.y}; }
  const std::vector<Color>& block() const { return block_; }

  // Representative of n modulo the period lattice inside the block rectangle.
  Vec2 reduce(Vec2 n) const {
    Coord j = floor_mod(n.y, p2_.y);
    Coord k = (n.y - j) / p2_.y;
    return {floor_mod(n.x - k * p2_.x, p1_.x), j};
  }

  bool in_lattice(Vec2 t) const { return reduce(t).is_zero(); }

  Color at(Vec2 n) const {
    Vec2 r = reduce(n);
    return block_[static_cast<std::size_t>(r.y * p1_.x + r.x)];
  }

  friend bool operator==(const PeriodicConfig&, const PeriodicConfig&) = default;

 private:
  Vec2 p1_, p2_;
  std::vector<Color> block_;
};

// Coloring known only on a rectangle.
class WindowConfig {
 public:
  WindowConfig(Rect rect, std::vector<Color> values) : rect_(rect), values_(std::move(values)) {
    if (rect_.empty()) throw Error(ErrorCode::InvalidArgument, "window rectangle is empty");
    if (values_.size() != static_cast<std::size_t>(rect_.area()))
      throw Error(ErrorCode::InvalidArgument, "window values do not cover the rectangle");
  }

  template <class F>
  static WindowConfig from_function(Rect rect, F&& f) {
    std::vector<Color> values;
    values.reserve(static_cast<std::size_t>(rect.area()));
    for (Coord y = rect.origin.y; y < rect.origin.y + rect.height; ++y)
      for (Coord x = rect.origin.x; x < rect.origin.x + rect.width; ++x)
        values.push_back(static_cast<Color>(f(Vec2{x, y})));
    return WindowConfig(rect, std::move(values));
  }

  const Rect& rect() const { return rect_; }
  const std::vector<Color>& values() const { return values_; }
  bool contains(Vec2 n) const { return rect_.contains(n); }

  Color at(Vec2 n) const {
    if (!rect_.contains(n)) throw Error(ErrorCode::OutOfWindow, "cell " + n.str() + " outside window");
    return values_[rect_.offset(n)];
  }

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

 private:
  Rect rect_;
  std::vector<Color> values_;
};

class Configuration {
 public:
  Configuration(PeriodicConfig p) : rep_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  Configuration(WindowConfig w) : rep_(std::move(w)) {}    // NOLINT(google-explicit-constructor)

  bool is_periodic() const { return std::holds_alternative<PeriodicConfig>(rep_); }
  const PeriodicConfig* periodic() const { return std::get_if<PeriodicConfig>(&rep_); }
  const WindowConfig* window() const { return std::get_if<WindowConfig>(&rep_); }

  bool defined_at(Vec2 n) const {
    if (auto w = window()) return w->contains(n);
    return true;
  }

  Color at(Vec2 n) const {
    return std::visit([n](const auto& c) { return c.at(n); }, rep_);
  }

  template <class V>
  decltype(auto) visit(V&& v) const { return std::visit(std::forward<V>(v), rep_); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::variant<PeriodicConfig, WindowConfig> rep_;
};

// ---------------------------------------------------------------------------
// Operations

inline Color color_at(const Configuration& c, Vec2 n) { return c.at(n); }

// r(n) = c(n - t).
inline Configuration translate(const Configuration& c, Vec2 t) {
  if (auto p = c.periodic())
    return PeriodicConfig::from_function(p->p1(), p->p2(), [&](Vec2 n) { return p->at(n - t); });
  const auto& w = *c.window();
  return WindowConfig(w.rect().translated(t), w.values());
}

inline void require_readable(const Configuration& c, const DiscreteDomain& region) {
  if (auto w = c.window()) {
    for (auto n : region)
      if (!w->contains(n)) throw Error(ErrorCode::OutOfWindow, "cell " + n.str() + " outside window");
  }
}

// The distinct D-patterns read at every translate D + t contained in W.
inline std::set<Pattern> patterns_of(const Configuration& c, const DiscreteDomain& shape,
                                     const DiscreteDomain& window) {
  std::set<Pattern> out;
  if (window.empty()) throw Error(ErrorCode::EmptyWindow, "window is empty");
  if (shape.empty()) {
    out.insert(Pattern{});
    return out;
  }
  const Vec2 anchor = shape[0];
  std::vector<Color> values(shape.size());
  for (auto w : window) {
    Vec2 t = w - anchor;
    bool fits = true;
    for (auto d : shape) {
      if (!window.contains(d + t)) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < shape.size(); ++i) values[i] = c.at(shape[i] + t);
    out.insert(Pattern(shape, values));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyWindow, "no translate of the shape fits in the window");
  return out;
}

struct ComplexityReport {
  bool low_complexity = false;
  std::size_t count = 0;
  std::size_t bound = 0;  // |D|
};

inline ComplexityReport is_low_complexity(const Configuration& c, const DiscreteDomain& shape,
                                          const DiscreteDomain& window) {
  auto count = patterns_of(c, shape, window).size();
  return {count <= shape.size(), count, shape.size()};
}

struct PeriodReport {
  std::vector<Vec2> periods;
  // Candidates with no comparable cell pair inside the window; skipped.
  std::vector<Vec2> degenerate;
};

// Nonzero t with |t|_inf <= bound such that c(n) = c(n - t) on the window.
// Periodic configurations are checked exactly on one fundamental block and
// the window is not consulted.
inline PeriodReport find_periods(const Configuration& c, const DiscreteDomain& window, Coord bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "period bound must be >= 1");
  PeriodReport report;
  if (auto p = c.periodic()) {
    const auto block = DiscreteDomain::from_rect(p->block_rect());
    for (Coord y = -bound; y <= bound; ++y)
      for (Coord x = -bound; x <= bound; ++x) {
        Vec2 t{x, y};
        if (t.is_zero()) continue;
        bool ok = p->in_lattice(t) ||
                  std::all_of(block.begin(), block.end(), [&](Vec2 n) { return p->at(n) == p->at(n - t); });
        if (ok) report.periods.push_back(t);
      }
    return report;
  }
  require_readable(c, window);
  for (Coord y = -bound; y <= bound; ++y)
    for (Coord x = -bound; x <= bound; ++x) {
      Vec2 t{x, y};
      if (t.is_zero()) continue;
      bool compared = false, ok = true;
      for (auto n : window) {
        if (!window.contains(n - t)) continue;
        compared = true;
        if (c.at(n) != c.at(n - t)) {
          ok = false;
          break;
        }
      }
      if (!compared)
        report.degenerate.push_back(t);
      else if (ok)
        report.periods.push_back(t);
    }
  return report;
}

struct TwoPeriodicity {
  bool two_periodic = false;
  std::optional<Vec2> horizontal;  // smallest (k,0), k > 0, among the periods found
  std::optional<Vec2> vertical;    // smallest (0,k), k > 0
  PeriodReport periods;
};

inline TwoPeriodicity is_two_periodic(const Configuration& c, const DiscreteDomain& window, Coord bound) {
  TwoPeriodicity out;
  out.periods = find_periods(c, window, bound);
  const auto& ps = out.periods.periods;
  for (std::size_t i = 0; i < ps.size() && !out.two_periodic; ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (cross(ps[i], ps[j]) != 0) {
        out.two_periodic = true;
        break;
      }
  for (auto t : ps) {
    if (t.y == 0 && t.x > 0 && (!out.horizontal || t.x < out.horizontal->x)) out.horizontal = t;
    if (t.x == 0 && t.y > 0 && (!out.vertical || t.y < out.vertical->y)) out.vertical = t;
  }
  return out;
}

}  // namespace tilecraft
