#pragma once

// Edges, convexity, stripes and the u-balanced predicate for convex shapes.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tilecraft/grid.hpp"

namespace tilecraft {

// S_u^k = { x : -k < <x,u> <= 0 }; the interior drops the edge <x,u> = 0.
struct Stripe {
  Vec2 u;
  Coord k = 1;

  Stripe(Vec2 dir, Coord width) : u(dir), k(width) {
    if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "stripe direction must be nonzero");
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "stripe width must be >= 1");
  }

  bool contains(Vec2 x) const {
    const Coord a = dot(x, u);
    return -k < a && a <= 0;
  }
  bool interior_contains(Vec2 x) const {
    const Coord a = dot(x, u);
    return -k < a && a < 0;
  }
  DiscreteDomain materialize(const Rect& window) const {
    return DiscreteDomain::filter(window, [this](Vec2 x) { return contains(x); });
  }
  DiscreteDomain interior(const Rect& window) const {
    return DiscreteDomain::filter(window, [this](Vec2 x) { return interior_contains(x); });
  }
};

// Cells of D furthest in direction u.
inline DiscreteDomain edge(const DiscreteDomain& D, Vec2 u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "edge direction must be nonzero");
  if (D.empty()) return {};
  Coord best = dot(D[0], u);
  for (auto v : D) best = std::max(best, dot(v, u));
  std::vector<Vec2> out;
  for (auto v : D)
    if (dot(v, u) == best) out.push_back(v);
  return DiscreteDomain(std::move(out));
}

namespace detail {

// Counter-clockwise hull without collinear points (Andrew's monotone chain).
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline bool in_hull(const std::vector<Vec2>& hull, Vec2 p) {
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) {
    const Vec2 a = hull[0], b = hull[1];
    return cross(b - a, p - a) == 0 && dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (cross(hull[(i + 1) % hull.size()] - hull[i], p - hull[i]) < 0) return false;
  return true;
}

}  // namespace detail

// D equals the lattice points of its real convex hull.
inline bool is_convex(const DiscreteDomain& D) {
  if (D.size() <= 1) return true;
  const auto hull = detail::convex_hull(D.cells());
  const Rect b = D.bounds();
  std::size_t inside = 0;
  for (Coord y = b.origin.y; y < b.origin.y + b.height; ++y)
    for (Coord x = b.origin.x; x < b.origin.x + b.width; ++x)
      if (detail::in_hull(hull, {x, y})) {
        if (!D.contains({x, y})) return false;
        ++inside;
      }
  return inside == D.size();
}

// First t (ascending (t.y, t.x)) with D + t inside `window` and inside the
// target predicate.
inline std::optional<Vec2> fits(const DiscreteDomain& D, const std::function<bool(Vec2)>& target, const Rect& window) {
  if (D.empty()) return Vec2{0, 0};
  const Rect b = D.bounds();
  for (Coord ty = window.origin.y - b.origin.y; ty + b.origin.y + b.height <= window.origin.y + window.height; ++ty)
    for (Coord tx = window.origin.x - b.origin.x; tx + b.origin.x + b.width <= window.origin.x + window.width; ++tx) {
      const Vec2 t{tx, ty};
      if (std::all_of(D.begin(), D.end(), [&](Vec2 d) { return target(d + t); })) return t;
    }
  return std::nullopt;
}

inline std::optional<Vec2> fits(const DiscreteDomain& D, const DiscreteDomain& E) {
  if (E.empty()) return D.empty() ? std::optional<Vec2>(Vec2{0, 0}) : std::nullopt;
  return fits(D, [&E](Vec2 x) { return E.contains(x); }, E.bounds());
}

// Translates of a stripe along its own line are symmetries, so a window
// around the origin wide enough for D plus one period of the line suffices.
inline std::optional<Vec2> fits(const DiscreteDomain& D, const Stripe& S) {
  const Rect b = D.bounds();
  const Coord reach = std::max(b.width, b.height) + (S.k + 1) * (std::llabs(S.u.x) + std::llabs(S.u.y)) +
                      std::max(std::llabs(b.origin.x), std::llabs(b.origin.y));
  const Rect window{{-reach, -reach}, 2 * reach + 1, 2 * reach + 1};
  return fits(D, [&S](Vec2 x) { return S.contains(x); }, window);
}

struct BalancedReport {
  Vec2 u;
  DiscreteDomain shape;
  DiscreteDomain edge;
  std::size_t shape_size = 0;       // |D|
  std::size_t edge_size = 0;        // |E|
  std::size_t patterns = 0;         // |Patt(c, D)|
  std::size_t inner_patterns = 0;   // |Patt(c, D \ E)|
  std::size_t min_line = 0;         // min |D ∩ L| over lines L perpendicular to u meeting D
  std::map<Coord, std::size_t> lines;  // level <x,u> -> |D ∩ L|
  bool low_complexity = false;  // (i)
  bool few_extensions = false;  // (ii)
  bool short_edge = false;      // (iii)
  bool balanced = false;
};

inline BalancedReport is_balanced(const Configuration& c, const DiscreteDomain& D, Vec2 u,
                                  const DiscreteDomain& window) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "balance direction must be nonzero");
  if (D.empty() || !is_convex(D)) throw Error(ErrorCode::NotConvex, "shape is not a nonempty convex set");
  BalancedReport r;
  r.u = u;
  r.shape = D;
  r.edge = edge(D, u);
  r.shape_size = D.size();
  r.edge_size = r.edge.size();
  r.patterns = patterns_of(c, D, window).size();
  r.inner_patterns = patterns_of(c, D.minus(r.edge), window).size();
  for (auto v : D) ++r.lines[dot(v, u)];
  r.min_line = D.size();
  for (auto [level, n] : r.lines) r.min_line = std::min(r.min_line, n);

  r.low_complexity = r.patterns <= r.shape_size;
  r.few_extensions = r.inner_patterns < r.patterns + r.edge_size;
  r.short_edge = r.min_line + 1 >= r.edge_size;
  r.balanced = r.low_complexity && r.few_extensions && r.short_edge;
  return r;
}

// Convex lattice sets up to translation with bounding box inside side x side
// and at most max_area cells, ordered by area, then (width, height) of the
// bounding box, then cell list. Each is normalized to start at the origin.
inline std::vector<DiscreteDomain> convex_shapes(Coord side, std::size_t max_area) {
  struct Key {
    std::size_t area;
    Coord w, h;
    DiscreteDomain cells;
    auto operator<=>(const Key&) const = default;
  };
  std::vector<DiscreteDomain> out;
  if (side < 1 || max_area < 1) return out;
  // Removing a hull vertex keeps a lattice set convex, so every convex set
  // of size s + 1 extends some convex set of size s.
  std::vector<DiscreteDomain> level{DiscreteDomain({{0, 0}})};
  for (std::size_t area = 1; area <= max_area && !level.empty(); ++area) {
    out.insert(out.end(), level.begin(), level.end());
    if (area == max_area) break;
    std::set<Key> next;
    for (const auto& D : level) {
      const Rect b = D.bounds();
      for (Coord y = b.height - side; y < side; ++y)
        for (Coord x = b.width - side; x < side; ++x) {
          if (D.contains({x, y})) continue;
          auto grown = D.unite(DiscreteDomain({{x, y}})).normalized();
          const Rect gb = grown.bounds();
          if (gb.width > side || gb.height > side || !is_convex(grown)) continue;
          next.insert(Key{grown.size(), gb.width, gb.height, std::move(grown)});
        }
    }
    level.clear();
    for (auto& k : next) level.push_back(k.cells);
  }
  return out;
}

struct BalancedSearchResult {
  std::optional<DiscreteDomain> shape;
  std::optional<Vec2> orientation;  // u or -u
  std::optional<BalancedReport> report;
  ComplexityReport rectangle_complexity;  // of c w.r.t. the n x m rectangle
  bool low_complexity_warning = false;    // c is not low complexity for the rectangle on W
  std::size_t shapes_tried = 0;

  bool found() const { return shape.has_value(); }
};

// Bounded search for a u- or (-u)-balanced convex set inside an
// (n*m) x (n*m) box. NotFound only means the budget ran out.
inline BalancedSearchResult balanced_search(const Configuration& c, Coord n, Coord m, Vec2 u,
                                            const DiscreteDomain& window, std::size_t area_budget) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "balance direction must be nonzero");
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be >= 1");
  BalancedSearchResult out;
  out.rectangle_complexity = is_low_complexity(c, DiscreteDomain::rect(n, m), window);
  out.low_complexity_warning = !out.rectangle_complexity.low_complexity;
  for (const auto& D : convex_shapes(n * m, area_budget)) {
    for (Vec2 dir : {u, -u}) {
      auto rep = is_balanced(c, D, dir, window);
      if (rep.balanced) {
        out.shape = D;
        out.orientation = dir;
        out.report = std::move(rep);
        ++out.shapes_tried;
        return out;
      }
    }
    ++out.shapes_tried;
  }
  return out;
}

struct StripeScenarioReport {
  Vec2 fit;                      // translation placing D inside the stripe
  std::size_t stripe_cells = 0;  // |S ∩ W|
  std::size_t interior_cells = 0;
  bool interior_agree = false;   // d = e on S° ∩ W
  bool stripe_differs = false;   // d != e somewhere on S ∩ W
  bool hypotheses_hold = false;
  PeriodReport periods;                     // of d on W, when the hypotheses hold
  std::vector<Vec2> perpendicular_periods;  // those with <t,u> = 0
};

// Checks the stripe hypotheses d|S° = e|S°, d|S != e|S on the window and, if
// they hold, looks for a period of d perpendicular to u. Orbit-closure
// membership of e is not checked.
inline StripeScenarioReport stripe_scenario_check(const Configuration& d, const Configuration& e,
                                                  const DiscreteDomain& D, Vec2 u, Coord k,
                                                  const DiscreteDomain& window, Coord bound) {
  const Stripe S(u, k);
  auto t = fits(D, S);
  if (!t) throw Error(ErrorCode::DoesNotFit, "shape does not fit in a stripe of width " + std::to_string(k));
  StripeScenarioReport r;
  r.fit = *t;
  std::vector<Vec2> stripe_cells;
  for (auto x : window)
    if (S.contains(x)) stripe_cells.push_back(x);
  if (stripe_cells.empty()) throw Error(ErrorCode::EmptyWindow, "window does not meet the stripe");
  const DiscreteDomain stripe(std::move(stripe_cells));
  require_readable(d, stripe);
  require_readable(e, stripe);

  r.stripe_cells = stripe.size();
  r.interior_agree = true;
  for (auto x : stripe) {
    const bool same = d.at(x) == e.at(x);
    if (!same) r.stripe_differs = true;
    if (S.interior_contains(x)) {
      ++r.interior_cells;
      r.interior_agree = r.interior_agree && same;
    }
  }
  r.hypotheses_hold = r.interior_agree && r.stripe_differs;
  if (r.hypotheses_hold) {
    r.periods = find_periods(d, window, bound);
    for (auto p : r.periods.periods)
      if (dot(p, u) == 0) r.perpendicular_periods.push_back(p);
  }
  return r;
}

}  // namespace tilecraft
