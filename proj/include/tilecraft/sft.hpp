#pragma once

// Subshifts of finite type given by allowed patterns: the dovetailed
// emptiness / periodic-point decision procedure and finite-radius
// determinism probes.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tilecraft/detail/search.hpp"
#include "tilecraft/grid.hpp"

namespace tilecraft {

using detail::NodeBudget;
using detail::SearchStatus;

constexpr std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::Exhausted: return "Exhausted";
    case SearchStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

// X = { c : every shape-pattern of c is allowed }.
class PatternSet {
 public:
  PatternSet(DiscreteDomain shape, Alphabet alphabet, std::set<Pattern> allowed)
      : shape_(std::move(shape)), alphabet_(std::move(alphabet)), allowed_(std::move(allowed)) {
    if (shape_.empty()) throw Error(ErrorCode::InvalidArgument, "pattern shape is empty");
    for (const auto& p : allowed_) {
      if (p.domain() != shape_) throw Error(ErrorCode::InvalidArgument, "allowed pattern has a different domain");
      for (auto v : p.values())
        if (!alphabet_.contains(v))
          throw Error(ErrorCode::InvalidArgument, "color " + std::to_string(v) + " not in alphabet");
    }
  }

  const DiscreteDomain& shape() const { return shape_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::set<Pattern>& allowed() const { return allowed_; }
  bool low_complexity() const { return allowed_.size() <= shape_.size(); }
  bool allows(const Pattern& p) const { return allowed_.count(p) != 0; }

  // Side of the smallest square holding the shape.
  Coord extent() const {
    auto b = shape_.bounds();
    return std::max(b.width, b.height);
  }

  friend bool operator==(const PatternSet&, const PatternSet&) = default;

 private:
  DiscreteDomain shape_;
  Alphabet alphabet_;
  std::set<Pattern> allowed_;
};

// The SFT whose allowed patterns are exactly those seen in c on the window.
inline PatternSet pattern_set_of(const Configuration& c, const DiscreteDomain& shape, const DiscreteDomain& window,
                                 const Alphabet& alphabet) {
  return PatternSet(shape, alphabet, patterns_of(c, shape, window));
}

// p x q coloring valid under wraparound; values row-major on [0,p) x [0,q).
struct TorusWitness {
  Coord p = 1;
  Coord q = 1;
  std::vector<Color> values;

  Color at(Vec2 n) const {
    return values[static_cast<std::size_t>(floor_mod(n.y, q) * p + floor_mod(n.x, p))];
  }
  friend bool operator==(const TorusWitness&, const TorusWitness&) = default;
};

inline PeriodicConfig unfold(const TorusWitness& w) { return PeriodicConfig::torus(w.p, w.q, w.values); }

// Independent re-check: reads every wraparound translate of the shape
// directly and looks it up in the allowed set.
inline bool validate_witness(const PatternSet& P, const TorusWitness& w) {
  if (w.p < 1 || w.q < 1 || w.values.size() != static_cast<std::size_t>(w.p * w.q)) return false;
  std::vector<Color> values(P.shape().size());
  for (Coord y = 0; y < w.q; ++y)
    for (Coord x = 0; x < w.p; ++x) {
      for (std::size_t i = 0; i < P.shape().size(); ++i) values[i] = w.at(P.shape()[i] + Vec2{x, y});
      if (!P.allows(Pattern(P.shape(), values))) return false;
    }
  return true;
}

namespace detail {

inline std::vector<std::vector<std::uint32_t>> encode_patterns(const PatternSet& P) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(P.allowed().size());
  for (const auto& pat : P.allowed()) {
    std::vector<std::uint32_t> row;
    row.reserve(pat.size());
    for (auto v : pat.values()) row.push_back(static_cast<std::uint32_t>(*P.alphabet().index_of(v)));
    out.push_back(std::move(row));
  }
  return out;
}

// Windows for every translate of the shape lying inside `rect`; cells are
// indexed by rect.offset.
inline std::vector<std::vector<std::uint32_t>> windows_in_rect(const DiscreteDomain& shape, const Rect& rect) {
  std::vector<std::vector<std::uint32_t>> windows;
  const Rect b = shape.bounds();
  for (Coord ty = rect.origin.y - b.origin.y; ty + b.origin.y + b.height <= rect.origin.y + rect.height; ++ty)
    for (Coord tx = rect.origin.x - b.origin.x; tx + b.origin.x + b.width <= rect.origin.x + rect.width; ++tx) {
      std::vector<std::uint32_t> w;
      w.reserve(shape.size());
      for (auto d : shape) w.push_back(static_cast<std::uint32_t>(rect.offset(d + Vec2{tx, ty})));
      windows.push_back(std::move(w));
    }
  return windows;
}

inline std::vector<std::uint32_t> identity_order(std::size_t n) {
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  return order;
}

inline std::vector<Color> read_colors(const ConstraintGrid& g, const Alphabet& alphabet, std::size_t cells) {
  std::vector<Color> out(cells);
  for (std::size_t i = 0; i < cells; ++i) out[i] = alphabet.colors()[g.value(static_cast<std::uint32_t>(i))];
  return out;
}

}  // namespace detail

struct SquareResult {
  SearchStatus status = SearchStatus::Exhausted;
  Coord n = 0;
  std::vector<Color> coloring;  // row-major on [0,n)^2 when Found
  std::uint64_t nodes = 0;
};

// First locally valid n x n coloring in row-major / ascending-color order.
inline SquareResult valid_square(const PatternSet& P, Coord n, std::uint64_t budget) {
  if (n < P.extent())
    throw Error(ErrorCode::InvalidArgument, "square side " + std::to_string(n) + " smaller than the shape");
  const Rect rect{{0, 0}, n, n};
  const auto cells = static_cast<std::size_t>(rect.area());
  detail::ConstraintGrid grid(P.alphabet().size(), detail::encode_patterns(P), cells,
                              detail::windows_in_rect(P.shape(), rect));
  NodeBudget nb{budget, 0};
  SquareResult r;
  r.n = n;
  r.status = detail::complete(grid, detail::identity_order(cells), 0, nb);
  r.nodes = nb.used;
  if (r.status == SearchStatus::Found) r.coloring = detail::read_colors(grid, P.alphabet(), cells);
  return r;
}

struct TorusResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<TorusWitness> witness;
  std::uint64_t nodes = 0;
};

inline TorusResult torus_search(const PatternSet& P, Coord p, Coord q, std::uint64_t budget) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "torus sides must be >= 1");
  const auto cells = static_cast<std::size_t>(p * q);
  std::vector<std::vector<std::uint32_t>> windows;
  windows.reserve(cells);
  for (Coord ty = 0; ty < q; ++ty)
    for (Coord tx = 0; tx < p; ++tx) {
      std::vector<std::uint32_t> w;
      w.reserve(P.shape().size());
      for (auto d : P.shape())
        w.push_back(static_cast<std::uint32_t>(floor_mod(d.y + ty, q) * p + floor_mod(d.x + tx, p)));
      windows.push_back(std::move(w));
    }
  detail::ConstraintGrid grid(P.alphabet().size(), detail::encode_patterns(P), cells, windows);
  NodeBudget nb{budget, 0};
  TorusResult r;
  r.status = detail::complete(grid, detail::identity_order(cells), 0, nb);
  r.nodes = nb.used;
  if (r.status == SearchStatus::Found) r.witness = TorusWitness{p, q, detail::read_colors(grid, P.alphabet(), cells)};
  return r;
}

struct DecisionOutcome {
  enum class Kind { Empty, NonEmptyPeriodic, Undecided };

  Kind kind = Kind::Undecided;
  Coord empty_n = 0;                    // Empty: no valid empty_n x empty_n square
  std::optional<TorusWitness> witness;  // NonEmptyPeriodic
  std::uint64_t nodes_used = 0;
  std::uint64_t budget = 0;
  Coord stages = 0;        // last stage entered
  Coord max_n_tried = 0;   // largest square side searched
  Coord max_pq_tried = 0;  // largest max(p,q) searched
  bool low_complexity = false;

  friend bool operator==(const DecisionOutcome&, const DecisionOutcome&) = default;
};

constexpr std::string_view to_string(DecisionOutcome::Kind k) {
  switch (k) {
    case DecisionOutcome::Kind::Empty: return "Empty";
    case DecisionOutcome::Kind::NonEmptyPeriodic: return "NonEmptyPeriodic";
    case DecisionOutcome::Kind::Undecided: return "Undecided";
  }
  return "Unknown";
}

struct DecideOptions {
  bool parallel = false;
  Coord max_stage = 0;  // 0 = until the budget runs out
};

// Torus sizes of stage s: max(p,q) = s, lexicographic in (p,q).
inline std::vector<std::pair<Coord, Coord>> torus_sizes(Coord s) {
  std::vector<std::pair<Coord, Coord>> out;
  for (Coord p = 1; p <= s; ++p)
    for (Coord q = 1; q <= s; ++q)
      if (std::max(p, q) == s) out.emplace_back(p, q);
  return out;
}

// Dovetails the two semi-algorithms: stage s searches the (N0+s)-square and
// then every torus with max(p,q) = s. Returns at the first square with no
// valid coloring or the first torus witness.
inline DecisionOutcome decide(const PatternSet& P, std::uint64_t budget, DecideOptions opts = {}) {
  using Kind = DecisionOutcome::Kind;
  DecisionOutcome out;
  out.budget = budget;
  out.low_complexity = P.low_complexity();
  const Coord n0 = P.extent();

  for (Coord s = 1; opts.max_stage == 0 || s <= opts.max_stage; ++s) {
    const std::uint64_t remaining = budget - out.nodes_used;
    if (remaining == 0) return out;
    out.stages = s;
    const auto sizes = torus_sizes(s);

    if (!opts.parallel) {
      out.max_n_tried = n0 + s;
      auto sq = valid_square(P, n0 + s, remaining);
      out.nodes_used += sq.nodes;
      if (sq.status == SearchStatus::Exhausted) {
        out.kind = Kind::Empty;
        out.empty_n = n0 + s;
        return out;
      }
      if (sq.status == SearchStatus::BudgetExceeded) return out;
      out.max_pq_tried = s;
      for (auto [p, q] : sizes) {
        auto tr = torus_search(P, p, q, budget - out.nodes_used);
        out.nodes_used += tr.nodes;
        if (tr.status == SearchStatus::Found) {
          out.kind = Kind::NonEmptyPeriodic;
          out.witness = std::move(tr.witness);
          return out;
        }
        if (tr.status == SearchStatus::BudgetExceeded) return out;
      }
      continue;
    }

    // Every search of the stage gets the budget left at stage entry; the
    // verdict is read in the sequential order, so it does not depend on
    // scheduling.
    auto square = std::async(std::launch::async, [&] { return valid_square(P, n0 + s, remaining); });
    std::vector<std::future<TorusResult>> tori;
    tori.reserve(sizes.size());
    for (auto [p, q] : sizes)
      tori.push_back(std::async(std::launch::async, [&P, p = p, q = q, remaining] {
        return torus_search(P, p, q, remaining);
      }));
    auto sq = square.get();
    std::vector<TorusResult> results;
    for (auto& f : tori) results.push_back(f.get());

    std::uint64_t spent = sq.nodes;
    for (const auto& r : results) spent += r.nodes;
    out.nodes_used += std::min(spent, remaining);
    out.max_n_tried = n0 + s;
    out.max_pq_tried = s;
    if (sq.status == SearchStatus::Exhausted) {
      out.kind = Kind::Empty;
      out.empty_n = n0 + s;
      return out;
    }
    if (sq.status == SearchStatus::BudgetExceeded) return out;
    for (auto& r : results) {
      if (r.status == SearchStatus::Found) {
        out.kind = Kind::NonEmptyPeriodic;
        out.witness = std::move(r.witness);
        return out;
      }
      if (r.status == SearchStatus::BudgetExceeded) return out;
    }
    if (spent >= remaining) return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Determinism

// B_u^k = { x : -k < <x,u> < 0 and -k < <x,u^perp> < k }.
inline DiscreteDomain box_cells(Vec2 u, Coord k) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "box direction must be nonzero");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "box size must be >= 1");
  // |x| <= (|<x,u>| + |<x,u^perp>|) / |u| < 2k.
  const Rect range{{-2 * k, -2 * k}, 4 * k + 1, 4 * k + 1};
  const Vec2 w = perp(u);
  return DiscreteDomain::filter(range, [&](Vec2 x) {
    const Coord a = dot(x, u), b = dot(x, w);
    return -k < a && a < 0 && -k < b && b < k;
  });
}

struct DeterminismReport {
  enum class Verdict { Forced, NonForced, Inconclusive };

  Vec2 u;
  Coord k = 0;
  Coord radius = 0;
  Verdict verdict = Verdict::Inconclusive;
  Rect context;                    // rectangle in which local consistency was checked
  std::optional<Pattern> box;      // NonForced: the box coloring
  std::vector<Color> centers;      // NonForced: two distinct center values it extends to
  std::uint64_t box_colorings = 0; // locally consistent box colorings seen
  std::uint64_t nodes = 0;
};

constexpr std::string_view to_string(DeterminismReport::Verdict v) {
  switch (v) {
    case DeterminismReport::Verdict::Forced: return "Forced";
    case DeterminismReport::Verdict::NonForced: return "NonForced";
    case DeterminismReport::Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

// Rectangle containing `cells` with both sides at least `side`, grown evenly.
inline Rect consistency_context(const DiscreteDomain& cells, Coord side) {
  Rect r = cells.bounds();
  if (r.width < side) {
    r.origin.x -= (side - r.width) / 2;
    r.width = side;
  }
  if (r.height < side) {
    r.origin.y -= (side - r.height) / 2;
    r.height = side;
  }
  return r;
}

// Enumerates colorings of B_u^k together with cell 0 that extend to a
// locally valid coloring of the consistency context (side >= R). Forced when
// every such box coloring admits exactly one center color.
inline DeterminismReport determinism_probe(const PatternSet& P, Vec2 u, Coord k, Coord R, std::uint64_t budget) {
  using Verdict = DeterminismReport::Verdict;
  if (u.is_zero()) throw Error(ErrorCode::ZeroVector, "probe direction must be nonzero");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "box size must be >= 1");
  if (R < k) throw Error(ErrorCode::InvalidArgument, "consistency radius must be >= box size");

  DeterminismReport rep;
  rep.u = u;
  rep.k = k;
  rep.radius = R;
  const auto box = box_cells(u, k);
  const Vec2 center{0, 0};
  const Rect ctx = consistency_context(box.unite(DiscreteDomain({center})), R);
  rep.context = ctx;

  const auto cells = static_cast<std::size_t>(ctx.area());
  detail::ConstraintGrid grid(P.alphabet().size(), detail::encode_patterns(P), cells,
                              detail::windows_in_rect(P.shape(), ctx));
  std::vector<std::uint32_t> order;
  order.reserve(cells);
  std::vector<bool> placed(cells, false);
  for (auto b : box) {
    order.push_back(static_cast<std::uint32_t>(ctx.offset(b)));
    placed[order.back()] = true;
  }
  const auto center_cell = static_cast<std::uint32_t>(ctx.offset(center));
  order.push_back(center_cell);
  placed[center_cell] = true;
  for (std::uint32_t i = 0; i < cells; ++i)
    if (!placed[i]) order.push_back(i);

  NodeBudget nb{budget, 0};
  const std::size_t nbox = box.size();
  const auto k_colors = static_cast<std::uint32_t>(P.alphabet().size());
  bool exceeded = false, nonforced = false;

  // Returns false to stop the enumeration.
  auto at_center = [&]() -> bool {
    std::vector<Color> centers;
    for (std::uint32_t c = 0; c < k_colors; ++c) {
      if (!nb.spend()) {
        exceeded = true;
        return false;
      }
      if (grid.assign(center_cell, c)) {
        auto st = detail::complete(grid, order, nbox + 1, nb);
        if (st == SearchStatus::BudgetExceeded) {
          grid.undo();
          exceeded = true;
          return false;
        }
        if (st == SearchStatus::Found) {
          grid.undo_to(nbox + 1);
          centers.push_back(P.alphabet().colors()[c]);
        }
      }
      grid.undo();
    }
    if (centers.empty()) return true;
    ++rep.box_colorings;
    if (centers.size() >= 2) {
      std::vector<Color> vals;
      vals.reserve(nbox);
      for (std::size_t i = 0; i < nbox; ++i) vals.push_back(P.alphabet().colors()[grid.value(order[i])]);
      rep.box = Pattern(box, vals);
      rep.centers = {centers[0], centers[1]};
      nonforced = true;
      return false;
    }
    return true;
  };

  // Iterative enumeration of the box prefix.
  std::vector<std::uint32_t> next(nbox + 1, 0);
  std::size_t d = 0;
  bool running = true;
  while (running) {
    if (d == nbox) {
      running = at_center();
      if (!running) break;
      if (d == 0) break;
      --d;
      grid.undo();
      continue;
    }
    bool advanced = false;
    while (next[d] < k_colors) {
      const std::uint32_t c = next[d]++;
      if (!nb.spend()) {
        exceeded = true;
        running = false;
        break;
      }
      if (grid.assign(order[d], c)) {
        ++d;
        next[d] = 0;
        advanced = true;
        break;
      }
      grid.undo();
    }
    if (!running || advanced) continue;
    if (d == 0) break;
    --d;
    grid.undo();
  }

  rep.nodes = nb.used;
  rep.verdict = nonforced ? Verdict::NonForced : exceeded ? Verdict::Inconclusive : Verdict::Forced;
  return rep;
}

enum class DirectionClass { TwoSided, OneSided, OneSidedReverse, NonDeterministic, Inconclusive };

constexpr std::string_view to_string(DirectionClass c) {
  switch (c) {
    case DirectionClass::TwoSided: return "two-sided";
    case DirectionClass::OneSided: return "one-sided";
    case DirectionClass::OneSidedReverse: return "one-sided-reverse";
    case DirectionClass::NonDeterministic: return "non-deterministic";
    case DirectionClass::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct DirectionReport {
  Vec2 u;
  DeterminismReport forward;   // probe of u
  DeterminismReport backward;  // probe of -u
  // OneSided: u forced, -u not. OneSidedReverse: -u forced, u not.
  DirectionClass label = DirectionClass::Inconclusive;
};

inline DirectionClass classify(DeterminismReport::Verdict fwd, DeterminismReport::Verdict bwd) {
  using V = DeterminismReport::Verdict;
  if (fwd == V::Inconclusive || bwd == V::Inconclusive) return DirectionClass::Inconclusive;
  if (fwd == V::Forced && bwd == V::Forced) return DirectionClass::TwoSided;
  if (fwd == V::Forced) return DirectionClass::OneSided;
  if (bwd == V::Forced) return DirectionClass::OneSidedReverse;
  return DirectionClass::NonDeterministic;
}

inline std::vector<DirectionReport> classify_directions(const PatternSet& P, const std::vector<Vec2>& directions,
                                                        Coord k, Coord R, std::uint64_t budget) {
  std::vector<DirectionReport> out;
  out.reserve(directions.size());
  for (auto u : directions) {
    DirectionReport r;
    r.u = u;
    r.forward = determinism_probe(P, u, k, R, budget);
    r.backward = determinism_probe(P, -u, k, R, budget);
    r.label = classify(r.forward.verdict, r.backward.verdict);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tilecraft
