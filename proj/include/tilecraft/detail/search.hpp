#pragma once

// Backtracking core shared by the square, torus and determinism searches.
//
// Every window (a placed copy of the shape) keeps a bitmask over the allowed
// patterns that still agree with its assigned cells. Assigning a cell ANDs
// the masks of the windows touching it with a precomputed column mask; an
// empty mask is a conflict. Changes go on a trail so undo is exact.

#include <cstdint>
#include <limits>
#include <vector>

namespace tilecraft::detail {

struct NodeBudget {
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t used = 0;

  bool spend() {
    if (used >= limit) return false;
    ++used;
    return true;
  }
  std::uint64_t remaining() const { return used >= limit ? 0 : limit - used; }
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

class ConstraintGrid {
 public:
  // patterns[p][slot] is the color index of allowed pattern p at shape slot.
  // windows[w][slot] is the grid cell read by window w at that slot.
  ConstraintGrid(std::size_t num_colors, const std::vector<std::vector<std::uint32_t>>& patterns,
                 std::size_t num_cells, const std::vector<std::vector<std::uint32_t>>& windows)
      : num_colors_(num_colors),
        words_(patterns.empty() ? 1 : (patterns.size() + 63) / 64),
        occurrences_(num_cells),
        values_(num_cells, kUnassigned) {
    const std::size_t slots = windows.empty() ? 0 : windows.front().size();
    column_.assign(slots * num_colors_ * words_, 0);
    for (std::size_t p = 0; p < patterns.size(); ++p)
      for (std::size_t s = 0; s < slots; ++s)
        column_[(s * num_colors_ + patterns[p][s]) * words_ + p / 64] |= std::uint64_t{1} << (p % 64);

    std::vector<std::uint64_t> full(words_, 0);
    for (std::size_t p = 0; p < patterns.size(); ++p) full[p / 64] |= std::uint64_t{1} << (p % 64);
    masks_.reserve(windows.size() * words_);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      masks_.insert(masks_.end(), full.begin(), full.end());
      for (std::size_t s = 0; s < windows[w].size(); ++s)
        occurrences_[windows[w][s]].push_back({static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(s)});
    }
  }

  static constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

  std::size_t num_colors() const { return num_colors_; }
  std::size_t depth() const { return marks_.size(); }
  std::uint32_t value(std::uint32_t cell) const { return values_[cell]; }

  // Returns false on conflict; the assignment is recorded either way and
  // must be undone by the caller.
  bool assign(std::uint32_t cell, std::uint32_t color) {
    marks_.push_back({trail_.size(), cell});
    values_[cell] = color;
    bool ok = true;
    for (auto [w, s] : occurrences_[cell]) {
      std::uint64_t* mask = &masks_[w * words_];
      const std::uint64_t* col = &column_[(s * num_colors_ + color) * words_];
      std::uint64_t any = 0;
      for (std::size_t i = 0; i < words_; ++i) {
        const std::uint64_t next = mask[i] & col[i];
        if (next != mask[i]) {
          trail_.push_back({static_cast<std::uint32_t>(w * words_ + i), mask[i]});
          mask[i] = next;
        }
        any |= next;
      }
      if (any == 0) {
        ok = false;
        break;
      }
    }
    return ok;
  }

  void undo() {
    const auto [trail_size, cell] = marks_.back();
    marks_.pop_back();
    while (trail_.size() > trail_size) {
      masks_[trail_.back().index] = trail_.back().old;
      trail_.pop_back();
    }
    values_[cell] = kUnassigned;
  }

  void undo_to(std::size_t level) {
    while (depth() > level) undo();
  }

 private:
  struct Occurrence {
    std::uint32_t window;
    std::uint32_t slot;
  };
  struct TrailEntry {
    std::uint32_t index;
    std::uint64_t old;
  };
  struct Mark {
    std::size_t trail_size;
    std::uint32_t cell;
  };

  std::size_t num_colors_;
  std::size_t words_;
  std::vector<std::uint64_t> column_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<Occurrence>> occurrences_;
  std::vector<std::uint32_t> values_;
  std::vector<TrailEntry> trail_;
  std::vector<Mark> marks_;
};

// Depth-first completion of order[from..] in ascending color order, one node
// per attempted assignment. On Found the assignments stay in the grid; on any
// other status the grid is back at its entry depth.
inline SearchStatus complete(ConstraintGrid& grid, const std::vector<std::uint32_t>& order, std::size_t from,
                             NodeBudget& budget) {
  const std::size_t base = grid.depth();
  const std::uint32_t k = static_cast<std::uint32_t>(grid.num_colors());
  std::vector<std::uint32_t> next(order.size() + 1, 0);
  std::size_t d = from;
  while (true) {
    if (d == order.size()) return SearchStatus::Found;
    bool advanced = false;
    while (next[d] < k) {
      const std::uint32_t color = next[d]++;
      if (!budget.spend()) {
        grid.undo_to(base);
        return SearchStatus::BudgetExceeded;
      }
      if (grid.assign(order[d], color)) {
        ++d;
        next[d] = 0;
        advanced = true;
        break;
      }
      grid.undo();
    }
    if (advanced) continue;
    if (d == from) return SearchStatus::Exhausted;
    --d;
    grid.undo();
  }
}

}  // namespace tilecraft::detail
