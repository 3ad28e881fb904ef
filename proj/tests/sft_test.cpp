#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tilecraft/sft.hpp"

using namespace tilecraft;
using namespace tilecraft::testing;

namespace {

constexpr std::uint64_t kBudget = 1'000'000;

// Brute force over all binary n x n squares.
bool square_exists_brute(const PatternSet& P, Coord n) {
  const auto cells = static_cast<int>(n * n);
  const auto D = P.shape();
  for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
    auto cfg = WindowConfig::from_function({{0, 0}, n, n}, [&](Vec2 v) { return static_cast<Color>((bits >> (v.y * n + v.x)) & 1); });
    bool ok = true;
    for (const auto& pat : patterns_of(cfg, D, DiscreteDomain::rect(n, n)))
      if (!P.allows(pat)) ok = false;
    if (ok) return true;
  }
  return false;
}

// c(x,y) + c(x+1,y) + c(x,y+1) = 0 mod 2.
PatternSet ledrappier_set() {
  std::vector<std::vector<Color>> pats;
  for (int i = 0; i < 16; ++i) {
    auto b = binary_block(i);
    if ((b[0] ^ b[1] ^ b[2]) == 0) pats.push_back(b);
  }
  return binary_2x2(pats);
}

}  // namespace

TEST(PatternSet, Validation) {
  EXPECT_THROW(PatternSet(DiscreteDomain::rect(2, 2), Alphabet::binary(), {rect_pattern(2, 1, {0, 0})}), Error);
  EXPECT_THROW(PatternSet(DiscreteDomain::rect(2, 2), Alphabet::binary(), {rect_pattern(2, 2, {0, 0, 0, 2})}), Error);
  EXPECT_EQ(full_shift_set().allowed().size(), 16u);
  EXPECT_TRUE(checkerboard_set().low_complexity());
  EXPECT_FALSE(full_shift_set().low_complexity());
  EXPECT_EQ(checkerboard_set().extent(), 2);
}

TEST(PatternSet, FromConfiguration) {
  auto P = pattern_set_of(checkerboard(), DiscreteDomain::rect(2, 2), DiscreteDomain::rect(4, 4), Alphabet::binary());
  EXPECT_EQ(P, checkerboard_set());
}

TEST(ValidSquare, Examples) {
  auto r = valid_square(all_zero_set(), 4, kBudget);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_EQ(r.coloring, std::vector<Color>(16, 0));

  EXPECT_EQ(valid_square(left0_right1_set(), 2, kBudget).status, SearchStatus::Found);
  EXPECT_EQ(valid_square(left0_right1_set(), 3, kBudget).status, SearchStatus::Exhausted);
  EXPECT_FALSE(square_exists_brute(left0_right1_set(), 3));

  auto cb = valid_square(checkerboard_set(), 4, kBudget);
  ASSERT_EQ(cb.status, SearchStatus::Found);
  for (Coord y = 0; y < 4; ++y)
    for (Coord x = 0; x < 4; ++x) EXPECT_EQ(cb.coloring[y * 4 + x], (x + y) % 2);
}

TEST(ValidSquare, Errors) {
  EXPECT_THROW(valid_square(all_zero_set(), 1, kBudget), Error);
  EXPECT_EQ(valid_square(full_shift_set(), 6, 3).status, SearchStatus::BudgetExceeded);
}

TEST(ValidSquare, MatchesBruteForce) {
  for (int set = 0; set < 200; set += 7) {
    std::vector<std::vector<Color>> pats;
    for (int i = 0; i < 16; ++i)
      if ((set * 2654435761u >> i) & 1) pats.push_back(binary_block(i));
    if (pats.empty()) continue;
    auto P = binary_2x2(pats);
    for (Coord n = 2; n <= 4; ++n)
      EXPECT_EQ(valid_square(P, n, kBudget).status == SearchStatus::Found, square_exists_brute(P, n)) << set << " " << n;
  }
}

TEST(ValidSquare, EmptinessIsMonotone) {
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j) {
      auto P = binary_2x2({binary_block(i), binary_block(j)});
      bool empty = false;
      for (Coord n = 2; n <= 6; ++n) {
        bool found = valid_square(P, n, kBudget).status == SearchStatus::Found;
        if (empty) { EXPECT_FALSE(found); }
        empty = empty || !found;
      }
    }
}

TEST(TorusSearch, Examples) {
  auto r = torus_search(checkerboard_set(), 2, 2, kBudget);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(validate_witness(checkerboard_set(), *r.witness));
  EXPECT_EQ(r.witness->values, (std::vector<Color>{0, 1, 1, 0}));
  EXPECT_EQ(torus_search(checkerboard_set(), 1, 1, kBudget).status, SearchStatus::Exhausted);
  EXPECT_EQ(torus_search(checkerboard_set(), 2, 1, kBudget).status, SearchStatus::Exhausted);
  for (Coord p = 1; p <= 6; ++p)
    for (Coord q = 1; q <= 6; ++q) EXPECT_EQ(torus_search(left0_right1_set(), p, q, kBudget).status, SearchStatus::Exhausted);
  EXPECT_THROW(torus_search(checkerboard_set(), 0, 2, kBudget), Error);
}

TEST(ValidateWitness, Examples) {
  EXPECT_TRUE(validate_witness(checkerboard_set(), {2, 2, {0, 1, 1, 0}}));
  EXPECT_TRUE(validate_witness(checkerboard_set(), {4, 2, {0, 1, 0, 1, 1, 0, 1, 0}}));
  EXPECT_FALSE(validate_witness(checkerboard_set(), {2, 2, {0, 1, 0, 1}}));
  EXPECT_FALSE(validate_witness(checkerboard_set(), {2, 2, {0, 1, 1}}));
  EXPECT_TRUE(validate_witness(all_zero_set(), {1, 1, {0}}));
  EXPECT_FALSE(validate_witness(all_zero_set(), {1, 1, {1}}));
}

TEST(Decide, Examples) {
  auto z = decide(all_zero_set(), kBudget);
  ASSERT_EQ(z.kind, DecisionOutcome::Kind::NonEmptyPeriodic);
  EXPECT_EQ(*z.witness, (TorusWitness{1, 1, {0}}));

  auto e = decide(left0_right1_set(), kBudget);
  ASSERT_EQ(e.kind, DecisionOutcome::Kind::Empty);
  EXPECT_EQ(e.empty_n, 3);

  auto f = decide(full_shift_set(), kBudget);
  ASSERT_EQ(f.kind, DecisionOutcome::Kind::NonEmptyPeriodic);
  EXPECT_EQ(f.witness->p, 1);
  EXPECT_EQ(f.witness->q, 1);

  auto cb = decide(checkerboard_set(), kBudget);
  ASSERT_EQ(cb.kind, DecisionOutcome::Kind::NonEmptyPeriodic);
  EXPECT_EQ(cb.stages, 2);
  EXPECT_TRUE(validate_witness(checkerboard_set(), *cb.witness));
}

TEST(Decide, BudgetExhaustion) {
  auto r = decide(checkerboard_set(), 5);
  EXPECT_EQ(r.kind, DecisionOutcome::Kind::Undecided);
  EXPECT_LE(r.nodes_used, 5u);
  EXPECT_EQ(decide(checkerboard_set(), kBudget, {false, 1}).kind, DecisionOutcome::Kind::Undecided);
}

TEST(Decide, Deterministic) {
  for (int i = 0; i < 16; ++i) {
    auto P = binary_2x2({binary_block(i), binary_block(15 - i), binary_block((i * 5) % 16)});
    EXPECT_EQ(decide(P, kBudget), decide(P, kBudget));
  }
}

TEST(Decide, ParallelAgreesWithSequential) {
  for (int i = 0; i < 16; ++i) {
    auto P = binary_2x2({binary_block(i), binary_block((i * 7 + 3) % 16)});
    auto s = decide(P, kBudget);
    auto p = decide(P, kBudget, {true, 0});
    EXPECT_EQ(s.kind, p.kind) << i;
    EXPECT_EQ(s.empty_n, p.empty_n);
    EXPECT_EQ(s.witness, p.witness);
  }
}

TEST(Decide, SemiAlgorithmsNeverBothFire) {
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j) {
      auto P = binary_2x2({binary_block(i), binary_block(j)});
      auto r = decide(P, kBudget);
      ASSERT_NE(r.kind, DecisionOutcome::Kind::Undecided);
      if (r.kind == DecisionOutcome::Kind::Empty) {
        for (Coord p = 1; p <= 4; ++p)
          for (Coord q = 1; q <= 4; ++q) EXPECT_NE(torus_search(P, p, q, kBudget).status, SearchStatus::Found);
      } else {
        EXPECT_LE(std::max(r.witness->p, r.witness->q), r.stages);
      }
    }
}

TEST(TorusSizes, Order) {
  using V = std::vector<std::pair<Coord, Coord>>;
  EXPECT_EQ(torus_sizes(1), (V{{1, 1}}));
  EXPECT_EQ(torus_sizes(2), (V{{1, 2}, {2, 1}, {2, 2}}));
  EXPECT_EQ(torus_sizes(3).size(), 5u);
}

TEST(BoxCells, Examples) {
  EXPECT_EQ(box_cells({0, 1}, 2), DiscreteDomain({{-1, -1}, {0, -1}, {1, -1}}));
  EXPECT_TRUE(box_cells({1, 0}, 1).empty());
  EXPECT_EQ(box_cells({1, 0}, 2), DiscreteDomain({{-1, -1}, {-1, 0}, {-1, 1}}));
  EXPECT_THROW(box_cells({0, 0}, 2), Error);
}

TEST(BoxCells, SlantedBoxMatchesEnumeration) {
  const Vec2 u{-1, 2};
  const Coord k = 10;
  std::vector<Vec2> cells;
  for (Coord y = -40; y <= 40; ++y)
    for (Coord x = -40; x <= 40; ++x) {
      const Coord a = -x + 2 * y, b = 2 * x + y;
      if (a > -k && a < 0 && b > -k && b < k) cells.push_back({x, y});
    }
  auto B = box_cells(u, k);
  EXPECT_EQ(B, DiscreteDomain(cells));
  EXPECT_EQ(B.size(), 35u);
}

TEST(DeterminismProbe, Examples) {
  auto cb = determinism_probe(checkerboard_set(), {1, 0}, 2, 4, kBudget);
  EXPECT_EQ(cb.verdict, DeterminismReport::Verdict::Forced);
  EXPECT_EQ(cb.box_colorings, 2u);

  auto fs = determinism_probe(full_shift_set(), {1, 0}, 3, 4, kBudget);
  ASSERT_EQ(fs.verdict, DeterminismReport::Verdict::NonForced);
  ASSERT_TRUE(fs.box.has_value());
  EXPECT_EQ(fs.box->domain(), box_cells({1, 0}, 3));
  EXPECT_EQ(fs.centers, (std::vector<Color>{0, 1}));

  for (Vec2 u : {Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}, Vec2{-2, 1}})
    EXPECT_EQ(determinism_probe(all_zero_set(), u, 1, 4, kBudget).verdict, DeterminismReport::Verdict::Forced);
}

TEST(DeterminismProbe, ContextCoversBoxAndCenter) {
  auto r = determinism_probe(checkerboard_set(), {1, 0}, 3, 4, kBudget);
  EXPECT_GE(r.context.width, 4);
  EXPECT_GE(r.context.height, 5);
  EXPECT_TRUE(r.context.contains(Vec2{0, 0}));
  for (auto b : box_cells({1, 0}, 3)) EXPECT_TRUE(r.context.contains(b));
}

TEST(DeterminismProbe, NonForcedWitnessExtends) {
  auto P = ledrappier_set();
  auto r = determinism_probe(P, {-1, 0}, 2, 4, kBudget);
  ASSERT_EQ(r.verdict, DeterminismReport::Verdict::NonForced);
  // Re-check both extensions with a separate search on the context.
  for (Color c : r.centers) {
    std::set<Pattern> allowed;
    bool found = false;
    const Rect ctx = r.context;
    const auto cells = static_cast<int>(ctx.area());
    for (std::uint64_t bits = 0; bits < (1ull << cells) && !found; ++bits) {
      auto w = WindowConfig::from_function(ctx, [&](Vec2 v) { return static_cast<Color>((bits >> ctx.offset(v)) & 1); });
      if (w.at({0, 0}) != c) continue;
      bool agree = true;
      for (auto b : r.box->domain()) agree = agree && w.at(b) == r.box->at(b);
      if (!agree) continue;
      bool ok = true;
      for (const auto& pat : patterns_of(w, P.shape(), DiscreteDomain::from_rect(ctx))) ok = ok && P.allows(pat);
      found = ok;
    }
    EXPECT_TRUE(found) << c;
  }
}

TEST(DeterminismProbe, Errors) {
  EXPECT_THROW(determinism_probe(checkerboard_set(), {0, 0}, 2, 4, kBudget), Error);
  EXPECT_THROW(determinism_probe(checkerboard_set(), {1, 0}, 0, 4, kBudget), Error);
  EXPECT_THROW(determinism_probe(checkerboard_set(), {1, 0}, 5, 4, kBudget), Error);
  EXPECT_EQ(determinism_probe(full_shift_set(), {1, 0}, 3, 6, 2).verdict, DeterminismReport::Verdict::Inconclusive);
}

TEST(ClassifyDirections, Examples) {
  auto cb = classify_directions(checkerboard_set(), {{1, 0}, {0, 1}, {1, 1}}, 2, 4, kBudget);
  for (const auto& r : cb) EXPECT_EQ(r.label, DirectionClass::TwoSided) << r.u.str();

  auto fs = classify_directions(full_shift_set(), {{1, 0}}, 3, 4, kBudget);
  EXPECT_EQ(fs[0].label, DirectionClass::NonDeterministic);

  auto led = classify_directions(ledrappier_set(), {{1, 0}, {-1, 0}}, 2, 4, kBudget);
  EXPECT_EQ(led[0].label, DirectionClass::OneSided);
  EXPECT_EQ(led[1].label, DirectionClass::OneSidedReverse);

  auto inc = classify_directions(full_shift_set(), {{1, 0}}, 3, 4, 1);
  EXPECT_EQ(inc[0].label, DirectionClass::Inconclusive);
  EXPECT_EQ(to_string(DirectionClass::OneSided), "one-sided");
}

TEST(DeterminismProbe, PeriodicSingletonIsForced) {
  // 2 x 2 periodic configurations: every direction with nonzero coordinates.
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    std::vector<Color> block(4);
    for (auto& v : block) v = static_cast<Color>(rng() % 3);
    auto c = PeriodicConfig::torus(2, 2, block);
    auto P = pattern_set_of(c, DiscreteDomain::rect(3, 3), DiscreteDomain::rect(4, 4), Alphabet({0, 1, 2}));
    for (Vec2 u : {Vec2{1, 1}, Vec2{1, -1}, Vec2{2, 1}, Vec2{-1, 2}})
      EXPECT_NE(determinism_probe(P, u, 4, 8, kBudget).verdict, DeterminismReport::Verdict::NonForced) << u.str();
  }
}
