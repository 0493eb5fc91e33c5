#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "tbc/motif.hpp"

using namespace tbc;

TEST_CASE("classify on the canonical table") {
  CHECK(classify(1, 2, 3, 4) == 1);
  CHECK(classify(1, 4, 3, 2) == 6);
  CHECK(classify(1, 2, 2, 4) == std::nullopt);
  CHECK(classify(3, 2, 4, 5) == std::nullopt);
  CHECK(classify(1, 1, 3, 4) == std::nullopt);
}

TEST_CASE("every ordering of three distinct later timestamps hits exactly one type") {
  // Time rank r[k] for the slots (E21, E12, E22).
  std::array<int, 3> ranks{2, 3, 4};
  std::set<int> seen;
  const auto table = permutation_table();
  do {
    const auto type = classify(1, ranks[0], ranks[1], ranks[2]);
    REQUIRE(type.has_value());
    CHECK(seen.insert(*type).second);
    // The slot whose rank is smallest must come first in the type's order.
    std::array<std::pair<int, EdgeSlot>, 3> by_time{{{ranks[0], EdgeSlot::kE21},
                                                      {ranks[1], EdgeSlot::kE12},
                                                      {ranks[2], EdgeSlot::kE22}}};
    std::sort(by_time.begin(), by_time.end());
    const std::array<EdgeSlot, 3> order{by_time[0].second, by_time[1].second, by_time[2].second};
    CHECK(table[static_cast<std::size_t>(*type - 1)].slot_order == order);
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  CHECK(seen.size() == 6);
}

TEST_CASE("classify is invariant under translation and positive scaling") {
  const std::array<std::array<Timestamp, 4>, 5> cases{{
      {1, 2, 3, 4}, {1, 4, 3, 2}, {0, 9, 5, 7}, {10, 11, 13, 12}, {2, 2, 3, 4}}};
  for (const auto& c : cases) {
    const auto base = classify(c[0], c[1], c[2], c[3]);
    for (Timestamp shift : {-100, 0, 7, 1'000'000}) {
      for (Timestamp scale : {1, 3, 1000}) {
        CHECK(classify(c[0] * scale + shift, c[1] * scale + shift, c[2] * scale + shift,
                       c[3] * scale + shift) == base);
      }
    }
  }
}

TEST_CASE("permutation_table and relabeling") {
  const auto table = permutation_table();
  CHECK(table.size() == 6);
  CHECK(table[0].index == 1);
  CHECK(table[0].slot_order == std::array<EdgeSlot, 3>{EdgeSlot::kE21, EdgeSlot::kE12, EdgeSlot::kE22});
  CHECK(table[5].slot_order == std::array<EdgeSlot, 3>{EdgeSlot::kE22, EdgeSlot::kE12, EdgeSlot::kE21});

  const auto swapped = permutation_table(Relabeling::parse("213456"));
  CHECK(swapped[0].index == 1);
  CHECK(swapped[0].slot_order == std::array<EdgeSlot, 3>{EdgeSlot::kE21, EdgeSlot::kE22, EdgeSlot::kE12});
  CHECK(swapped[1].slot_order == table[0].slot_order);

  CHECK_THROWS_AS(Relabeling::parse("123455"), std::invalid_argument);
  CHECK_THROWS_AS(Relabeling::parse("12345"), std::invalid_argument);
  CHECK_THROWS_AS(Relabeling::parse("1234567"), std::invalid_argument);
  CHECK_THROWS_AS(Relabeling::parse("023456"), std::invalid_argument);
  CHECK(Relabeling::parse("123456").is_identity());
  CHECK(Relabeling::parse("654321").to_string() == "654321");
}

TEST_CASE("apply_relabel permutes counts and preserves the total") {
  const CountVector c{{1, 2, 3, 4, 5, 6}};
  const auto r = apply_relabel(c, Relabeling::parse("213456"));
  CHECK(r == CountVector{{2, 1, 3, 4, 5, 6}});
  std::array<int, 6> perm{1, 2, 3, 4, 5, 6};
  do {
    CHECK(apply_relabel(c, Relabeling(perm)).total() == c.total());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("transpose_types swaps E21 and E12 roles") {
  const CountVector c{{1, 2, 3, 4, 5, 6}};
  CHECK(transpose_types(c) == CountVector{{3, 4, 1, 2, 6, 5}});
  CHECK(transpose_types(transpose_types(c)) == c);
  // Consistency with the slot table: swapping E21<->E12 in every order.
  const auto table = permutation_table();
  for (const auto& bt : table) {
    auto order = bt.slot_order;
    for (auto& s : order) {
      if (s == EdgeSlot::kE21) {
        s = EdgeSlot::kE12;
      } else if (s == EdgeSlot::kE12) {
        s = EdgeSlot::kE21;
      }
    }
    CountVector unit;
    unit[static_cast<std::size_t>(bt.index - 1)] = 1;
    const auto moved = transpose_types(unit);
    const auto it = std::find(moved.c.begin(), moved.c.end(), 1u);
    const auto target = static_cast<std::size_t>(it - moved.c.begin());
    CHECK(table[target].slot_order == order);
  }
}

TEST_CASE("CountVector arithmetic detects overflow") {
  CountVector a;
  a[0] = UINT64_MAX;
  CountVector b;
  b[0] = 1;
  CHECK_THROWS_AS(a += b, CounterOverflow);
  CHECK_THROWS_AS(a.increment(0), CounterOverflow);
  CountVector c{{1, 2, 3, 0, 0, 0}};
  c += c;
  CHECK(c == CountVector{{2, 4, 6, 0, 0, 0}});
  CHECK(c.total() == 12);
  CHECK(CountVector{}.is_zero());
}
