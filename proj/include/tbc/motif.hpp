#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tbc/graph.hpp"

namespace tbc {

inline constexpr int kNumTypes = 6;

// Node-pair positions of a butterfly over upper nodes u1, u2 and lower nodes
// l1, l2. E11 = (u1, l1) is always the earliest edge of an instance.
enum class EdgeSlot : std::uint8_t { kE11, kE21, kE12, kE22 };

std::string_view slot_name(EdgeSlot slot);

// A butterfly type, identified by the temporal order of its last three slots.
struct ButterflyType {
  int index;  // 1..6
  std::array<EdgeSlot, 3> slot_order;

  friend bool operator==(const ButterflyType&, const ButterflyType&) = default;
};

// Maps each canonical type (position i holds canonical type i+1) to its
// output label. Identity is {1,2,3,4,5,6}.
class Relabeling {
 public:
  Relabeling() = default;
  explicit Relabeling(const std::array<int, kNumTypes>& labels);

  // Parses a 6-digit string such as "123456". Throws std::invalid_argument.
  static Relabeling parse(std::string_view digits);

  int label_of(int canonical_index) const { return labels_[canonical_index - 1]; }
  bool is_identity() const;
  std::string to_string() const;

 private:
  std::array<int, kNumTypes> labels_{1, 2, 3, 4, 5, 6};
};

// Canonical table, lexicographic over slot sequences, then relabeled.
std::array<ButterflyType, kNumTypes> permutation_table(const Relabeling& relabel = {});

// Canonical type index (1..6) of four timestamps given at slots E11, E21, E12,
// E22, or nullopt when E11 is not strictly first or any two timestamps tie.
std::optional<int> classify(Timestamp t11, Timestamp t21, Timestamp t12, Timestamp t22);

// Branch-light variant for the counting loops: returns 0..5 or -1.
inline int classify_index(Timestamp t11, Timestamp t21, Timestamp t12, Timestamp t22) {
  if (!(t11 < t21 && t11 < t12 && t11 < t22)) return -1;
  if (t21 == t12 || t21 == t22 || t12 == t22) return -1;
  // Rank pattern of (E21, E12, E22) -> canonical index.
  const int code = (t21 < t12 ? 4 : 0) | (t21 < t22 ? 2 : 0) | (t12 < t22 ? 1 : 0);
  // code bits: [E21<E12][E21<E22][E12<E22]
  constexpr std::array<int, 8> kTable{5, 3, -1, 2, 4, -1, 1, 0};
  return kTable[static_cast<std::size_t>(code)];
}

class CounterOverflow : public std::overflow_error {
 public:
  CounterOverflow() : std::overflow_error("butterfly counter overflow") {}
};

// Exact counts C_1..C_6 indexed by canonical type - 1.
struct CountVector {
  std::array<std::uint64_t, kNumTypes> c{};

  std::uint64_t& operator[](std::size_t i) { return c[i]; }
  std::uint64_t operator[](std::size_t i) const { return c[i]; }

  // Checked addition; throws CounterOverflow.
  CountVector& operator+=(const CountVector& other);
  void increment(int index);

  std::uint64_t total() const;
  bool is_zero() const { return c == std::array<std::uint64_t, kNumTypes>{}; }

  friend bool operator==(const CountVector&, const CountVector&) = default;
};

// Reorders canonical counts so that position label-1 holds each type's count.
CountVector apply_relabel(const CountVector& canonical, const Relabeling& relabel);

// Counts of the layer-swapped graph: swaps types 1<->3, 2<->4, 5<->6.
CountVector transpose_types(const CountVector& counts);

}  // namespace tbc
