#include "tbc/motif.hpp"

#include <algorithm>

namespace tbc {

std::string_view slot_name(EdgeSlot slot) {
  switch (slot) {
    case EdgeSlot::kE11: return "E11";
    case EdgeSlot::kE21: return "E21";
    case EdgeSlot::kE12: return "E12";
    case EdgeSlot::kE22: return "E22";
  }
  return "?";
}

Relabeling::Relabeling(const std::array<int, kNumTypes>& labels) : labels_(labels) {
  std::array<int, kNumTypes> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, kNumTypes>{1, 2, 3, 4, 5, 6}) {
    throw std::invalid_argument("relabeling must be a permutation of 1..6");
  }
}

Relabeling Relabeling::parse(std::string_view digits) {
  if (digits.size() != kNumTypes) {
    throw std::invalid_argument("relabeling must be 6 digits, got '" + std::string(digits) + "'");
  }
  std::array<int, kNumTypes> labels{};
  for (int i = 0; i < kNumTypes; ++i) {
    const char ch = digits[static_cast<std::size_t>(i)];
    if (ch < '1' || ch > '6') {
      throw std::invalid_argument("relabeling digits must be in 1..6, got '" + std::string(digits) + "'");
    }
    labels[static_cast<std::size_t>(i)] = ch - '0';
  }
  return Relabeling(labels);
}

bool Relabeling::is_identity() const { return labels_ == std::array<int, kNumTypes>{1, 2, 3, 4, 5, 6}; }

std::string Relabeling::to_string() const {
  std::string out;
  for (int l : labels_) out.push_back(static_cast<char>('0' + l));
  return out;
}

std::array<ButterflyType, kNumTypes> permutation_table(const Relabeling& relabel) {
  using S = EdgeSlot;
  constexpr std::array<std::array<EdgeSlot, 3>, kNumTypes> kCanonical{{
      {S::kE21, S::kE12, S::kE22},
      {S::kE21, S::kE22, S::kE12},
      {S::kE12, S::kE21, S::kE22},
      {S::kE12, S::kE22, S::kE21},
      {S::kE22, S::kE21, S::kE12},
      {S::kE22, S::kE12, S::kE21},
  }};
  std::array<ButterflyType, kNumTypes> table{};
  for (int i = 1; i <= kNumTypes; ++i) {
    const int label = relabel.label_of(i);
    table[static_cast<std::size_t>(label - 1)] = ButterflyType{label, kCanonical[static_cast<std::size_t>(i - 1)]};
  }
  return table;
}

std::optional<int> classify(Timestamp t11, Timestamp t21, Timestamp t12, Timestamp t22) {
  const int idx = classify_index(t11, t21, t12, t22);
  if (idx < 0) return std::nullopt;
  return idx + 1;
}

CountVector& CountVector::operator+=(const CountVector& other) {
  std::array<std::uint64_t, kNumTypes> sum{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (__builtin_add_overflow(c[i], other.c[i], &sum[i])) throw CounterOverflow();
  }
  c = sum;
  return *this;
}

void CountVector::increment(int index) {
  auto& slot = c[static_cast<std::size_t>(index)];
  if (slot == UINT64_MAX) throw CounterOverflow();
  ++slot;
}

std::uint64_t CountVector::total() const {
  std::uint64_t sum = 0;
  for (auto v : c) {
    if (__builtin_add_overflow(sum, v, &sum)) throw CounterOverflow();
  }
  return sum;
}

CountVector apply_relabel(const CountVector& canonical, const Relabeling& relabel) {
  CountVector out;
  for (int i = 1; i <= kNumTypes; ++i) {
    out[static_cast<std::size_t>(relabel.label_of(i) - 1)] = canonical[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

CountVector transpose_types(const CountVector& counts) {
  return CountVector{{counts[2], counts[3], counts[0], counts[1], counts[5], counts[4]}};
}

}  // namespace tbc
