#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>

namespace minuet {

// Digits are plain ints in 1..9; cells are row-major indices in 0..80.
using Digit = int;
using CellIndex = int;

inline constexpr int kCells = 81;
inline constexpr int kStructures = 27;

constexpr int row_of(CellIndex c) { return c / 9; }
constexpr int col_of(CellIndex c) { return c % 9; }
constexpr int box_of(CellIndex c) { return 3 * (c / 27) + (c % 9) / 3; }

constexpr bool valid_digit(int d) { return d >= 1 && d <= 9; }
constexpr bool valid_cell(int c) { return c >= 0 && c < kCells; }

enum class StructureKind : std::uint8_t { Row, Col, Box };

// A row, column or box. Index order is Row 0..8, Col 0..8, Box 0..8.
struct StructureId {
  StructureKind kind = StructureKind::Row;
  int ordinal = 0;

  constexpr int index() const { return 9 * static_cast<int>(kind) + ordinal; }
  static constexpr StructureId from_index(int i) {
    return {static_cast<StructureKind>(i / 9), i % 9};
  }
  static constexpr StructureId row(int r) { return {StructureKind::Row, r}; }
  static constexpr StructureId col(int c) { return {StructureKind::Col, c}; }
  static constexpr StructureId box(int b) { return {StructureKind::Box, b}; }

  friend constexpr bool operator==(StructureId, StructureId) = default;
};

inline std::string to_string(StructureId s) {
  static constexpr const char* names[] = {"row", "column", "box"};
  return std::string(names[static_cast<int>(s.kind)]) + " " + std::to_string(s.ordinal + 1);
}

inline std::string cell_name(CellIndex c) {
  return "r" + std::to_string(row_of(c) + 1) + "c" + std::to_string(col_of(c) + 1);
}

// Subset of {1..9}; bit d stands for digit d.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  static constexpr CandidateSet all() { return CandidateSet(kAllBits); }
  static constexpr CandidateSet single(Digit d) { return CandidateSet(bit(d)); }
  static constexpr CandidateSet from_bits(std::uint16_t bits) { return CandidateSet(bits & kAllBits); }
  static constexpr CandidateSet of(std::initializer_list<Digit> ds) {
    CandidateSet s;
    for (Digit d : ds) s.insert(d);
    return s;
  }

  constexpr bool contains(Digit d) const { return (bits_ & bit(d)) != 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint16_t bits() const { return bits_; }

  constexpr void insert(Digit d) { bits_ |= bit(d); }
  constexpr void remove(Digit d) { bits_ &= static_cast<std::uint16_t>(~bit(d)); }

  // Smallest member; undefined on an empty set.
  constexpr Digit first() const { return std::countr_zero(bits_); }

  constexpr bool subset_of(CandidateSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr CandidateSet operator|(CandidateSet o) const { return CandidateSet(bits_ | o.bits_); }
  constexpr CandidateSet operator&(CandidateSet o) const { return CandidateSet(bits_ & o.bits_); }
  constexpr CandidateSet operator-(CandidateSet o) const {
    return CandidateSet(static_cast<std::uint16_t>(bits_ & ~o.bits_));
  }
  constexpr CandidateSet complement() const { return CandidateSet(static_cast<std::uint16_t>(~bits_ & kAllBits)); }
  constexpr CandidateSet& operator|=(CandidateSet o) { bits_ |= o.bits_; return *this; }
  constexpr CandidateSet& operator&=(CandidateSet o) { bits_ &= o.bits_; return *this; }

  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

  // Iterates members in ascending order.
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Digit;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Digit;

    constexpr iterator() : rest_(0) {}
    constexpr explicit iterator(std::uint16_t rest) : rest_(rest) {}
    constexpr Digit operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() { rest_ &= static_cast<std::uint16_t>(rest_ - 1); return *this; }
    constexpr iterator operator++(int) { iterator old = *this; ++*this; return old; }
    constexpr bool operator==(const iterator& o) const { return rest_ == o.rest_; }
    constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }
   private:
    std::uint16_t rest_;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  static constexpr std::uint16_t kAllBits = 0x3FE;
  static constexpr std::uint16_t bit(Digit d) { return static_cast<std::uint16_t>(1u << d); }
  constexpr explicit CandidateSet(std::uint16_t bits) : bits_(bits) {}
  std::uint16_t bits_ = 0;
};

inline std::string to_string(CandidateSet s) {
  std::string out = "{";
  for (Digit d : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(d);
  }
  return out + "}";
}

namespace detail {

struct Topology {
  std::array<std::array<CellIndex, 9>, kStructures> members{};
  std::array<std::array<int, 3>, kCells> structures_of{};
  std::array<std::array<CellIndex, 20>, kCells> peers{};

  constexpr Topology() {
    for (int s = 0; s < kStructures; ++s) {
      const int kind = s / 9, ord = s % 9;
      for (int k = 0; k < 9; ++k) {
        CellIndex c = 0;
        if (kind == 0) c = 9 * ord + k;
        else if (kind == 1) c = 9 * k + ord;
        else c = 27 * (ord / 3) + 3 * (ord % 3) + 9 * (k / 3) + (k % 3);
        members[s][k] = c;
      }
    }
    for (CellIndex c = 0; c < kCells; ++c) {
      structures_of[c] = {row_of(c), 9 + col_of(c), 18 + box_of(c)};
      int n = 0;
      for (CellIndex o = 0; o < kCells; ++o) {
        if (o == c) continue;
        if (row_of(o) == row_of(c) || col_of(o) == col_of(c) || box_of(o) == box_of(c)) peers[c][n++] = o;
      }
    }
  }
};

inline constexpr Topology kTopology{};

}  // namespace detail

// The 9 cells of a structure, ascending.
constexpr const std::array<CellIndex, 9>& cells_of_structure(StructureId s) {
  return detail::kTopology.members[s.index()];
}

// Row, column and box containing the cell, in that order.
constexpr std::array<StructureId, 3> structures_of(CellIndex c) {
  return {StructureId::row(row_of(c)), StructureId::col(col_of(c)), StructureId::box(box_of(c))};
}

// The 20 distinct cells sharing a structure with c, ascending.
constexpr const std::array<CellIndex, 20>& peers_of(CellIndex c) { return detail::kTopology.peers[c]; }

constexpr bool contains_cell(StructureId s, CellIndex c) {
  switch (s.kind) {
    case StructureKind::Row: return row_of(c) == s.ordinal;
    case StructureKind::Col: return col_of(c) == s.ordinal;
    case StructureKind::Box: return box_of(c) == s.ordinal;
  }
  return false;
}

constexpr bool are_peers(CellIndex a, CellIndex b) {
  return a != b && (row_of(a) == row_of(b) || col_of(a) == col_of(b) || box_of(a) == box_of(b));
}

}  // namespace minuet
