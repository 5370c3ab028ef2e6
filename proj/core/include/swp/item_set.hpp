#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace swp {

// Largest number of items an instance may have (one bit per item).
inline constexpr int kMaxItems = 64;

// A subset of items {0, ..., N-1} stored as a bitmask.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}
  ItemSet(std::initializer_list<int> items) {
    for (int j : items) insert(j);
  }

  static constexpr ItemSet full(int n) {
    return ItemSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int j) const { return (bits_ >> j) & 1U; }

  constexpr void insert(int j) { bits_ |= std::uint64_t{1} << j; }
  constexpr void erase(int j) { bits_ &= ~(std::uint64_t{1} << j); }

  constexpr ItemSet with(int j) const {
    return ItemSet(bits_ | (std::uint64_t{1} << j));
  }
  constexpr ItemSet without(int j) const {
    return ItemSet(bits_ & ~(std::uint64_t{1} << j));
  }
  constexpr bool subset_of(ItemSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Index one past the largest member, 0 when empty.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  std::vector<int> items() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  std::string to_string() const;

  friend constexpr bool operator==(ItemSet, ItemSet) = default;
  friend constexpr auto operator<=>(ItemSet, ItemSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace swp
