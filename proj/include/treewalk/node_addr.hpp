#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace treewalk {

/// A root-to-node path in the perfect binary tree (0 = left, 1 = right).
///
/// The path is packed into a 64-bit word with the first step in the most
/// significant of the `depth()` low bits, so `(1 << depth) | bits` is the
/// usual 1-based heap index and ordering by heap index is breadth-first.
class NodeAddr {
 public:
  static constexpr int kMaxDepth = 62;

  constexpr NodeAddr() = default;

  static constexpr NodeAddr root() { return NodeAddr{}; }

  /// Parses a string of '0'/'1' characters; the empty string is the root.
  static NodeAddr from_string(std::string_view path);

  /// Inverse of heap_index(); k must be >= 1.
  static NodeAddr from_heap_index(std::uint64_t k);

  constexpr int depth() const { return depth_; }
  constexpr bool is_root() const { return depth_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Bit j of the path, j in [0, depth).
  constexpr int bit(int j) const { return static_cast<int>((bits_ >> (depth_ - 1 - j)) & 1u); }

  /// Last step taken from the parent.
  constexpr int last_bit() const { return static_cast<int>(bits_ & 1u); }

  constexpr std::uint64_t heap_index() const { return (std::uint64_t{1} << depth_) | bits_; }

  std::optional<NodeAddr> parent() const;
  NodeAddr child(int b) const;

  std::string to_string() const;

  friend constexpr bool operator==(const NodeAddr&, const NodeAddr&) = default;
  friend constexpr std::strong_ordering operator<=>(const NodeAddr& a, const NodeAddr& b) {
    return a.heap_index() <=> b.heap_index();
  }

 private:
  constexpr NodeAddr(std::uint64_t bits, int depth) : bits_(bits), depth_(static_cast<std::uint8_t>(depth)) {}

  std::uint64_t bits_ = 0;
  std::uint8_t depth_ = 0;
};

}  // namespace treewalk

template <>
struct std::hash<treewalk::NodeAddr> {
  std::size_t operator()(const treewalk::NodeAddr& a) const noexcept {
    return std::hash<std::uint64_t>{}(a.heap_index());
  }
};
