#include "treewalk/node_addr.hpp"

#include "treewalk/errors.hpp"

namespace treewalk {

NodeAddr NodeAddr::from_string(std::string_view path) {
  if (path.size() > static_cast<std::size_t>(kMaxDepth)) {
    throw InvalidArgument("address deeper than " + std::to_string(kMaxDepth));
  }
  std::uint64_t bits = 0;
  for (char c : path) {
    if (c != '0' && c != '1') throw InvalidArgument("address must be a 0/1 string: '" + std::string(path) + "'");
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return NodeAddr(bits, static_cast<int>(path.size()));
}

NodeAddr NodeAddr::from_heap_index(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("heap index must be >= 1");
  const int depth = 63 - __builtin_clzll(k);
  if (depth > kMaxDepth) throw InvalidArgument("heap index too deep");
  return NodeAddr(k ^ (std::uint64_t{1} << depth), depth);
}

std::optional<NodeAddr> NodeAddr::parent() const {
  if (depth_ == 0) return std::nullopt;
  return NodeAddr(bits_ >> 1, depth_ - 1);
}

NodeAddr NodeAddr::child(int b) const {
  if (depth_ >= kMaxDepth) throw OutOfRangeError("child would exceed maximum depth");
  return NodeAddr((bits_ << 1) | static_cast<std::uint64_t>(b & 1), depth_ + 1);
}

std::string NodeAddr::to_string() const {
  std::string s(depth_, '0');
  for (int j = 0; j < depth_; ++j) s[j] = static_cast<char>('0' + bit(j));
  return s;
}

}  // namespace treewalk
