#include "treewalk/descriptor.hpp"

#include <charconv>

#include "treewalk/cnf.hpp"
#include "treewalk/errors.hpp"

namespace treewalk {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T number(const std::string& text, const std::string& descriptor) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("bad number '" + text + "' in descriptor '" + descriptor + "'");
  return v;
}

}  // namespace

SuccinctTree tree_from_descriptor(const std::string& descriptor, const std::vector<int>& order) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw InvalidArgument("tree descriptor needs a 'kind:' prefix: '" + descriptor + "'");
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = descriptor.substr(colon + 1);

  if (kind == "cnf") {
    std::string path = rest;
    int implied = -1;
    const auto last = rest.rfind(':');
    if (last != std::string::npos && last + 1 < rest.size() &&
        rest.find_first_not_of("0123456789", last + 1) == std::string::npos) {
      implied = number<int>(rest.substr(last + 1), descriptor);
      path = rest.substr(0, last);
    }
    const Cnf cnf = parse_dimacs_file(path);
    if (implied >= 0 && implied != cnf.num_vars) {
      throw InvalidArgument("descriptor budget " + std::to_string(implied) + " does not match " +
                            std::to_string(cnf.num_vars) + " variables");
    }
    return cnf_tree(cnf, order).with_label("cnf:" + path);
  }
  if (!order.empty()) throw InvalidArgument("--order applies to cnf instances only");

  const auto parts = split(rest, ':');
  if (kind == "hash") {
    if (parts.size() != 3) throw InvalidArgument("expected hash:<n>:<q>:<seed>");
    return hash_random_tree(number<std::uint64_t>(parts[2], descriptor), number<int>(parts[0], descriptor),
                            number<double>(parts[1], descriptor));
  }
  if (parts.size() != 1) throw InvalidArgument("expected " + kind + ":<n>");
  const int n = number<int>(parts[0], descriptor);
  if (kind == "full") return full_tree(n);
  if (kind == "path") return leftmost_path(n);
  if (kind == "comb") return comb(n);
  if (kind == "root") return root_only(n);
  throw InvalidArgument("unknown tree kind '" + kind + "'");
}

}  // namespace treewalk
